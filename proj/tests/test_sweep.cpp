#include <doctest.h>

#include <cmath>
#include <vector>

#include "iafc/constants.hpp"
#include "iafc/errors.hpp"
#include "iafc/sweep.hpp"

using namespace iafc;

namespace {

SimContext std_context() {
    SimContext ctx;
    ctx.comb = IdealCombSpec{7, phys::two_pi * 3e8, 7.5e6, 1.5e9};
    ctx.cavity.kappa = 7e9;
    ctx.cavity.delta_c = 0.0;
    ctx.cavity.omega_c = 4.48e15;
    ctx.pulse = Pulse{2e-9, 9.5e8};
    return ctx;
}

}  // namespace

TEST_CASE("target names round-trip and reject junk") {
    for (SweepTarget t : {SweepTarget::GEff, SweepTarget::Kappa, SweepTarget::DeltaC,
                          SweepTarget::Finesse, SweepTarget::BField,
                          SweepTarget::PulseWidth})
        CHECK(sweep_target_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(sweep_target_from_string("coupling"), ConfigError);
}

TEST_CASE("with_target rewrites the right knob") {
    const SimContext ctx = std_context();

    CHECK(std::get<IdealCombSpec>(
              with_target(ctx, SweepTarget::GEff, 2e9).comb).g_eff == 2e9);
    CHECK(with_target(ctx, SweepTarget::Kappa, 9e9).cavity.kappa == 9e9);
    CHECK(with_target(ctx, SweepTarget::DeltaC, 1e9).cavity.delta_c == 1e9);
    CHECK(with_target(ctx, SweepTarget::PulseWidth, 5e8).pulse.spectral_width == 5e8);

    // Finesse rewrites the tooth width at fixed spacing.
    const SimContext f = with_target(ctx, SweepTarget::Finesse, 40.0);
    const auto& spec = std::get<IdealCombSpec>(f.comb);
    CHECK(spec.tooth_width ==
          doctest::Approx(spec.spacing / 40.0).epsilon(1e-12));

    CHECK_THROWS_AS(with_target(ctx, SweepTarget::BField, 0.1), ConfigError);
}

TEST_CASE("single point sweep equals a direct evaluation") {
    SweepSpec spec;
    spec.target = SweepTarget::Kappa;
    spec.min = spec.max = 7e9;
    spec.points = 1;
    spec.context = std_context();
    spec.optimize_pulse = false;

    const SweepResult res = run_sweep(spec);
    REQUIRE(res.points.size() == 1);
    REQUIRE(res.points[0].ok);

    const EchoOutcome direct = evaluate(std_context());
    CHECK(res.points[0].value == 7e9);
    CHECK(res.points[0].eta == direct.eta);  // bit-identical path
    CHECK(res.argmax == 0);
}

TEST_CASE("linear sweep hits both endpoints") {
    SweepSpec spec;
    spec.target = SweepTarget::DeltaC;
    spec.min = -1e9;
    spec.max = 1e9;
    spec.points = 5;
    spec.context = std_context();
    spec.optimize_pulse = false;

    const SweepResult res = run_sweep(spec);
    REQUIRE(res.points.size() == 5);
    CHECK(res.points.front().value == -1e9);
    CHECK(res.points.back().value == 1e9);
    CHECK(res.points[2].value == doctest::Approx(0.0));
    for (const SweepPoint& p : res.points) CHECK(p.ok);

    // Detuning symmetry of the ideal comb.
    CHECK(res.points[0].eta == doctest::Approx(res.points[4].eta).epsilon(1e-6));
    CHECK(res.argmax == 2);
}

TEST_CASE("worker count never changes the bytes") {
    SweepSpec spec;
    spec.target = SweepTarget::GEff;
    spec.min = 0.8e9;
    spec.max = 2.5e9;
    spec.points = 6;
    spec.log_scale = true;
    spec.context = std_context();
    spec.optimize_pulse = true;

    spec.workers = 1;
    const SweepResult one = run_sweep(spec);
    spec.workers = 4;
    const SweepResult four = run_sweep(spec);

    REQUIRE(one.points.size() == four.points.size());
    for (std::size_t i = 0; i < one.points.size(); ++i) {
        CHECK(one.points[i].value == four.points[i].value);
        CHECK(one.points[i].eta == four.points[i].eta);
        CHECK(one.points[i].pulse_width == four.points[i].pulse_width);
    }
    CHECK(one.argmax == four.argmax);
}

TEST_CASE("efficiency versus coupling is single-peaked") {
    SweepSpec spec;
    spec.target = SweepTarget::GEff;
    spec.min = 0.5e9;
    spec.max = 4e9;
    spec.points = 7;
    spec.log_scale = true;
    spec.context = std_context();
    spec.optimize_pulse = true;
    spec.workers = 4;

    const SweepResult res = run_sweep(spec);
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < res.points.size(); ++i)
        if (res.points[i].eta > res.points[i - 1].eta &&
            res.points[i].eta >= res.points[i + 1].eta)
            ++maxima;
    CHECK(maxima == 1);
    CHECK(res.points[std::size_t(res.argmax)].eta > 0.9);
}

TEST_CASE("grid budget failures mark points without aborting the sweep") {
    SweepSpec spec;
    spec.target = SweepTarget::Kappa;
    spec.min = 7e9;
    spec.max = 7e13;
    spec.points = 5;
    spec.log_scale = true;
    spec.context = std_context();
    spec.context.budget.sample_cap = std::size_t(1) << 15;
    spec.optimize_pulse = false;

    const SweepResult res = run_sweep(spec);
    REQUIRE(res.points.size() == 5);
    CHECK(res.points.front().ok);
    CHECK_FALSE(res.points.back().ok);
    CHECK_FALSE(res.points.back().error.empty());
    CHECK(res.argmax >= 0);
    CHECK(res.points[std::size_t(res.argmax)].ok);
}

TEST_CASE("pulse optimiser dominates spot checks") {
    const SimContext ctx = std_context();
    const PulseOptimum opt = optimize_pulse_width(ctx);
    CHECK(opt.eta > 0.0);
    CHECK(opt.spectral_width > 0.0);

    for (double w : {3e8, 6e8, 9.5e8, 1.5e9, 3e9}) {
        SimContext probe = ctx;
        probe.pulse.spectral_width = w;
        CHECK(opt.eta >= evaluate(probe).eta - 1e-12);
    }
}

TEST_CASE("joint optimisation beats its own coarse grid and flags edges") {
    // The matched ridge rises with kappa, so a box capped at 9e9 must end up
    // pinned near that edge.
    const Optimum2d best = optimize_2d(1.2e9, 1.9e9, 5e9, 9e9, std_context(), 4, 2, 4);

    SimContext probe = std_context();
    probe.cavity.kappa = 7e9;
    std::get<IdealCombSpec>(probe.comb).g_eff = 1.5e9;
    const PulseOptimum ref = optimize_pulse_width(probe);

    CHECK(best.eta >= ref.eta - 1e-4);
    CHECK(best.kappa > 8.5e9);
    CHECK(best.on_boundary);
    CHECK(best.g_eff >= 1.2e9);
    CHECK(best.g_eff <= 1.9e9);
}
