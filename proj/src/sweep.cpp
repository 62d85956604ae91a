#include "iafc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "iafc/errors.hpp"

namespace iafc {

const char* to_string(SweepTarget t) {
    switch (t) {
        case SweepTarget::GEff: return "g_eff";
        case SweepTarget::Kappa: return "kappa";
        case SweepTarget::DeltaC: return "delta_c";
        case SweepTarget::Finesse: return "finesse";
        case SweepTarget::BField: return "b_field";
        case SweepTarget::PulseWidth: return "pulse_width";
    }
    return "?";
}

SweepTarget sweep_target_from_string(const std::string& s) {
    for (SweepTarget t : {SweepTarget::GEff, SweepTarget::Kappa, SweepTarget::DeltaC,
                          SweepTarget::Finesse, SweepTarget::BField,
                          SweepTarget::PulseWidth})
        if (s == to_string(t)) return t;
    throw ConfigError("unknown sweep parameter '" + s +
                      "' (expected g_eff, kappa, delta_c, finesse, b_field or pulse_width)");
}

SimContext with_target(const SimContext& base, SweepTarget target, double value) {
    SimContext ctx = base;
    switch (target) {
        case SweepTarget::GEff:
            if (auto* s = std::get_if<IdealCombSpec>(&ctx.comb)) {
                s->g_eff = value;
                return ctx;
            }
            throw ConfigError("g_eff sweep requires an ideal comb");
        case SweepTarget::Kappa:
            ctx.cavity.kappa = value;
            return ctx;
        case SweepTarget::DeltaC:
            ctx.cavity.delta_c = value;
            return ctx;
        case SweepTarget::Finesse:
            if (auto* s = std::get_if<IdealCombSpec>(&ctx.comb)) {
                if (!(value > 0.0)) throw ConfigError("finesse must be positive");
                s->tooth_width = s->spacing / value;
                return ctx;
            }
            throw ConfigError("finesse sweep requires an ideal comb");
        case SweepTarget::BField:
            if (auto* s = std::get_if<AtomicCombSpec>(&ctx.comb)) {
                s->b_field = value;
                return ctx;
            }
            throw ConfigError("b_field sweep requires an atomic comb");
        case SweepTarget::PulseWidth:
            ctx.pulse.spectral_width = value;
            return ctx;
    }
    throw std::logic_error("with_target: unreachable");
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t n_threads = std::min<std::size_t>(std::size_t(workers), count);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    std::vector<std::exception_ptr> errors(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

namespace {

std::vector<double> spaced_values(double lo, double hi, int points, bool log_scale) {
    if (points < 1) throw ConfigError("sweep needs at least one point");
    if (points == 1) return {lo};
    if (!(hi > lo)) throw ConfigError("sweep range must have max > min");
    if (log_scale && !(lo > 0.0))
        throw ConfigError("log-scale sweep needs a positive minimum");
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = double(i) / double(points - 1);
        v[std::size_t(i)] = log_scale ? lo * std::pow(hi / lo, f)
                                      : lo + (hi - lo) * f;
    }
    return v;
}

struct Probe {
    double width = 0.0;
    double eta = -1.0;
};

// Evaluate eta at one pulse width; grid-budget failures count as eta = -1.
Probe probe_width(const SimContext& ctx, double width) {
    SimContext c = ctx;
    c.pulse.spectral_width = width;
    Probe p;
    p.width = width;
    try {
        p.eta = evaluate(c).eta;
    } catch (const GridError&) {
        p.eta = -1.0;
    }
    return p;
}

}  // namespace

PulseOptimum optimize_pulse_width(const SimContext& ctx) {
    const double spacing = effective_spacing(realize_comb(ctx));
    const double lo = spacing / 10.0;
    const double hi = spacing * 100.0;

    const std::vector<double> widths = spaced_values(lo, hi, 11, true);
    Probe best;
    int best_i = -1;
    for (int i = 0; i < int(widths.size()); ++i) {
        const Probe p = probe_width(ctx, widths[std::size_t(i)]);
        if (p.eta > best.eta) {
            best = p;
            best_i = i;
        }
    }
    if (best_i < 0 || best.eta < 0.0)
        throw GridError("pulse-width optimisation: no feasible grid in [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "] rad/s");

    // Golden-section on log(width) between the neighbours of the best coarse
    // point, keeping the best evaluation ever seen.
    double a = std::log(widths[std::size_t(std::max(0, best_i - 1))]);
    double b = std::log(widths[std::size_t(std::min(int(widths.size()) - 1, best_i + 1))]);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    const double tol = std::log(1.01);

    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    Probe pc = probe_width(ctx, std::exp(c));
    Probe pd = probe_width(ctx, std::exp(d));
    while (b - a > tol) {
        if (pc.eta > pd.eta) {
            b = d;
            d = c;
            pd = pc;
            c = b - ratio * (b - a);
            pc = probe_width(ctx, std::exp(c));
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + ratio * (b - a);
            pd = probe_width(ctx, std::exp(d));
        }
        if (pc.eta > best.eta) best = pc;
        if (pd.eta > best.eta) best = pd;
    }
    return {best.width, best.eta};
}

SweepResult run_sweep(const SweepSpec& spec) {
    const std::vector<double> values =
        spaced_values(spec.min, spec.max, spec.points, spec.log_scale);

    SweepResult res;
    res.points.resize(values.size());
    std::vector<std::exception_ptr> fatal(values.size());

    parallel_for(values.size(), spec.workers, [&](std::size_t i) {
        SweepPoint& pt = res.points[i];
        pt.value = values[i];
        try {
            const SimContext ctx = with_target(spec.context, spec.target, values[i]);
            if (spec.optimize_pulse && spec.target != SweepTarget::PulseWidth) {
                const PulseOptimum opt = optimize_pulse_width(ctx);
                pt.eta = opt.eta;
                pt.pulse_width = opt.spectral_width;
            } else {
                pt.eta = evaluate(ctx).eta;
                pt.pulse_width = ctx.pulse.spectral_width;
            }
            pt.ok = true;
        } catch (const GridError& e) {
            pt.ok = false;
            pt.error = e.what();
        } catch (...) {
            fatal[i] = std::current_exception();
        }
    });

    for (const auto& e : fatal)
        if (e) std::rethrow_exception(e);

    for (int i = 0; i < int(res.points.size()); ++i) {
        const SweepPoint& pt = res.points[std::size_t(i)];
        if (pt.ok && (res.argmax < 0 || pt.eta > res.points[std::size_t(res.argmax)].eta))
            res.argmax = i;
    }
    return res;
}

Optimum2d optimize_2d(double g_min, double g_max, double k_min, double k_max,
                      const SimContext& base, int coarse_points,
                      int refine_levels, int workers) {
    if (!(g_min > 0.0) || !(g_max >= g_min) || !(k_min > 0.0) || !(k_max >= k_min))
        throw ConfigError("optimize: need 0 < min <= max for both ranges");
    if (coarse_points < 3) throw ConfigError("optimize: need at least 3 grid points");

    auto axis = [](double lo, double hi, int n) {
        return hi > lo ? spaced_values(lo, hi, n, true) : std::vector<double>{lo};
    };

    struct Cell {
        double eta = -1.0;
        double width = 0.0;
    };

    Optimum2d best;
    best.eta = -1.0;

    double glo = g_min, ghi = g_max, klo = k_min, khi = k_max;
    for (int level = 0; level <= refine_levels; ++level) {
        const int n = level == 0 ? coarse_points : 5;
        const std::vector<double> gs = axis(glo, ghi, n);
        const std::vector<double> ks = axis(klo, khi, n);
        std::vector<Cell> cells(gs.size() * ks.size());
        std::vector<std::exception_ptr> fatal(cells.size());

        parallel_for(cells.size(), workers, [&](std::size_t idx) {
            const std::size_t i = idx / ks.size();
            const std::size_t j = idx % ks.size();
            try {
                SimContext ctx = with_target(base, SweepTarget::GEff, gs[i]);
                ctx = with_target(ctx, SweepTarget::Kappa, ks[j]);
                const PulseOptimum opt = optimize_pulse_width(ctx);
                cells[idx] = {opt.eta, opt.spectral_width};
            } catch (const GridError&) {
                cells[idx].eta = -1.0;
            } catch (...) {
                fatal[idx] = std::current_exception();
            }
        });
        for (const auto& e : fatal)
            if (e) std::rethrow_exception(e);

        int bi = -1, bj = -1;
        double level_best = -1.0;
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            if (cells[idx].eta > level_best) {
                level_best = cells[idx].eta;
                bi = int(idx / ks.size());
                bj = int(idx % ks.size());
            }
        }
        if (bi < 0) throw GridError("optimize: every grid point was infeasible");

        if (level_best > best.eta) {
            best.eta = level_best;
            best.g_eff = gs[std::size_t(bi)];
            best.kappa = ks[std::size_t(bj)];
            best.pulse_width = cells[std::size_t(bi) * ks.size() + std::size_t(bj)].width;
        }

        // zoom into the neighbourhood of this level's best cell
        glo = gs[std::size_t(std::max(0, bi - 1))];
        ghi = gs[std::size_t(std::min(int(gs.size()) - 1, bi + 1))];
        klo = ks[std::size_t(std::max(0, bj - 1))];
        khi = ks[std::size_t(std::min(int(ks.size()) - 1, bj + 1))];
    }

    best.on_boundary = best.g_eff < g_min * 1.02 || best.g_eff > g_max / 1.02 ||
                       best.kappa < k_min * 1.02 || best.kappa > k_max / 1.02;
    return best;
}

}  // namespace iafc
