// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Library-driven; no CLI involved.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "iafc/atom_data.hpp"
#include "iafc/cavity.hpp"
#include "iafc/comb.hpp"
#include "iafc/constants.hpp"
#include "iafc/fft.hpp"
#include "iafc/memory_analysis.hpp"
#include "iafc/pulse.hpp"
#include "iafc/simulation.hpp"
#include "iafc/sweep.hpp"
#include "iafc/wigner.hpp"
#include "iafc/zeeman.hpp"

using namespace iafc;

namespace {

std::string str(const char* fmt, ...) {
    char buf[1024];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

// The ideal-comb reference point: 7 teeth, 300 MHz spacing, 7.5e6 rad/s
// tooth width, resonant cavity.
SimContext reference_context(double g_eff, double kappa, double width) {
    SimContext ctx;
    ctx.comb = IdealCombSpec{7, phys::two_pi * 3e8, 7.5e6, g_eff};
    ctx.cavity.kappa = kappa;
    ctx.cavity.omega_c = phys::two_pi * phys::c_light / 420.3e-9;
    ctx.pulse = Pulse{2e-9, width};
    return ctx;
}

const AtomDatabase& db() {
    static const AtomDatabase d =
        AtomDatabase::load(std::string(IAFC_SOURCE_DIR) + "/data/atomic_constants.dat");
    return d;
}

SimContext atom_context(const char* name, double b_field, double kappa_hz) {
    SimContext ctx;
    AtomicCombSpec spec;
    spec.atom = &db().find(name);
    spec.b_field = b_field;
    spec.q = +1;
    ctx.comb = spec;
    ctx.cavity.kappa = phys::two_pi * kappa_hz;
    ctx.cavity.mode_volume = 2e-17;  // 20 um^3
    ctx.cavity.omega_c = spec.atom->omega0();
    ctx.pulse = Pulse{2e-9, 1e9};  // width is optimised per run
    return ctx;
}

// ---------------------------------------------------------------- criteria

Verdict echo_delay() {
    const EchoOutcome o = evaluate(reference_context(1.5e9, 7e9, 9.5e8));
    if (!o.echo_delay) return {false, "no echo detected"};
    const double ns = *o.echo_delay * 1e9;
    return {ns >= 3.0 && ns <= 3.7,
            str("delay %.4f ns, band [3.0, 3.7] ns, eta %.4f", ns, o.eta)};
}

Verdict reference_efficiencies() {
    // One comb serves both cavities: the coupling is optimised once at
    // kappa = 7e9 and carried to 4e9, where only the pulse width is re-tuned.
    const Optimum2d at7 =
        optimize_2d(0.5e9, 4e9, 7e9, 7e9, reference_context(1.5e9, 7e9, 9.5e8), 9, 3, 4);
    SimContext four = reference_context(at7.g_eff, 4e9, 9.5e8);
    const PulseOptimum at4 = optimize_pulse_width(four);

    const bool ok7 = std::abs(at7.eta - 0.9422) <= 0.03;
    const bool ok4 = std::abs(at4.eta - 0.7202) <= 0.05;
    return {ok7 && ok4,
            str("eta(kappa 7e9) = %.4f vs 0.9422 +- 0.03 [%s], "
                "eta(kappa 4e9) = %.4f vs 0.7202 +- 0.05 [%s], shared g' = %.4g",
                at7.eta, ok7 ? "in" : "out", at4.eta, ok4 ? "in" : "out", at7.g_eff)};
}

Verdict optimum_location() {
    const Optimum2d best =
        optimize_2d(0.5e9, 4e9, 2e9, 2e10, reference_context(1.5e9, 7e9, 9.5e8), 7, 3, 4);
    const bool gok = std::abs(best.g_eff - 1.8e9) <= 0.2 * 1.8e9;
    const bool kok = std::abs(best.kappa - 1.1e10) <= 0.2 * 1.1e10;
    return {gok && kok,
            str("argmax (g', kappa) = (%.4g, %.4g) rad/s, eta = %.4f; "
                "target (1.8e9, 1.1e10) +- 20%% [g' %s, kappa %s]",
                best.g_eff, best.kappa, best.eta, gok ? "in" : "out",
                kok ? "in" : "out")};
}

Verdict detuning_monotonicity() {
    std::string seq;
    std::vector<double> etas;
    for (int i = 0; i <= 6; ++i) {
        SimContext ctx = reference_context(1.8e9, 1.1e10, 9.5e8);
        ctx.cavity.delta_c = 0.5e9 * i;
        etas.push_back(optimize_pulse_width(ctx).eta);
        seq += str(i ? " %.4f" : "%.4f", etas.back());
    }
    bool mono = true;
    for (std::size_t i = 1; i < etas.size(); ++i)
        mono = mono && etas[i] <= etas[i - 1] + 0.005;
    return {mono, "eta over delta_c 0..3e9 rad/s: " + seq};
}

Verdict finesse_saturation() {
    const int finesses[] = {10, 20, 40, 100, 200};
    std::string seq;
    std::vector<double> etas;
    double eta100 = 0.0;
    for (int f : finesses) {
        SimContext ctx = reference_context(1.8e9, 1.1e10, 9.5e8);
        auto& comb = std::get<IdealCombSpec>(ctx.comb);
        // The quoted finesse is the ratio of the published numerals, where
        // the spacing carries the 2pi of its unit and the width does not;
        // the reference comb (width spacing/(2pi*40)) is F = 40.
        comb.tooth_width = comb.spacing / (phys::two_pi * double(f));
        etas.push_back(optimize_pulse_width(ctx).eta);
        if (f == 100) eta100 = etas.back();
        seq += str(seq.empty() ? "F=%d:%.4f" : " F=%d:%.4f", f, etas.back());
    }
    bool nondec = true;
    for (std::size_t i = 1; i < etas.size(); ++i)
        nondec = nondec && etas[i] >= etas[i - 1] - 0.005;
    const bool sat = eta100 >= 0.95;
    return {nondec && sat,
            seq + str("; eta(F=100) %.4f >= 0.95 [%s], nondecreasing [%s]", eta100,
                      sat ? "yes" : "no", nondec ? "yes" : "no")};
}

// Rises to a single interior peak and falls after it, within noise.
bool single_interior_peak(const SweepResult& res, double noise) {
    std::vector<double> etas;
    for (const SweepPoint& p : res.points)
        if (p.ok) etas.push_back(p.eta);
    if (etas.size() < 3) return false;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < etas.size(); ++i)
        if (etas[i] > etas[peak]) peak = i;
    if (peak == 0 || peak + 1 == etas.size()) return false;
    for (std::size_t i = 0; i < peak; ++i)
        if (etas[i] > etas[i + 1] + noise) return false;
    for (std::size_t i = peak; i + 1 < etas.size(); ++i)
        if (etas[i + 1] > etas[i] + noise) return false;
    return true;
}

Verdict atomic_efficiencies() {
    const SimContext rb = atom_context("Rb87", 0.15, 7e9);
    const SimContext cs = atom_context("Cs133", 0.10, 8e9);
    const double eta_rb = optimize_pulse_width(rb).eta;
    const double eta_cs = optimize_pulse_width(cs).eta;
    const bool vrb = std::abs(eta_rb - 0.929) <= 0.05;
    const bool vcs = std::abs(eta_cs - 0.9036) <= 0.05;

    // Sweep the echo-dominated regime. Below ~2e8 rad/s the cavity rings
    // far longer than the analysis window, no echo forms, and the window
    // merely clips the prompt reflection of a slow pulse.
    auto sweep_shape = [](const SimContext& ctx) {
        SweepSpec spec;
        spec.target = SweepTarget::Kappa;
        spec.min = 2e8;
        spec.max = 1e11;
        spec.points = 21;
        spec.log_scale = true;
        spec.context = ctx;
        spec.optimize_pulse = true;
        spec.workers = 4;
        return single_interior_peak(run_sweep(spec), 0.005);
    };
    const bool srb = sweep_shape(rb);
    const bool scs = sweep_shape(cs);

    return {vrb && vcs && srb && scs,
            str("eta(Rb87) = %.4f vs 0.929 +- 0.05 [%s], "
                "eta(Cs133) = %.4f vs 0.9036 +- 0.05 [%s]; "
                "kappa-sweep single interior peak [Rb %s, Cs %s]",
                eta_rb, vrb ? "in" : "out", eta_cs, vcs ? "in" : "out",
                srb ? "yes" : "no", scs ? "yes" : "no")};
}

// ---------------------------------------------------------- property suite

bool prop_allpass_at_zero_width() {
    FrequencyComb comb = ideal_comb(7, phys::two_pi * 3e8, 7.5e6, 1.5e9);
    comb.gamma = 0.0;
    CavityParams cav;
    cav.kappa = 7e9;
    cav.omega_c = phys::two_pi * phys::c_light / 420.3e-9;
    const double step = comb.teeth[1].detuning - comb.teeth[0].detuning;
    double worst = 0.0;
    for (int k = -2000; k <= 2000; ++k) {
        const double w = double(k) * (step / phys::pi) + 0.31 * step;
        worst = std::max(worst, std::abs(std::abs(transfer(comb, cav, w)) - 1.0));
    }
    return worst <= 1e-12;
}

bool prop_passive_bound() {
    const FrequencyComb comb = ideal_comb(7, phys::two_pi * 3e8, 7.5e6, 1.5e9);
    CavityParams cav;
    cav.omega_c = phys::two_pi * phys::c_light / 420.3e-9;
    double worst = 0.0;
    for (double kappa : {2e8, 7e9, 5e10})
        for (double dc : {0.0, 1.5e9, -3e9}) {
            cav.kappa = kappa;
            cav.delta_c = dc;
            for (int k = -4000; k <= 4000; ++k) {
                const double w = double(k) * 7.5e6;
                worst = std::max(worst, std::abs(transfer(comb, cav, w)));
            }
        }
    return worst <= 1.0 + 1e-12;
}

bool prop_energy_conservation() {
    FrequencyComb comb = ideal_comb(7, phys::two_pi * 3e8, 7.5e6, 1.5e9);
    comb.gamma = 0.0;
    CavityParams cav;
    cav.kappa = 7e9;
    cav.omega_c = phys::two_pi * phys::c_light / 420.3e-9;

    const SimGrid g{std::size_t(1) << 15, 200e-9};
    // Keep the singular teeth off the frequency bins; |H| = 1 is unaffected.
    for (CombTooth& t : comb.teeth) t.detuning += 0.37 * g.domega();
    const InputPulse in = gaussian_input(Pulse{25e-9, 9.5e8}, g);
    if (std::abs(spectrum_energy(in.spectrum) - waveform_energy(in.wave)) > 1e-6)
        return false;

    std::vector<double> w(g.samples);
    for (std::size_t k = 0; k < g.samples; ++k) w[k] = g.omega_at(k);
    const Waveform out = propagate(in.spectrum, transfer_grid(comb, cav, w), g);
    return std::abs(waveform_energy(out) - 1.0) <= 1e-6;
}

// Closed-form ground-manifold energies (A > 0, J = 1/2). The stretched
// states are product states with energies linear in the field; the other
// levels pair up on the usual square-root branches.
std::vector<double> breit_rabi_levels(const Isotope& iso, const FineLevel& lvl,
                                      double b) {
    const double mu_b_over_h = 9.2740100783e-24 / 6.62607015e-34;
    const int two_i = iso.nuclear_spin.twice();
    const double i_spin = 0.5 * two_i;
    const double a = lvl.a_hf;
    const double dw = a * (i_spin + 0.5);
    const double x = (lvl.g_j - iso.g_i) * mu_b_over_h * b / dw;

    std::vector<double> e;
    for (int two_mf = -(two_i + 1); two_mf <= two_i + 1; two_mf += 2) {
        const double mf = 0.5 * two_mf;
        const double common = -0.25 * a + iso.g_i * mu_b_over_h * b * mf;
        if (std::abs(two_mf) == two_i + 1) {
            e.push_back(common + 0.5 * dw * (1.0 + (two_mf > 0 ? x : -x)));
        } else {
            const double s = std::sqrt(1.0 + 4.0 * mf * x / (two_i + 1) + x * x);
            e.push_back(common + 0.5 * dw * s);
            e.push_back(common - 0.5 * dw * s);
        }
    }
    std::sort(e.begin(), e.end());
    return e;
}

bool prop_breit_rabi() {
    for (const char* name : {"Rb87", "Cs133"}) {
        const AtomSpec& spec = db().find(name);
        for (double b : {0.02, 0.15, 0.3, 0.45}) {
            const ZeemanEigensystem sys =
                level_eigensystem(spec.ground, spec.isotope, b);
            const std::vector<double> ref =
                breit_rabi_levels(spec.isotope, spec.ground, b);
            if (std::size_t(sys.energies.size()) != ref.size()) return false;
            double scale = 0.0;
            for (double v : ref) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < ref.size(); ++i)
                if (std::abs(sys.energies[Eigen::Index(i)] - ref[i]) > 1e-9 * scale)
                    return false;
        }
    }
    return true;
}

bool prop_3j_orthogonality() {
    const int pairs[][2] = {{3, 1}, {7, 3}, {4, 2}};  // twice j1, twice j2
    double worst = 0.0;
    for (const auto& p : pairs) {
        const HalfInt j1 = HalfInt::from_twice(p[0]);
        const HalfInt j2 = HalfInt::from_twice(p[1]);
        for (int tj3 = std::abs(p[0] - p[1]); tj3 <= p[0] + p[1]; tj3 += 2)
            for (int tj3p = std::abs(p[0] - p[1]); tj3p <= p[0] + p[1]; tj3p += 2)
                for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
                    if (std::abs(tm3) > tj3p) continue;
                    double sum = 0.0;
                    for (int tm1 = -p[0]; tm1 <= p[0]; tm1 += 2) {
                        const int tm2 = -tm3 - tm1;
                        if (std::abs(tm2) > p[1]) continue;
                        sum += wigner3j(j1, j2, HalfInt::from_twice(tj3),
                                        HalfInt::from_twice(tm1),
                                        HalfInt::from_twice(tm2),
                                        HalfInt::from_twice(tm3)) *
                               wigner3j(j1, j2, HalfInt::from_twice(tj3p),
                                        HalfInt::from_twice(tm1),
                                        HalfInt::from_twice(tm2),
                                        HalfInt::from_twice(tm3));
                    }
                    sum *= tj3 + 1.0;
                    worst = std::max(worst, std::abs(sum - (tj3 == tj3p ? 1.0 : 0.0)));
                }
    }
    return worst <= 1e-12;
}

bool prop_dipole_sum_rule() {
    struct Probe {
        const char* atom;
        double b;
    };
    for (const Probe& probe : {Probe{"Rb87", 0.15}, Probe{"Cs133", 0.10}}) {
        const AtomSpec& spec = db().find(probe.atom);
        const ZeemanEigensystem g = level_eigensystem(spec.ground, spec.isotope, probe.b);
        const ZeemanEigensystem e = level_eigensystem(spec.excited, spec.isotope, probe.b);
        const double expected = spec.reduced_dipole * spec.reduced_dipole / 2.0;
        for (int gi = 0; gi < g.energies.size(); ++gi) {
            double total = 0.0;
            for (int q = -1; q <= 1; ++q)
                for (int ei = 0; ei < e.energies.size(); ++ei) {
                    const double d = transition_dipole(g, gi, e, ei, q, spec);
                    total += d * d;
                }
            if (std::abs(total - expected) > 1e-10 * expected) return false;
        }
    }
    return true;
}

bool prop_absorption_peaks() {
    const FrequencyComb comb = ideal_comb(5, 2e9, 5e7, 1e9);
    CavityParams cav;
    cav.kappa = 7e9;
    cav.omega_c = phys::two_pi * phys::c_light / 420.3e-9;

    const double span = 2.0 * (comb.max_abs_detuning() + 10.0 * comb.gamma);
    const double step = comb.gamma / 50.0;
    std::vector<double> omega;
    for (double w = -0.5 * span; w <= 0.5 * span; w += step) omega.push_back(w);
    const ResponseSpectrum spec = absorption_spectrum(comb, cav, omega);

    int peaks = 0;
    for (std::size_t i = 1; i + 1 < omega.size(); ++i) {
        const double v = spec.values[i].imag();
        if (v <= 0.05) continue;
        if (v <= spec.values[i - 1].imag() || v < spec.values[i + 1].imag()) continue;
        ++peaks;
        double nearest = 1e300;
        for (const CombTooth& t : comb.teeth)
            nearest = std::min(nearest, std::abs(omega[i] + t.detuning));
        if (nearest > 0.5 * comb.gamma) return false;
    }
    return peaks == int(comb.teeth.size());
}

bool prop_delay_halving() {
    SimContext ctx = reference_context(1.5e9, 2e10, 9.5e8);
    auto& comb = std::get<IdealCombSpec>(ctx.comb);
    comb.g_eff = std::sqrt(ctx.cavity.kappa * comb.spacing / phys::two_pi);
    const EchoOutcome base = evaluate(ctx);

    comb.spacing *= 2.0;
    comb.g_eff = std::sqrt(ctx.cavity.kappa * comb.spacing / phys::two_pi);
    ctx.pulse.spectral_width *= 2.0;
    const EchoOutcome doubled = evaluate(ctx);

    if (!base.echo_delay || !doubled.echo_delay) return false;
    const double ratio = *base.echo_delay / *doubled.echo_delay;
    return std::abs(ratio - 2.0) <= 0.05 * 2.0;
}

bool prop_sweep_determinism() {
    SweepSpec spec;
    spec.target = SweepTarget::GEff;
    spec.min = 0.8e9;
    spec.max = 2.5e9;
    spec.points = 6;
    spec.log_scale = true;
    spec.context = reference_context(1.5e9, 7e9, 9.5e8);
    spec.optimize_pulse = true;

    spec.workers = 1;
    const SweepResult one = run_sweep(spec);
    spec.workers = 4;
    const SweepResult four = run_sweep(spec);

    if (one.points.size() != four.points.size() || one.argmax != four.argmax)
        return false;
    for (std::size_t i = 0; i < one.points.size(); ++i) {
        if (one.points[i].value != four.points[i].value) return false;
        if (one.points[i].eta != four.points[i].eta) return false;
        if (one.points[i].pulse_width != four.points[i].pulse_width) return false;
    }
    return true;
}

Verdict property_suite() {
    struct Property {
        const char* name;
        bool (*check)();
    };
    const Property props[] = {
        {"all-pass at zero tooth width", prop_allpass_at_zero_width},
        {"passive transfer bound", prop_passive_bound},
        {"energy conservation", prop_energy_conservation},
        {"Breit-Rabi agreement", prop_breit_rabi},
        {"3j orthogonality", prop_3j_orthogonality},
        {"dipole sum rule", prop_dipole_sum_rule},
        {"absorption peak placement", prop_absorption_peaks},
        {"echo delay halving", prop_delay_halving},
        {"sweep determinism", prop_sweep_determinism},
    };
    int passed = 0;
    std::string failed;
    for (const Property& p : props) {
        if (p.check()) {
            ++passed;
        } else {
            failed += failed.empty() ? p.name : std::string(", ") + p.name;
        }
    }
    const int total = int(std::size(props));
    if (passed == total) return {true, str("%d/%d properties", passed, total)};
    return {false, str("%d/%d properties (failed: %s)", passed, total, failed.c_str())};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Verdict (*run)();
    };
    const Criterion criteria[] = {
        {"echo delay", echo_delay},
        {"ideal comb efficiencies", reference_efficiencies},
        {"optimum location", optimum_location},
        {"detuning monotonicity", detuning_monotonicity},
        {"finesse saturation", finesse_saturation},
        {"atomic comb efficiencies", atomic_efficiencies},
        {"property suite", property_suite},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] criterion %zu (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL",
                    i + 1, criteria[i].name, v.detail.c_str(), sec);
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    std::printf("%zu of %zu criteria passed\n", std::size(criteria) - std::size_t(failures),
                std::size(criteria));
    return failures == 0 ? 0 : 1;
}
