#include "iafc/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace iafc {

FrequencyComb realize_comb(const SimContext& ctx) {
    if (std::holds_alternative<IdealCombSpec>(ctx.comb)) {
        const auto& s = std::get<IdealCombSpec>(ctx.comb);
        return ideal_comb(s.teeth, s.spacing, s.tooth_width, s.g_eff);
    }
    const auto& s = std::get<AtomicCombSpec>(ctx.comb);
    if (!s.atom) throw std::invalid_argument("atomic comb: no atom selected");
    const double carrier =
        s.carrier ? *s.carrier : comb_carrier_auto(*s.atom, s.b_field, s.q);
    return build_atomic_comb(*s.atom, s.b_field, s.q, ctx.cavity, carrier);
}

SimRun simulate(const SimContext& ctx) {
    SimRun run;
    run.comb = realize_comb(ctx);
    run.comb.validate();

    Pulse pulse = ctx.pulse;
    pulse.center = std::max(pulse.center, 5.0 / pulse.spectral_width);

    const SimGrid grid = make_grid(run.comb, ctx.cavity, pulse, ctx.budget);
    run.input = gaussian_input(pulse, grid);

    std::vector<double> omega(grid.samples);
    for (std::size_t i = 0; i < grid.samples; ++i) omega[i] = grid.omega_at(i);
    const auto h = transfer_grid(run.comb, ctx.cavity, omega);
    run.output = propagate(run.input.spectrum, h, grid);

    EchoOutcome& res = run.outcome;
    res.grid = grid;
    res.t0 = pulse.center;
    res.delta_eff = effective_spacing(run.comb);
    res.window = echo_window(res.delta_eff, res.t0);
    res.input_energy = waveform_energy(run.input.wave);
    res.window_energy = window_energy(run.output, res.window.t1, res.window.t2);
    res.output_energy = waveform_energy(run.output);
    res.eta = res.window_energy / res.input_energy;
    res.purcell = purcell_regime(run.comb, ctx.cavity);

    // Skip the prompt reflection when hunting the echo, but never so much that
    // the guard reaches the echo window itself (wide pulses make 4/width
    // exceed pi/delta_eff).
    const double guard =
        std::min(std::max(4.0 / pulse.spectral_width,
                          ctx.cavity.kappa > 0.0 ? 10.0 / ctx.cavity.kappa : 0.0),
                 phys::pi / res.delta_eff);
    res.echo_delay = detect_echo(run.output, res.t0, guard);
    return run;
}

EchoOutcome evaluate(const SimContext& ctx) { return simulate(ctx).outcome; }

}  // namespace iafc
