#pragma once

#include <functional>
#include <string>
#include <vector>

#include "iafc/simulation.hpp"

namespace iafc {

enum class SweepTarget { GEff, Kappa, DeltaC, Finesse, BField, PulseWidth };
const char* to_string(SweepTarget);
SweepTarget sweep_target_from_string(const std::string&);

// Context with one parameter replaced. Throws when the target does not apply
// (g_eff/finesse need an ideal comb, b_field an atomic one).
SimContext with_target(const SimContext&, SweepTarget, double value);

struct SweepSpec {
    SweepTarget target = SweepTarget::Kappa;
    double min = 0.0;           // internal units of the target
    double max = 0.0;
    int points = 2;
    bool log_scale = false;
    SimContext context;
    bool optimize_pulse = true;  // per-point pulse-width optimisation
    int workers = 1;
};

struct SweepPoint {
    double value = 0.0;
    double eta = 0.0;
    double pulse_width = 0.0;  // gamma_p actually used, rad/s
    bool ok = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // input order
    int argmax = -1;                 // best ok point, first on ties
};

// Results are a pure function of the spec: worker count only changes timing,
// never bytes. A grid-budget failure marks that point failed; anything else
// aborts the sweep.
SweepResult run_sweep(const SweepSpec&);

struct PulseOptimum {
    double spectral_width = 0.0;
    double eta = 0.0;
};

// Coarse 11-point log scan of gamma_p over [delta_eff/10, 100 delta_eff],
// then golden-section to 1% relative width. Returns the best evaluation seen,
// so the result always dominates the coarse scan.
PulseOptimum optimize_pulse_width(const SimContext&);

struct Optimum2d {
    double g_eff = 0.0;
    double kappa = 0.0;
    double eta = 0.0;
    double pulse_width = 0.0;
    bool on_boundary = false;
};

// Log-spaced coarse grid with per-point pulse optimisation, then repeated
// zoom refinement around the running best cell.
Optimum2d optimize_2d(double g_min, double g_max, double k_min, double k_max,
                      const SimContext&, int coarse_points = 7,
                      int refine_levels = 3, int workers = 1);

// Static work queue over [0, count); fn(i) must only touch slot i.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace iafc
