#pragma once

#include <optional>

#include "iafc/pulse.hpp"

namespace iafc {

struct EchoWindow {
    double t1 = 0.0;
    double t2 = 0.0;
};

// [t0 + pi/delta_eff, t0 + 3 pi/delta_eff]: one comb period centred on the
// first echo at 2 pi/delta_eff after the pulse.
EchoWindow echo_window(double delta_eff, double t0);

// Trapezoidal intensity integral over [t1, t2] with linearly interpolated
// endpoints. Throws GridError when the window leaves the grid.
double window_energy(const Waveform&, double t1, double t2);

// eta = output energy inside the echo window / total input energy.
double efficiency(const Waveform& input, const Waveform& output,
                  double delta_eff, double t0);

// Largest local intensity maximum after t0 + guard, returned as delay past
// t0 with sub-sample parabolic refinement. nullopt when nothing exceeds 1%
// of the reflected peak (the maximum at or before t0 + guard).
std::optional<double> detect_echo(const Waveform& output, double t0, double guard);

}  // namespace iafc
