#pragma once

#include <cstddef>

#include "iafc/cavity.hpp"
#include "iafc/comb.hpp"
#include "iafc/constants.hpp"

namespace iafc {

struct Pulse {
    double center = 0.0;          // t0, s
    double spectral_width = 0.0;  // gamma_p, rad/s: std dev of the intensity spectrum
};

// Uniform periodic time grid t_i = i dt, i = 0..n-1, with the matching FFT
// frequency grid (bin i holds i dω for i < n/2, (i-n) dω above).
struct SimGrid {
    std::size_t samples = 0;  // power of two
    double span = 0.0;        // T, s

    double dt() const { return span / double(samples); }
    double domega() const { return phys::two_pi / span; }
    double time_at(std::size_t i) const { return double(i) * dt(); }
    double omega_at(std::size_t i) const {
        const double k = i < samples / 2 ? double(i) : double(i) - double(samples);
        return k * domega();
    }
    bool operator==(const SimGrid&) const = default;
};

struct GridBudget {
    std::size_t sample_cap = std::size_t(1) << 26;
    double periods = 8.0;      // echo periods kept after t0 (floor: 6)
    double tail_gammas = 3.0;  // extra span, in 1/gamma, for the slow atomic ringdown
};

// Resolution from the fastest scale (comb span, kappa, pulse bandwidth:
// pi/dt >= 5x), span from the slowest (echo period, atomic decay). Throws
// GridError when the budget cannot hold both.
SimGrid make_grid(const FrequencyComb&, const CavityParams&, const Pulse&,
                  const GridBudget& = {});

}  // namespace iafc
