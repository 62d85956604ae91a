#include "iafc/sim_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "iafc/errors.hpp"

namespace iafc {

SimGrid make_grid(const FrequencyComb& comb, const CavityParams& cav,
                  const Pulse& pulse, const GridBudget& budget) {
    comb.validate();
    if (!(pulse.spectral_width > 0.0))
        throw std::invalid_argument("make_grid: pulse spectral width must be positive");
    if (!(pulse.center >= 0.0))
        throw std::invalid_argument("make_grid: pulse center must be >= 0");
    if (budget.periods < 6.0)
        throw std::invalid_argument("make_grid: need at least 6 echo periods of span");

    const double spacing = effective_spacing(comb);
    const double period = phys::two_pi / spacing;
    const double span =
        pulse.center + budget.periods * period + budget.tail_gammas / comb.gamma;

    const double omega_max =
        std::max({comb.max_abs_detuning(), cav.kappa, pulse.spectral_width});
    const double dt_max = phys::pi / (5.0 * omega_max);

    std::size_t n = 64;
    while (double(n) * dt_max < span) {
        if (n >= budget.sample_cap)
            throw GridError(
                "grid needs more than " + std::to_string(budget.sample_cap) +
                " samples (span " + std::to_string(span * 1e9) + " ns, dt <= " +
                std::to_string(dt_max * 1e12) +
                " ps); reduce the comb span/pulse bandwidth or raise the sample cap");
        n <<= 1;
    }
    return SimGrid{n, span};
}

}  // namespace iafc
