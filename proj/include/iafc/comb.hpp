#pragma once

#include <string>
#include <vector>

namespace iafc {

// One comb line: a |g_m> <-> |e_n> transition at carrier-relative detuning.
struct CombTooth {
    double detuning = 0.0;    // delta_nm, rad/s
    double coupling = 0.0;    // g_nm, rad/s
    double population = 0.0;  // sigma_mm of the ground sublevel feeding this line
    int ground_index = 0;     // lines sharing a ground sublevel share one population
    int excited_index = 0;
};

struct FrequencyComb {
    std::vector<CombTooth> teeth;
    double gamma = 0.0;  // homogeneous linewidth, rad/s
    std::string label;

    // Throws std::invalid_argument: teeth present, gamma > 0, couplings >= 0,
    // populations in [0,1] and summing to 1 over distinct ground sublevels.
    void validate() const;

    // sum_nm sigma_mm g_nm^2, i.e. N g'^2 for the ideal comb. Drives the
    // Purcell-regime predicate.
    double coupling_power() const;

    double max_abs_detuning() const;
};

// N teeth centred on zero detuning with uniform spacing, equal populations
// 1/N and couplings g_eff * sqrt(N) so that coupling_power() == N g_eff^2.
FrequencyComb ideal_comb(int n_teeth, double spacing, double tooth_width, double g_eff);

// Average adjacent gap after collapsing lines closer than gamma/2 into
// coupling-power-weighted clusters. Needs at least two resolvable clusters.
double mean_spacing(const FrequencyComb& comb);

// mean_spacing when two or more clusters resolve, otherwise gamma.
double effective_spacing(const FrequencyComb& comb);

// mean spacing / gamma
double finesse(const FrequencyComb& comb);

}  // namespace iafc
