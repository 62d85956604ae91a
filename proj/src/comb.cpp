#include "iafc/comb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace iafc {

void FrequencyComb::validate() const {
    if (teeth.empty()) throw std::invalid_argument("comb: no teeth");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("comb: gamma must be positive");
    std::map<int, double> populations;
    for (const CombTooth& t : teeth) {
        if (!std::isfinite(t.detuning) || !std::isfinite(t.coupling))
            throw std::invalid_argument("comb: non-finite tooth");
        if (t.coupling < 0.0)
            throw std::invalid_argument("comb: negative coupling");
        if (t.population < 0.0 || t.population > 1.0)
            throw std::invalid_argument("comb: population outside [0,1]");
        auto [it, inserted] = populations.emplace(t.ground_index, t.population);
        if (!inserted && std::abs(it->second - t.population) > 1e-12)
            throw std::invalid_argument(
                "comb: inconsistent population for ground sublevel " +
                std::to_string(t.ground_index));
    }
    double total = 0.0;
    for (const auto& [idx, p] : populations) total += p;
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("comb: ground populations sum to " +
                                    std::to_string(total) + ", expected 1");
}

double FrequencyComb::coupling_power() const {
    double s = 0.0;
    for (const CombTooth& t : teeth) s += t.population * t.coupling * t.coupling;
    return s;
}

double FrequencyComb::max_abs_detuning() const {
    double m = 0.0;
    for (const CombTooth& t : teeth) m = std::max(m, std::abs(t.detuning));
    return m;
}

FrequencyComb ideal_comb(int n_teeth, double spacing, double tooth_width, double g_eff) {
    if (n_teeth < 1) throw std::invalid_argument("ideal_comb: need at least one tooth");
    if (!(spacing > 0.0)) throw std::invalid_argument("ideal_comb: spacing must be positive");
    if (!(tooth_width > 0.0)) throw std::invalid_argument("ideal_comb: tooth width must be positive");
    if (!(g_eff > 0.0)) throw std::invalid_argument("ideal_comb: coupling must be positive");

    FrequencyComb comb;
    comb.gamma = tooth_width;
    comb.label = "ideal[" + std::to_string(n_teeth) + "]";
    const double g = g_eff * std::sqrt(double(n_teeth));
    const double sigma = 1.0 / double(n_teeth);
    comb.teeth.reserve(size_t(n_teeth));
    for (int k = 0; k < n_teeth; ++k) {
        CombTooth t;
        t.detuning = (double(k) - 0.5 * double(n_teeth - 1)) * spacing;
        t.coupling = g;
        t.population = sigma;
        t.ground_index = k;
        t.excited_index = k;
        comb.teeth.push_back(t);
    }
    return comb;
}

namespace {

// Cluster positions after merging lines closer than gamma/2, weighted by
// sigma g^2 (plain average if a cluster carries no coupling).
std::vector<double> cluster_positions(const FrequencyComb& comb) {
    std::vector<const CombTooth*> sorted;
    sorted.reserve(comb.teeth.size());
    for (const CombTooth& t : comb.teeth) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [](const CombTooth* a, const CombTooth* b) { return a->detuning < b->detuning; });

    std::vector<double> centers;
    const double merge = 0.5 * comb.gamma;
    size_t i = 0;
    while (i < sorted.size()) {
        double wsum = 0.0, wpos = 0.0, psum = 0.0;
        size_t count = 0;
        double last = sorted[i]->detuning;
        while (i < sorted.size() && (count == 0 || sorted[i]->detuning - last < merge)) {
            const CombTooth* t = sorted[i];
            const double w = t->population * t->coupling * t->coupling;
            wsum += w;
            wpos += w * t->detuning;
            psum += t->detuning;
            last = t->detuning;
            ++count;
            ++i;
        }
        centers.push_back(wsum > 0.0 ? wpos / wsum : psum / double(count));
    }
    return centers;
}

}  // namespace

double mean_spacing(const FrequencyComb& comb) {
    comb.validate();
    const std::vector<double> centers = cluster_positions(comb);
    if (centers.size() < 2)
        throw std::invalid_argument("mean_spacing: comb has fewer than two resolvable lines");
    return (centers.back() - centers.front()) / double(centers.size() - 1);
}

double effective_spacing(const FrequencyComb& comb) {
    comb.validate();
    const std::vector<double> centers = cluster_positions(comb);
    if (centers.size() < 2) return comb.gamma;
    return (centers.back() - centers.front()) / double(centers.size() - 1);
}

double finesse(const FrequencyComb& comb) { return mean_spacing(comb) / comb.gamma; }

}  // namespace iafc
