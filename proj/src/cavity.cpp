#include "iafc/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iafc/kernels.hpp"

namespace iafc {

double CavityParams::quality_factor() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("cavity: Q needs kappa > 0");
    return omega_c / kappa;
}

void CavityParams::validate() const {
    if (!std::isfinite(kappa) || kappa < 0.0)
        throw std::invalid_argument("cavity: kappa must be finite and >= 0");
    if (!std::isfinite(delta_c))
        throw std::invalid_argument("cavity: delta_c must be finite");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw std::invalid_argument("cavity: omega_c must be positive");
}

std::complex<double> propagator(const FrequencyComb& comb, double omega) {
    const double hg = 0.5 * comb.gamma;
    std::complex<double> d{0.0, 0.0};
    for (const CombTooth& t : comb.teeth) {
        const double w = t.population * t.coupling * t.coupling;
        d += w / std::complex<double>(hg, omega + t.detuning);
    }
    return d;
}

std::complex<double> transfer(const FrequencyComb& comb, const CavityParams& cav,
                              double omega) {
    const std::complex<double> den =
        std::complex<double>(0.0, omega + cav.delta_c) + propagator(comb, omega) +
        0.5 * cav.kappa;
    return 1.0 - cav.kappa / den;
}

namespace {

struct TeethSoA {
    std::vector<double> weight;
    std::vector<double> detuning;

    explicit TeethSoA(const FrequencyComb& comb) {
        weight.reserve(comb.teeth.size());
        detuning.reserve(comb.teeth.size());
        for (const CombTooth& t : comb.teeth) {
            weight.push_back(t.population * t.coupling * t.coupling);
            detuning.push_back(t.detuning);
        }
    }

    kernels::TeethView view(double gamma) const {
        return {weight.data(), detuning.data(), weight.size(), 0.5 * gamma};
    }
};

}  // namespace

void propagator_grid(const FrequencyComb& comb, std::span<const double> omega,
                     std::span<double> d_re, std::span<double> d_im) {
    if (omega.size() != d_re.size() || omega.size() != d_im.size())
        throw std::invalid_argument("propagator_grid: size mismatch");
    std::fill(d_re.begin(), d_re.end(), 0.0);
    std::fill(d_im.begin(), d_im.end(), 0.0);
    const TeethSoA soa(comb);
    kernels::active().comb_accumulate(omega.data(), omega.size(),
                                      soa.view(comb.gamma), d_re.data(), d_im.data());
}

std::vector<std::complex<double>> transfer_grid(const FrequencyComb& comb,
                                                const CavityParams& cav,
                                                std::span<const double> omega) {
    std::vector<double> re(omega.size()), im(omega.size());
    propagator_grid(comb, omega, re, im);
    kernels::active().transfer_map(omega.data(), omega.size(), cav.kappa, cav.delta_c,
                                   re.data(), im.data());
    std::vector<std::complex<double>> h(omega.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = {re[i], im[i]};
    return h;
}

ResponseSpectrum absorption_spectrum(const FrequencyComb& comb, const CavityParams& cav,
                                     std::span<const double> omega) {
    comb.validate();
    cav.validate();
    if (omega.empty()) throw std::invalid_argument("absorption_spectrum: empty grid");

    ResponseSpectrum out;
    out.omega.assign(omega.begin(), omega.end());
    out.values.resize(omega.size());

    std::vector<double> re(omega.size()), im(omega.size());
    propagator_grid(comb, omega, re, im);

    // chi = (2/omega_c) i D: Im chi = (2/omega_c) Re D >= 0.
    const double scale = 2.0 / cav.omega_c;
    double peak = 0.0;
    for (size_t i = 0; i < omega.size(); ++i) {
        out.values[i] = {-scale * im[i], scale * re[i]};
        peak = std::max(peak, out.values[i].imag());
    }
    if (peak > 0.0)
        for (auto& v : out.values) v /= peak;
    return out;
}

bool purcell_regime(const FrequencyComb& comb, const CavityParams& cav) {
    if (!(cav.kappa > 0.0)) return false;
    const double c = comb.coupling_power() / cav.kappa;
    return cav.kappa > c && c > comb.gamma;
}

}  // namespace iafc
