#pragma once

#include <complex>
#include <span>
#include <vector>

#include "iafc/comb.hpp"

namespace iafc {

struct CavityParams {
    double kappa = 0.0;        // field decay rate, rad/s
    double delta_c = 0.0;      // cavity-field detuning omega_c - omega_L, rad/s
    double mode_volume = 0.0;  // m^3 (only atomic combs consume it)
    double omega_c = 0.0;      // absolute cavity frequency, rad/s

    double quality_factor() const;  // omega_c / kappa
    void validate() const;          // kappa >= 0, omega_c > 0, finite
};

// Atom-comb propagator D(w) = sum_nm sigma_mm g_nm^2 / (i(w + delta_nm) + gamma/2).
// Re D >= 0 for gamma > 0, which is what keeps |H| <= 1 below.
std::complex<double> propagator(const FrequencyComb&, double omega);

// Cavity transfer function H(w) = 1 - kappa / (i(w + delta_c) + D(w) + kappa/2).
// gamma -> 0 makes it all-pass; kappa = 0 makes it the identity.
std::complex<double> transfer(const FrequencyComb&, const CavityParams&, double omega);

// Grid forms routed through the runtime-dispatched kernels.
void propagator_grid(const FrequencyComb&, std::span<const double> omega,
                     std::span<double> d_re, std::span<double> d_im);
std::vector<std::complex<double>> transfer_grid(const FrequencyComb&, const CavityParams&,
                                                std::span<const double> omega);

// Weak-probe susceptibility chi(w) = (2/omega_c) i D(w), rescaled so the
// absorptive part Im chi peaks at 1.
struct ResponseSpectrum {
    std::vector<double> omega;                // rad/s, ascending
    std::vector<std::complex<double>> values;
};
ResponseSpectrum absorption_spectrum(const FrequencyComb&, const CavityParams&,
                                     std::span<const double> omega);

// kappa > (sum sigma g^2)/kappa > gamma: the retrieved field leaves the
// cavity faster than the comb can reabsorb it.
bool purcell_regime(const FrequencyComb&, const CavityParams&);

}  // namespace iafc
