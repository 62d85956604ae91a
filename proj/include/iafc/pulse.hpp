#pragma once

#include <complex>
#include <vector>

#include "iafc/sim_grid.hpp"

namespace iafc {

// Time-domain field envelope on a SimGrid.
struct Waveform {
    SimGrid grid;
    std::vector<std::complex<double>> samples;
};

// Frequency-domain counterpart in FFT bin order, scaled by dt so samples
// approximate the continuous transform; energies then match Parseval exactly.
struct Spectrum {
    SimGrid grid;
    std::vector<std::complex<double>> samples;
};

struct InputPulse {
    Waveform wave;
    Spectrum spectrum;
};

// Unit-energy Gaussian centred at pulse.center with intensity-spectrum std
// dev gamma_p; the spectrum peaks at w = 0. Throws std::invalid_argument when
// the +-5/gamma_p support does not fit inside the grid.
InputPulse gaussian_input(const Pulse&, const SimGrid&);

double waveform_energy(const Waveform&);
double spectrum_energy(const Spectrum&);

// Output envelope: inverse transform of H * input spectrum.
Waveform propagate(const Spectrum& input,
                   const std::vector<std::complex<double>>& transfer_samples,
                   const SimGrid&);

// |samples|^2 through the dispatched kernel.
std::vector<double> intensity(const Waveform&);

}  // namespace iafc
