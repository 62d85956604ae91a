#include "iafc/pulse.hpp"

#include <cmath>
#include <stdexcept>

#include "iafc/fft.hpp"
#include "iafc/kernels.hpp"

namespace iafc {
namespace {

double trapezoid(const std::vector<double>& y, double dx) {
    double s = 0.0;
    for (double v : y) s += v;
    if (!y.empty()) s -= 0.5 * (y.front() + y.back());
    return s * dx;
}

}  // namespace

double waveform_energy(const Waveform& w) {
    std::vector<double> inten(w.samples.size());
    kernels::active().magnitude_squared(w.samples.data(), w.samples.size(), inten.data());
    return trapezoid(inten, w.grid.dt());
}

double spectrum_energy(const Spectrum& s) {
    std::vector<double> inten(s.samples.size());
    kernels::active().magnitude_squared(s.samples.data(), s.samples.size(), inten.data());
    double sum = 0.0;
    for (double v : inten) sum += v;
    // (domega / 2pi) sum |S_k|^2 with S approximating the continuous transform
    return sum / (double(s.samples.size()) * s.grid.dt());
}

InputPulse gaussian_input(const Pulse& pulse, const SimGrid& grid) {
    if (!(pulse.spectral_width > 0.0))
        throw std::invalid_argument("gaussian_input: spectral width must be positive");
    const double support = 5.0 / pulse.spectral_width;  // 10 sigma_t
    if (pulse.center - support < 0.0 || pulse.center + support > grid.span)
        throw std::invalid_argument(
            "gaussian_input: pulse support clipped by the grid; widen the span or "
            "narrow the pulse");

    // Intensity-spectrum std dev gamma_p maps to sigma_t = 1/(2 gamma_p) for
    // the field envelope exp(-(t-t0)^2 / (4 sigma_t^2)).
    const double sigma_t = 0.5 / pulse.spectral_width;
    const double inv4s2 = 1.0 / (4.0 * sigma_t * sigma_t);

    InputPulse out;
    out.wave.grid = grid;
    out.wave.samples.resize(grid.samples);
    for (std::size_t i = 0; i < grid.samples; ++i) {
        const double dt0 = grid.time_at(i) - pulse.center;
        out.wave.samples[i] = std::exp(-dt0 * dt0 * inv4s2);
    }
    const double energy = waveform_energy(out.wave);
    const double norm = 1.0 / std::sqrt(energy);
    for (auto& z : out.wave.samples) z *= norm;

    out.spectrum.grid = grid;
    out.spectrum.samples.resize(grid.samples);
    fft_forward(out.wave.samples, out.spectrum.samples);
    const double dt = grid.dt();
    for (auto& z : out.spectrum.samples) z *= dt;
    return out;
}

Waveform propagate(const Spectrum& input,
                   const std::vector<std::complex<double>>& transfer_samples,
                   const SimGrid& grid) {
    if (input.grid != grid || transfer_samples.size() != grid.samples ||
        input.samples.size() != grid.samples)
        throw std::invalid_argument("propagate: grid mismatch");

    std::vector<std::complex<double>> spec = input.samples;
    kernels::active().apply_filter(spec.data(), transfer_samples.data(), spec.size());

    Waveform out;
    out.grid = grid;
    out.samples.resize(grid.samples);
    fft_inverse(spec, out.samples);
    // undo the dt scaling carried by Spectrum
    const double inv_dt = 1.0 / grid.dt();
    for (auto& z : out.samples) z *= inv_dt;
    return out;
}

std::vector<double> intensity(const Waveform& w) {
    std::vector<double> out(w.samples.size());
    kernels::active().magnitude_squared(w.samples.data(), w.samples.size(), out.data());
    return out;
}

}  // namespace iafc
