#include "iafc/memory_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iafc/errors.hpp"

namespace iafc {

EchoWindow echo_window(double delta_eff, double t0) {
    if (!(delta_eff > 0.0))
        throw std::invalid_argument("echo_window: spacing must be positive");
    return {t0 + phys::pi / delta_eff, t0 + 3.0 * phys::pi / delta_eff};
}

double window_energy(const Waveform& w, double t1, double t2) {
    if (!(t2 > t1)) throw std::invalid_argument("window_energy: empty window");
    const double dt = w.grid.dt();
    const double t_last = w.grid.time_at(w.samples.size() - 1);
    if (t1 < 0.0 || t2 > t_last)
        throw GridError("analysis window [" + std::to_string(t1 * 1e9) + ", " +
                        std::to_string(t2 * 1e9) +
                        "] ns falls outside the simulated span");

    const std::vector<double> inten = intensity(w);
    auto value_at = [&](double t) {
        const double x = t / dt;
        const std::size_t i = std::min(std::size_t(x), inten.size() - 2);
        const double f = x - double(i);
        return inten[i] * (1.0 - f) + inten[i + 1] * f;
    };

    const std::size_t i1 = std::size_t(std::ceil(t1 / dt));
    const std::size_t i2 = std::size_t(std::floor(t2 / dt));
    double sum = 0.0;
    if (i1 <= i2) {
        for (std::size_t i = i1; i <= i2; ++i) sum += inten[i];
        sum -= 0.5 * (inten[i1] + inten[i2]);
        sum *= dt;
        // partial cells at both ends
        sum += 0.5 * (value_at(t1) + inten[i1]) * (double(i1) * dt - t1);
        sum += 0.5 * (inten[i2] + value_at(t2)) * (t2 - double(i2) * dt);
    } else {
        sum = 0.5 * (value_at(t1) + value_at(t2)) * (t2 - t1);
    }
    return sum;
}

double efficiency(const Waveform& input, const Waveform& output,
                  double delta_eff, double t0) {
    if (input.grid != output.grid)
        throw std::invalid_argument("efficiency: waveforms on different grids");
    const EchoWindow w = echo_window(delta_eff, t0);
    const double in_energy = waveform_energy(input);
    if (!(in_energy > 0.0))
        throw std::invalid_argument("efficiency: input carries no energy");
    return window_energy(output, w.t1, w.t2) / in_energy;
}

std::optional<double> detect_echo(const Waveform& output, double t0, double guard) {
    const std::vector<double> inten = intensity(output);
    const double dt = output.grid.dt();
    const double t_start = t0 + guard;

    double reflected_peak = 0.0;
    std::size_t i0 = 0;
    for (std::size_t i = 0; i < inten.size(); ++i) {
        if (output.grid.time_at(i) <= t_start) {
            reflected_peak = std::max(reflected_peak, inten[i]);
            i0 = i;
        } else {
            break;
        }
    }

    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = std::max<std::size_t>(i0 + 1, 1); i + 1 < inten.size(); ++i) {
        if (inten[i] >= inten[i - 1] && inten[i] > inten[i + 1] && inten[i] > best) {
            best = inten[i];
            best_i = i;
        }
    }
    if (best_i == 0 || best < 0.01 * reflected_peak) return std::nullopt;

    // parabolic sub-sample refinement
    const double y0 = inten[best_i - 1], y1 = inten[best_i], y2 = inten[best_i + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    double shift = 0.0;
    if (denom < 0.0) shift = 0.5 * (y0 - y2) / denom;
    return output.grid.time_at(best_i) + shift * dt - t0;
}

}  // namespace iafc
