#include "iafc/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace iafc {
namespace {

// FFTW's planner is the only thread-unsafe piece; execution on distinct
// plans/buffers is fine. FFTW_ESTIMATE keeps planning deterministic (no
// timing-based algorithm choice).
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
};

struct Engine {
    std::unordered_map<size_t, PlanPair> plans;

    const PlanPair& get(size_t n) {
        auto it = plans.find(n);
        if (it == plans.end()) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            PlanPair p;
            p.buf = fftw_alloc_complex(n);
            if (!p.buf) throw std::bad_alloc();
            p.fwd = fftw_plan_dft_1d(int(n), p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
            p.bwd = fftw_plan_dft_1d(int(n), p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
            it = plans.emplace(n, p).first;
        }
        return it->second;
    }

    ~Engine() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        for (auto& [n, p] : plans) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
            fftw_free(p.buf);
        }
    }
};

thread_local Engine tl_engine;

void run(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         bool forward) {
    if (in.size() != out.size()) throw std::invalid_argument("fft: size mismatch");
    if (in.empty()) return;
    const PlanPair& p = tl_engine.get(in.size());
    // std::complex<double> and fftw_complex share layout per the FFTW manual.
    std::memcpy(p.buf, in.data(), in.size() * sizeof(fftw_complex));
    fftw_execute(forward ? p.fwd : p.bwd);
    // Cast: std::complex<double> is layout-compatible with double[2].
    std::memcpy(static_cast<void*>(out.data()), p.buf, in.size() * sizeof(fftw_complex));
    if (!forward) {
        const double scale = 1.0 / double(in.size());
        for (auto& z : out) z *= scale;
    }
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
    run(in, out, true);
}

void fft_inverse(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
    run(in, out, false);
}

}  // namespace iafc
