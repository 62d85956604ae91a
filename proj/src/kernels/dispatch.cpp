#include "iafc/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace iafc::kernels {

#if defined(IAFC_BUILD_AVX2)
const Dispatch* avx2_kernels_if_supported();
#endif
#if defined(IAFC_BUILD_NEON)
const Dispatch* neon_kernels();
#endif

std::vector<const Dispatch*> supported() {
    std::vector<const Dispatch*> sets{&scalar_kernels()};
#if defined(IAFC_BUILD_AVX2)
    if (const Dispatch* d = avx2_kernels_if_supported()) sets.push_back(d);
#endif
#if defined(IAFC_BUILD_NEON)
    sets.push_back(neon_kernels());
#endif
    return sets;
}

const Dispatch* find(std::string_view name) {
    for (const Dispatch* d : supported())
        if (name == d->name) return d;
    return nullptr;
}

const Dispatch& active() {
    static const Dispatch& chosen = []() -> const Dispatch& {
        if (const char* env = std::getenv("IAFC_KERNELS")) {
            const Dispatch* d = find(env);
            if (!d)
                throw std::runtime_error(std::string("IAFC_KERNELS=") + env +
                                         " is not available on this machine");
            return *d;
        }
        return *supported().back();
    }();
    return chosen;
}

}  // namespace iafc::kernels
