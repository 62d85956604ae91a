#pragma once

#include <optional>
#include <string>

#include "iafc/config.hpp"

namespace iafc {

struct RunOptions {
    std::string output_override;  // --out
    int workers = 1;
    std::optional<std::size_t> samples_cap;  // --samples-cap
    std::string atomic_data_path;            // empty: $IAFC_ATOMIC_DATA or default
};

// Executes cfg.mode and writes its artifacts plus manifest.json into the
// output directory. Holds a .lock file for the duration; partial outputs are
// removed if the run throws.
void run(const RunConfig& cfg, const RunOptions& opts);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace iafc
