#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace iafc {

// A physical quantity as written ("300 MHz") plus its internal value
// (rad/s, s, T, m, m^3 as appropriate). The text round-trips bit-exactly.
struct Quantity {
    std::string text;
    double value = 0.0;
};

struct IdealCombConfig {
    int teeth = 0;
    Quantity spacing, tooth_width, g_eff;
};

struct AtomicCombConfig {
    std::string atom;
    Quantity field;
    std::string polarization = "sigma+";      // sigma+ | pi | sigma-
    std::optional<Quantity> carrier_offset;   // relative to the zero-field line; absent = auto
};

struct CavityConfig {
    Quantity kappa;
    std::optional<Quantity> detuning;     // default 0
    std::optional<Quantity> mode_volume;  // required for atomic combs
    std::optional<Quantity> wavelength;   // ideal combs only; default 420.3 nm
};

struct PulseConfig {
    std::optional<Quantity> center;          // default 2 ns
    std::optional<Quantity> spectral_width;  // absent or "auto" = optimise
};

struct GridSettings {
    std::optional<std::size_t> samples_cap;
    std::optional<double> periods;
    std::optional<double> tail_gammas;
};

struct SweepConfig {
    std::string parameter;
    Quantity min, max;
    int points = 2;
    bool log_scale = false;
    bool optimize_pulse = true;
};

struct OptimizeConfig {
    Quantity g_min, g_max, k_min, k_max;
    int coarse_points = 7;
    int refine_levels = 3;
};

struct AbsorptionConfig {
    std::optional<Quantity> span;  // full width; default from the comb
    int points = 4001;
};

struct RunConfig {
    std::string mode;  // comb | echo | absorption | sweep | optimize
    std::optional<IdealCombConfig> ideal;
    std::optional<AtomicCombConfig> atomic;
    CavityConfig cavity;
    PulseConfig pulse;
    GridSettings grid;
    std::optional<SweepConfig> sweep;
    std::optional<OptimizeConfig> optimize;
    std::optional<AbsorptionConfig> absorption;
    std::string output = "out";
    nlohmann::json raw;  // the document as parsed, for the manifest
};

// Strict JSON schema: unknown keys, missing keys, malformed quantities and
// contradictory comb sections all raise ConfigError naming the key.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& doc, const std::string& origin);

// FNV-1a over the canonical serialisation; stamped into every output file.
std::uint64_t config_hash(const RunConfig&);

}  // namespace iafc
