#include "iafc/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "iafc/constants.hpp"
#include "iafc/errors.hpp"

namespace iafc {
namespace {

using nlohmann::json;

enum class Dim { Frequency, Time, Field, Length, Volume, Plain };

double unit_factor(const std::string& unit, Dim dim, const std::string& key) {
    struct Entry {
        const char* name;
        double factor;
    };
    // frequencies turn angular on the way in
    static const Entry freq[] = {{"Hz", phys::two_pi},   {"kHz", 2 * 1e3 * phys::pi},
                                 {"MHz", 2 * 1e6 * phys::pi}, {"GHz", 2 * 1e9 * phys::pi},
                                 {"THz", 2 * 1e12 * phys::pi}};
    static const Entry time[] = {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}};
    static const Entry field[] = {{"T", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}, {"G", 1e-4}};
    static const Entry length[] = {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    static const Entry volume[] = {{"m^3", 1.0}, {"mm^3", 1e-9}, {"um^3", 1e-18}, {"nm^3", 1e-27}};

    auto lookup = [&](const Entry* table, size_t n) -> double {
        for (size_t i = 0; i < n; ++i)
            if (unit == table[i].name) return table[i].factor;
        return 0.0;
    };

    double f = 0.0;
    const char* expected = "";
    switch (dim) {
        case Dim::Frequency: f = lookup(freq, std::size(freq)); expected = "Hz/kHz/MHz/GHz/THz"; break;
        case Dim::Time: f = lookup(time, std::size(time)); expected = "s/ms/us/ns/ps"; break;
        case Dim::Field: f = lookup(field, std::size(field)); expected = "T/mT/uT/G"; break;
        case Dim::Length: f = lookup(length, std::size(length)); expected = "m/mm/um/nm"; break;
        case Dim::Volume: f = lookup(volume, std::size(volume)); expected = "m^3/mm^3/um^3/nm^3"; break;
        case Dim::Plain: break;
    }
    if (f == 0.0)
        throw ConfigError("key '" + key + "': unit '" + unit + "' does not match (expected " +
                          expected + ")");
    return f;
}

Quantity parse_quantity(const json& v, Dim dim, const std::string& key) {
    if (dim == Dim::Plain) {
        if (!v.is_number())
            throw ConfigError("key '" + key + "': expected a plain number");
        Quantity q;
        q.value = v.get<double>();
        q.text = v.dump();
        return q;
    }
    if (!v.is_string())
        throw ConfigError("key '" + key + "': expected a quoted \"<number> <unit>\" string");
    const std::string s = v.get<std::string>();
    const auto space = s.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 >= s.size())
        throw ConfigError("key '" + key + "': '" + s + "' is not \"<number> <unit>\"");
    const std::string num = s.substr(0, space);
    const std::string unit = s.substr(space + 1);
    char* end = nullptr;
    const double x = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse number '" + num + "'");

    Quantity q;
    q.text = s;
    q.value = x * unit_factor(unit, dim, key);
    return q;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + k + "'");
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing key '" + key + "'");
    return *it;
}

Dim sweep_dim(const std::string& parameter) {
    if (parameter == "finesse") return Dim::Plain;
    if (parameter == "b_field") return Dim::Field;
    return Dim::Frequency;  // g_eff, kappa, delta_c, pulse_width
}

RunConfig parse_config_impl(const json& doc, const std::string& origin) {
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    check_keys(doc, origin,
               {"mode", "comb", "cavity", "pulse", "grid", "sweep", "optimize",
                "absorption", "output"});

    RunConfig cfg;
    cfg.raw = doc;

    if (doc.contains("mode")) {
        cfg.mode = doc["mode"].get<std::string>();
        if (cfg.mode != "comb" && cfg.mode != "echo" && cfg.mode != "absorption" &&
            cfg.mode != "sweep" && cfg.mode != "optimize")
            throw ConfigError(origin + ": unknown mode '" + cfg.mode + "'");
    }

    const json& comb = require(doc, origin, "comb");
    check_keys(comb, origin + ".comb", {"ideal", "atomic"});
    if (comb.contains("ideal") && comb.contains("atomic"))
        throw ConfigError(origin +
                          ".comb: keys 'ideal' and 'atomic' are mutually exclusive; "
                          "keep exactly one");
    if (!comb.contains("ideal") && !comb.contains("atomic"))
        throw ConfigError(origin + ".comb: needs either 'ideal' or 'atomic'");

    if (comb.contains("ideal")) {
        const json& c = comb["ideal"];
        check_keys(c, origin + ".comb.ideal", {"teeth", "spacing", "tooth_width", "g_eff"});
        IdealCombConfig ic;
        ic.teeth = require(c, origin + ".comb.ideal", "teeth").get<int>();
        ic.spacing = parse_quantity(require(c, origin + ".comb.ideal", "spacing"),
                                    Dim::Frequency, "comb.ideal.spacing");
        ic.tooth_width = parse_quantity(require(c, origin + ".comb.ideal", "tooth_width"),
                                        Dim::Frequency, "comb.ideal.tooth_width");
        ic.g_eff = parse_quantity(require(c, origin + ".comb.ideal", "g_eff"),
                                  Dim::Frequency, "comb.ideal.g_eff");
        cfg.ideal = ic;
    } else {
        const json& c = comb["atomic"];
        check_keys(c, origin + ".comb.atomic", {"atom", "field", "polarization", "carrier"});
        AtomicCombConfig ac;
        ac.atom = require(c, origin + ".comb.atomic", "atom").get<std::string>();
        ac.field = parse_quantity(require(c, origin + ".comb.atomic", "field"), Dim::Field,
                                  "comb.atomic.field");
        if (c.contains("polarization")) {
            ac.polarization = c["polarization"].get<std::string>();
            if (ac.polarization != "sigma+" && ac.polarization != "pi" &&
                ac.polarization != "sigma-")
                throw ConfigError("comb.atomic.polarization: '" + ac.polarization +
                                  "' is not sigma+/pi/sigma-");
        }
        if (c.contains("carrier") && c["carrier"] != json("auto"))
            ac.carrier_offset =
                parse_quantity(c["carrier"], Dim::Frequency, "comb.atomic.carrier");
        cfg.atomic = ac;
    }

    const json& cav = require(doc, origin, "cavity");
    check_keys(cav, origin + ".cavity", {"kappa", "detuning", "mode_volume", "wavelength"});
    cfg.cavity.kappa =
        parse_quantity(require(cav, origin + ".cavity", "kappa"), Dim::Frequency, "cavity.kappa");
    if (cav.contains("detuning"))
        cfg.cavity.detuning = parse_quantity(cav["detuning"], Dim::Frequency, "cavity.detuning");
    if (cav.contains("mode_volume"))
        cfg.cavity.mode_volume =
            parse_quantity(cav["mode_volume"], Dim::Volume, "cavity.mode_volume");
    if (cav.contains("wavelength"))
        cfg.cavity.wavelength =
            parse_quantity(cav["wavelength"], Dim::Length, "cavity.wavelength");

    if (doc.contains("pulse")) {
        const json& p = doc["pulse"];
        check_keys(p, origin + ".pulse", {"center", "spectral_width"});
        if (p.contains("center"))
            cfg.pulse.center = parse_quantity(p["center"], Dim::Time, "pulse.center");
        if (p.contains("spectral_width") && p["spectral_width"] != json("auto"))
            cfg.pulse.spectral_width =
                parse_quantity(p["spectral_width"], Dim::Frequency, "pulse.spectral_width");
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        check_keys(g, origin + ".grid", {"samples_cap", "periods", "tail_gammas"});
        if (g.contains("samples_cap")) cfg.grid.samples_cap = g["samples_cap"].get<std::size_t>();
        if (g.contains("periods")) cfg.grid.periods = g["periods"].get<double>();
        if (g.contains("tail_gammas")) cfg.grid.tail_gammas = g["tail_gammas"].get<double>();
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        check_keys(s, origin + ".sweep",
                   {"parameter", "min", "max", "points", "scale", "optimize_pulse"});
        SweepConfig sc;
        sc.parameter = require(s, origin + ".sweep", "parameter").get<std::string>();
        const Dim dim = sweep_dim(sc.parameter);
        sc.min = parse_quantity(require(s, origin + ".sweep", "min"), dim, "sweep.min");
        sc.max = parse_quantity(require(s, origin + ".sweep", "max"), dim, "sweep.max");
        sc.points = require(s, origin + ".sweep", "points").get<int>();
        if (s.contains("scale")) {
            const std::string scale = s["scale"].get<std::string>();
            if (scale != "linear" && scale != "log")
                throw ConfigError("sweep.scale: '" + scale + "' is not linear/log");
            sc.log_scale = scale == "log";
        }
        if (s.contains("optimize_pulse")) sc.optimize_pulse = s["optimize_pulse"].get<bool>();
        cfg.sweep = sc;
    }

    if (doc.contains("optimize")) {
        const json& o = doc["optimize"];
        check_keys(o, origin + ".optimize",
                   {"g_eff", "kappa", "coarse_points", "refine_levels"});
        OptimizeConfig oc;
        const json& g = require(o, origin + ".optimize", "g_eff");
        check_keys(g, origin + ".optimize.g_eff", {"min", "max"});
        oc.g_min = parse_quantity(require(g, origin + ".optimize.g_eff", "min"),
                                  Dim::Frequency, "optimize.g_eff.min");
        oc.g_max = parse_quantity(require(g, origin + ".optimize.g_eff", "max"),
                                  Dim::Frequency, "optimize.g_eff.max");
        const json& k = require(o, origin + ".optimize", "kappa");
        check_keys(k, origin + ".optimize.kappa", {"min", "max"});
        oc.k_min = parse_quantity(require(k, origin + ".optimize.kappa", "min"),
                                  Dim::Frequency, "optimize.kappa.min");
        oc.k_max = parse_quantity(require(k, origin + ".optimize.kappa", "max"),
                                  Dim::Frequency, "optimize.kappa.max");
        if (o.contains("coarse_points")) oc.coarse_points = o["coarse_points"].get<int>();
        if (o.contains("refine_levels")) oc.refine_levels = o["refine_levels"].get<int>();
        cfg.optimize = oc;
    }

    if (doc.contains("absorption")) {
        const json& a = doc["absorption"];
        check_keys(a, origin + ".absorption", {"span", "points"});
        AbsorptionConfig ac;
        if (a.contains("span"))
            ac.span = parse_quantity(a["span"], Dim::Frequency, "absorption.span");
        if (a.contains("points")) ac.points = a["points"].get<int>();
        cfg.absorption = ac;
    }

    if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
    return cfg;
}

}  // namespace

RunConfig parse_config(const json& doc, const std::string& origin) {
    try {
        return parse_config_impl(doc, origin);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(doc, path);
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string canon = cfg.raw.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace iafc
