#include "iafc/atom_data.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "iafc/constants.hpp"
#include "iafc/errors.hpp"

namespace iafc {

double AtomSpec::omega0() const { return phys::two_pi * phys::c_light / wavelength; }

namespace {

struct FieldMap {
    std::map<std::string, std::string> kv;
    std::string where;

    const std::string& get(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ConfigError(where + ": missing field '" + key + "'");
        return it->second;
    }
};

HalfInt parse_half(const std::string& s, const std::string& where) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return HalfInt(std::stoi(s));
        if (s.substr(slash + 1) != "2")
            throw ConfigError(where + ": '" + s + "' is not a half-integer");
        return HalfInt::from_twice(std::stoi(s.substr(0, slash)));
    } catch (const std::invalid_argument&) {
        throw ConfigError(where + ": cannot parse '" + s + "' as a half-integer");
    }
}

double parse_num(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError(where + ": cannot parse '" + s + "' as a number");
    return v;
}

FieldMap parse_fields(std::istringstream& in, const std::string& where,
                      std::initializer_list<const char*> allowed) {
    FieldMap fm;
    fm.where = where;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(where + ": unknown field '" + key + "'");
        if (!fm.kv.emplace(key, tok.substr(eq + 1)).second)
            throw ConfigError(where + ": duplicate field '" + key + "'");
    }
    return fm;
}

}  // namespace

AtomDatabase AtomDatabase::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open atomic constants file '" + path + "'");

    std::map<std::string, Isotope> isotopes;
    std::map<std::string, std::map<std::string, FineLevel>> levels;  // isotope -> label

    AtomDatabase db;
    std::string line;
    int lineno = 0;
    std::vector<std::array<std::string, 6>> transitions;  // iso, g, e, lambda, d, gamma

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        const std::string where = path + ":" + std::to_string(lineno);

        if (kind == "isotope") {
            std::string name;
            if (!(ls >> name)) throw ConfigError(where + ": isotope needs a name");
            FieldMap f = parse_fields(ls, where, {"I", "gI"});
            Isotope iso;
            iso.name = name;
            iso.nuclear_spin = parse_half(f.get("I"), where);
            iso.g_i = parse_num(f.get("gI"), where);
            if (iso.nuclear_spin.twice() < 0)
                throw ConfigError(where + ": nuclear spin must be >= 0");
            if (!isotopes.emplace(name, iso).second)
                throw ConfigError(where + ": duplicate isotope '" + name + "'");
        } else if (kind == "level") {
            std::string iso, label;
            if (!(ls >> iso >> label))
                throw ConfigError(where + ": level needs isotope and label");
            FieldMap f = parse_fields(ls, where, {"J", "A_hf_MHz", "B_hf_MHz", "gJ"});
            FineLevel lvl;
            lvl.label = label;
            lvl.j = parse_half(f.get("J"), where);
            lvl.a_hf = parse_num(f.get("A_hf_MHz"), where) * 1e6;
            lvl.b_hf = parse_num(f.get("B_hf_MHz"), where) * 1e6;
            lvl.g_j = parse_num(f.get("gJ"), where);
            if (lvl.j.twice() <= 0)
                throw ConfigError(where + ": J must be positive");
            if (!levels[iso].emplace(label, lvl).second)
                throw ConfigError(where + ": duplicate level '" + label + "'");
        } else if (kind == "transition") {
            std::string iso, g, e;
            if (!(ls >> iso >> g >> e))
                throw ConfigError(where + ": transition needs isotope and two levels");
            FieldMap f = parse_fields(ls, where,
                                      {"lambda_nm", "reduced_dipole_Cm", "gamma_MHz"});
            transitions.push_back({iso, g, e, f.get("lambda_nm"),
                                   f.get("reduced_dipole_Cm"), f.get("gamma_MHz")});
            // validate numerics now so the line number is right
            parse_num(f.get("lambda_nm"), where);
            parse_num(f.get("reduced_dipole_Cm"), where);
            parse_num(f.get("gamma_MHz"), where);
        } else if (kind == "alias") {
            std::string from, to;
            if (!(ls >> from >> to))
                throw ConfigError(where + ": alias needs two names");
            db.aliases_[from] = to;
        } else {
            throw ConfigError(where + ": unknown record '" + kind + "'");
        }
    }

    for (const auto& t : transitions) {
        const std::string where = path + ": transition " + t[0];
        auto iso_it = isotopes.find(t[0]);
        if (iso_it == isotopes.end())
            throw ConfigError(where + ": unknown isotope '" + t[0] + "'");
        const auto& lvls = levels[t[0]];
        auto g_it = lvls.find(t[1]);
        auto e_it = lvls.find(t[2]);
        if (g_it == lvls.end() || e_it == lvls.end())
            throw ConfigError(where + ": transition references an undefined level");

        AtomSpec atom;
        atom.isotope = iso_it->second;
        atom.ground = g_it->second;
        atom.excited = e_it->second;
        atom.wavelength = parse_num(t[3], where) * 1e-9;
        atom.reduced_dipole = parse_num(t[4], where);
        atom.gamma = parse_num(t[5], where) * 1e6 * phys::two_pi;
        if (!(atom.wavelength > 0.0) || !(atom.reduced_dipole > 0.0) || !(atom.gamma > 0.0))
            throw ConfigError(where + ": wavelength, dipole and gamma must be positive");

        // quadrupole constant is only meaningful for J > 1/2 and I > 1/2
        for (const FineLevel* lvl : {&atom.ground, &atom.excited}) {
            if (lvl->b_hf != 0.0 &&
                (lvl->j.twice() <= 1 || atom.isotope.nuclear_spin.twice() <= 1))
                throw ConfigError(where + ": level " + lvl->label +
                                  " has B_hf but no quadrupole moment (J or I <= 1/2)");
        }

        if (!db.atoms_.emplace(t[0], atom).second)
            throw ConfigError(where + ": isotope '" + t[0] + "' already has a transition");
    }

    if (db.atoms_.empty()) throw ConfigError(path + ": no transitions defined");
    return db;
}

AtomDatabase AtomDatabase::load_default() {
    if (const char* env = std::getenv("IAFC_ATOMIC_DATA")) return load(env);
    return load("data/atomic_constants.dat");
}

const AtomSpec& AtomDatabase::find(const std::string& name) const {
    std::string key = name;
    auto alias = aliases_.find(key);
    if (alias != aliases_.end()) key = alias->second;
    auto it = atoms_.find(key);
    if (it == atoms_.end()) {
        std::string known;
        for (const auto& [n, a] : atoms_) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown atom '" + name + "' (available: " + known + ")");
    }
    return it->second;
}

std::vector<std::string> AtomDatabase::names() const {
    std::vector<std::string> out;
    for (const auto& [n, a] : atoms_) out.push_back(n);
    return out;
}

}  // namespace iafc
