#pragma once

#include <map>
#include <string>
#include <vector>

#include "iafc/half_int.hpp"

namespace iafc {

struct Isotope {
    std::string name;      // e.g. "Rb87"
    HalfInt nuclear_spin;  // I
    double g_i = 0.0;      // nuclear g-factor on the Bohr-magneton scale
};

struct FineLevel {
    std::string label;  // e.g. "5s1/2"
    HalfInt j;
    double a_hf = 0.0;  // magnetic-dipole hyperfine constant, Hz
    double b_hf = 0.0;  // electric-quadrupole constant, Hz (0 unless J > 1/2 and I > 1/2)
    double g_j = 0.0;
};

struct AtomSpec {
    Isotope isotope;
    FineLevel ground;
    FineLevel excited;
    double reduced_dipole = 0.0;  // |<Je||d||Jg>|, C m
    double wavelength = 0.0;      // vacuum, m
    double gamma = 0.0;           // excited-state decay rate, rad/s

    double omega0() const;  // 2 pi c / wavelength
    std::string name() const { return isotope.name; }
};

// Line-oriented constants file: "isotope", "level" and "transition" records
// with key=value fields, '#' comments. See data/atomic_constants.dat.
class AtomDatabase {
public:
    static AtomDatabase load(const std::string& path);

    // $IAFC_ATOMIC_DATA when set, otherwise ./data/atomic_constants.dat.
    static AtomDatabase load_default();

    // Accepts aliases ("Rb" -> "Rb87", "Cs" -> "Cs133"); throws ConfigError.
    const AtomSpec& find(const std::string& name) const;

    std::vector<std::string> names() const;

private:
    std::map<std::string, AtomSpec> atoms_;
    std::map<std::string, std::string> aliases_;
};

}  // namespace iafc
