#pragma once

// CODATA 2018. Internally every frequency-like quantity is angular (rad/s);
// values quoted in Hz by configs or data files are multiplied by 2*pi on the
// way in and divided on the way out.
namespace iafc::phys {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double c_light = 299792458.0;        // m/s
inline constexpr double h_planck = 6.62607015e-34;    // J s
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double mu_bohr = 9.2740100783e-24;   // J/T
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double a0_bohr = 5.29177210903e-11;  // m
inline constexpr double ea0 = e_charge * a0_bohr;     // C m, atomic dipole unit

// Bohr magneton over Planck constant, ~13.996 GHz/T.
inline constexpr double mu_bohr_hz_per_t = mu_bohr / h_planck;

}  // namespace iafc::phys
