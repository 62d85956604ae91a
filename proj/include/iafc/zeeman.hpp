#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "iafc/atom_data.hpp"
#include "iafc/cavity.hpp"
#include "iafc/comb.hpp"

namespace iafc {

// Hyperfine + Zeeman Hamiltonian H/h in Hz on the |m_I, m_J> product basis
// (m_I outer, m_J inner, both ascending):
//   A (I.J) + B [3(I.J)^2 + 3/2 (I.J) - I(I+1)J(J+1)] / (2I(2I-1)J(2J-1))
//   + mu_B B_z (gJ m_J + gI m_I) / h
// The quadrupole term is skipped when J = 1/2 or I <= 1/2. B_z >= 0.
Eigen::MatrixXd hyperfine_zeeman_matrix(const FineLevel&, const Isotope&,
                                        double b_field);

struct ZeemanEigensystem {
    Eigen::VectorXd energies;  // Hz, ascending
    Eigen::MatrixXd states;    // column k: eigenvector, largest component positive
    std::vector<std::pair<HalfInt, HalfInt>> basis;  // (m_I, m_J) per row
};

// Dense symmetric eigensolve; rejects matrices that are not symmetric to
// 1e-10 (relative to the largest element).
ZeemanEigensystem eigensystem(const Eigen::MatrixXd& h,
                              const FineLevel&, const Isotope&);

ZeemanEigensystem level_eigensystem(const FineLevel&, const Isotope&, double b_field);

// <e_n| d_q |g_m> by Wigner-Eckart on the electronic part; m_I is a
// spectator. q in {-1, 0, +1}. Real because both eigenbases are real.
double transition_dipole(const ZeemanEigensystem& ground, int g_index,
                         const ZeemanEigensystem& excited, int e_index,
                         int q, const AtomSpec&);

// Carrier (absolute, rad/s) that puts the coupling-power-weighted comb
// centre at zero detuning.
double comb_carrier_auto(const AtomSpec&, double b_field, int q);

// One tooth per dipole-allowed pair with |d|^2 >= 1e-6 of the strongest;
// populations 1/N_ground (unpolarised atom), linewidth = atom gamma,
// couplings g = (d/hbar) sqrt(hbar w_c / (2 eps0 V)).
FrequencyComb build_atomic_comb(const AtomSpec&, double b_field, int q,
                                const CavityParams&, double carrier);

}  // namespace iafc
