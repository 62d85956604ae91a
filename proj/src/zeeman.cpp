#include "iafc/zeeman.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "iafc/constants.hpp"
#include "iafc/wigner.hpp"

namespace iafc {
namespace {

std::vector<std::pair<HalfInt, HalfInt>> product_basis(HalfInt i_spin, HalfInt j) {
    std::vector<std::pair<HalfInt, HalfInt>> basis;
    basis.reserve(size_t(multiplicity(i_spin)) * size_t(multiplicity(j)));
    for (int mi = -i_spin.twice(); mi <= i_spin.twice(); mi += 2)
        for (int mj = -j.twice(); mj <= j.twice(); mj += 2)
            basis.emplace_back(half(mi), half(mj));
    return basis;
}

// I.J = Iz Jz + (I+ J- + I- J+)/2 on the product basis.
Eigen::MatrixXd idotj_matrix(HalfInt i_spin, HalfInt j) {
    const auto basis = product_basis(i_spin, j);
    const int dim = int(basis.size());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);

    auto ladder = [](HalfInt jq, HalfInt m, int sign) {
        // <j, m+sign| J+- |j, m> = sqrt(j(j+1) - m(m+sign))
        const double jv = jq.value(), mv = m.value();
        return std::sqrt(jv * (jv + 1.0) - mv * (mv + sign));
    };

    for (int col = 0; col < dim; ++col) {
        const auto [mi, mj] = basis[col];
        k(col, col) += mi.value() * mj.value();
        // I+ J- : mi -> mi+1, mj -> mj-1
        if (mi.twice() + 2 <= i_spin.twice() && mj.twice() - 2 >= -j.twice()) {
            const int row = col + multiplicity(j) - 1;
            k(row, col) += 0.5 * ladder(i_spin, mi, +1) * ladder(j, mj, -1);
        }
        // I- J+ : mi -> mi-1, mj -> mj+1
        if (mi.twice() - 2 >= -i_spin.twice() && mj.twice() + 2 <= j.twice()) {
            const int row = col - multiplicity(j) + 1;
            k(row, col) += 0.5 * ladder(i_spin, mi, -1) * ladder(j, mj, +1);
        }
    }
    return k;
}

}  // namespace

Eigen::MatrixXd hyperfine_zeeman_matrix(const FineLevel& level, const Isotope& iso,
                                        double b_field) {
    if (b_field < 0.0)
        throw std::invalid_argument("zeeman: magnetic field must be >= 0");

    const HalfInt i_spin = iso.nuclear_spin;
    const HalfInt j = level.j;
    const auto basis = product_basis(i_spin, j);
    const int dim = int(basis.size());

    const Eigen::MatrixXd k = idotj_matrix(i_spin, j);
    Eigen::MatrixXd h = level.a_hf * k;

    if (level.b_hf != 0.0 && j.twice() > 1 && i_spin.twice() > 1) {
        const double iv = i_spin.value(), jv = j.value();
        const double denom = 2.0 * iv * (2.0 * iv - 1.0) * jv * (2.0 * jv - 1.0);
        Eigen::MatrixXd quad = 3.0 * k * k + 1.5 * k;
        quad.diagonal().array() -= iv * (iv + 1.0) * jv * (jv + 1.0);
        h += (level.b_hf / denom) * quad;
    }

    const double zeeman = phys::mu_bohr_hz_per_t * b_field;
    for (int n = 0; n < dim; ++n) {
        const auto [mi, mj] = basis[n];
        h(n, n) += zeeman * (level.g_j * mj.value() + iso.g_i * mi.value());
    }
    return h;
}

ZeemanEigensystem eigensystem(const Eigen::MatrixXd& h,
                              const FineLevel& level, const Isotope& iso) {
    const auto basis = product_basis(iso.nuclear_spin, level.j);
    if (h.rows() != h.cols() || h.rows() != int(basis.size()))
        throw std::invalid_argument("eigensystem: matrix does not match the basis");

    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("eigensystem: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (h + h.transpose()));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensystem: eigensolver failed to converge");

    ZeemanEigensystem sys;
    sys.energies = solver.eigenvalues();
    sys.states = solver.eigenvectors();
    sys.basis = basis;

    // Fix phases: the largest-magnitude component of each state is positive.
    for (int c = 0; c < sys.states.cols(); ++c) {
        int imax = 0;
        sys.states.col(c).cwiseAbs().maxCoeff(&imax);
        if (sys.states(imax, c) < 0.0) sys.states.col(c) = -sys.states.col(c);
    }
    return sys;
}

ZeemanEigensystem level_eigensystem(const FineLevel& level, const Isotope& iso,
                                    double b_field) {
    return eigensystem(hyperfine_zeeman_matrix(level, iso, b_field), level, iso);
}

double transition_dipole(const ZeemanEigensystem& ground, int g_index,
                         const ZeemanEigensystem& excited, int e_index,
                         int q, const AtomSpec& atom) {
    if (q < -1 || q > 1)
        throw std::invalid_argument("transition_dipole: q must be -1, 0 or +1");
    if (g_index < 0 || g_index >= ground.states.cols() ||
        e_index < 0 || e_index >= excited.states.cols())
        throw std::invalid_argument("transition_dipole: state index out of range");

    const HalfInt jg = atom.ground.j, je = atom.excited.j;
    const HalfInt qq = HalfInt(q);
    const int nje = multiplicity(je);

    double amp = 0.0;
    for (int bg = 0; bg < int(ground.basis.size()); ++bg) {
        const double cg = ground.states(bg, g_index);
        if (cg == 0.0) continue;
        const auto [mi, mjg] = ground.basis[bg];
        const HalfInt mje = mjg + qq;
        if (mje.twice() < -je.twice() || mje.twice() > je.twice()) continue;
        // excited basis row for (mi, mje)
        const int be = (mi.twice() + atom.isotope.nuclear_spin.twice()) / 2 * nje +
                       (mje.twice() + je.twice()) / 2;
        const double ce = excited.states(be, e_index);
        if (ce == 0.0) continue;
        // <Je mje|d_q|Jg mjg> = <Je||d||Jg> (-1)^(Je-mje) (Je 1 Jg; -mje q mjg)
        const int sign = ((je - mje).twice() / 2) % 2 == 0 ? 1 : -1;
        amp += ce * cg * sign * wigner3j(je, HalfInt(1), jg, -mje, qq, mjg);
    }
    return atom.reduced_dipole * amp;
}

namespace {

struct RawLine {
    double detuning_from_omega0;  // rad/s
    double dipole;                // C m
    int ground_index, excited_index;
};

std::vector<RawLine> raw_lines(const AtomSpec& atom, double b_field, int q) {
    const ZeemanEigensystem g = level_eigensystem(atom.ground, atom.isotope, b_field);
    const ZeemanEigensystem e = level_eigensystem(atom.excited, atom.isotope, b_field);

    std::vector<RawLine> lines;
    double max_d2 = 0.0;
    for (int m = 0; m < g.energies.size(); ++m) {
        for (int n = 0; n < e.energies.size(); ++n) {
            const double d = transition_dipole(g, m, e, n, q, atom);
            if (d == 0.0) continue;
            RawLine l;
            l.detuning_from_omega0 = phys::two_pi * (e.energies(n) - g.energies(m));
            l.dipole = std::abs(d);
            l.ground_index = m;
            l.excited_index = n;
            lines.push_back(l);
            max_d2 = std::max(max_d2, d * d);
        }
    }
    // drop numerically negligible lines
    std::erase_if(lines, [&](const RawLine& l) {
        return l.dipole * l.dipole < 1e-6 * max_d2;
    });
    return lines;
}

}  // namespace

double comb_carrier_auto(const AtomSpec& atom, double b_field, int q) {
    const auto lines = raw_lines(atom, b_field, q);
    if (lines.empty())
        throw std::invalid_argument("atomic comb: no dipole-allowed transitions");
    double wsum = 0.0, wpos = 0.0;
    for (const RawLine& l : lines) {
        const double w = l.dipole * l.dipole;  // populations are uniform
        wsum += w;
        wpos += w * l.detuning_from_omega0;
    }
    return atom.omega0() + wpos / wsum;
}

FrequencyComb build_atomic_comb(const AtomSpec& atom, double b_field, int q,
                                const CavityParams& cav, double carrier) {
    if (!(cav.mode_volume > 0.0))
        throw std::invalid_argument("atomic comb: cavity mode volume must be positive");
    const auto lines = raw_lines(atom, b_field, q);
    if (lines.empty())
        throw std::invalid_argument("atomic comb: no dipole-allowed transitions");

    const double omega_c = cav.omega_c > 0.0 ? cav.omega_c : atom.omega0();
    const double field_scale =
        std::sqrt(phys::hbar * omega_c / (2.0 * phys::eps0 * cav.mode_volume)) / phys::hbar;
    const int n_ground =
        multiplicity(atom.isotope.nuclear_spin) * multiplicity(atom.ground.j);

    // Uniform populations 1/N_ground only account for everything when every
    // ground sublevel couples; a dark sublevel would silently break the
    // population normalisation, so reject it loudly.
    std::set<int> grounds;
    for (const RawLine& l : lines) grounds.insert(l.ground_index);
    if (int(grounds.size()) != n_ground)
        throw std::invalid_argument(
            "atomic comb: " + std::to_string(n_ground - int(grounds.size())) +
            " ground sublevel(s) have no dipole-allowed line for this polarisation");

    FrequencyComb comb;
    comb.gamma = atom.gamma;
    comb.label = atom.name() + " B=" + std::to_string(b_field) + "T q=" + std::to_string(q);
    comb.teeth.reserve(lines.size());
    for (const RawLine& l : lines) {
        CombTooth t;
        t.detuning = l.detuning_from_omega0 + atom.omega0() - carrier;
        t.coupling = l.dipole * field_scale;
        t.population = 1.0 / double(n_ground);
        t.ground_index = l.ground_index;
        t.excited_index = l.excited_index;
        comb.teeth.push_back(t);
    }
    std::sort(comb.teeth.begin(), comb.teeth.end(),
              [](const CombTooth& a, const CombTooth& b) { return a.detuning < b.detuning; });
    return comb;
}

}  // namespace iafc
