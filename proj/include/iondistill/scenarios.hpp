#pragma once
// The four laser-configurable vibronic couplings Omega and the motional
// state families they distill: angular momentum eigenstates, rotated Fock
// states, and the cat targets.
//
// Every scenario carries a basis padded by two quanta beyond the user-facing
// bound N_use: Omega*Omega^dag raises by two before lowering, so matrix
// elements on states with N_T <= N_use are exact and results are read off the
// interior basis.

#include <string>

#include "iondistill/ladder_ops.hpp"
#include "iondistill/spectral.hpp"
#include "iondistill/su2.hpp"

namespace iondistill {

inline constexpr int kTruncationMargin = 2;

enum class CouplingKind { Qnd, BlueSideband, SecondRed2d, SecondRed3d };

inline const char* coupling_name(CouplingKind k) {
    switch (k) {
        case CouplingKind::Qnd: return "qnd";
        case CouplingKind::BlueSideband: return "blue_sideband";
        case CouplingKind::SecondRed2d: return "second_red_2d";
        case CouplingKind::SecondRed3d: return "second_red_3d";
    }
    return "?";
}

class CouplingScenario {
public:
    static CouplingScenario qnd(double eta, int n_use, int mode = 0) {
        if (eta <= 0.0) throw std::invalid_argument("CouplingScenario: Lamb-Dicke eta must be positive");
        return {CouplingKind::Qnd, eta, mode, n_use};
    }
    static CouplingScenario blue_sideband(int n_use, int mode = 0) {
        return {CouplingKind::BlueSideband, 0.0, mode, n_use};
    }
    static CouplingScenario second_red_2d(int n_use) {
        return {CouplingKind::SecondRed2d, 0.0, 0, n_use};
    }
    static CouplingScenario second_red_3d(int n_use) {
        return {CouplingKind::SecondRed3d, 0.0, 0, n_use};
    }

    CouplingKind kind() const { return kind_; }
    double eta() const { return eta_; }
    int mode() const { return mode_; }
    int n_use() const { return n_use_; }
    int n_modes() const { return interior_->n_modes(); }
    const std::shared_ptr<const FockBasis>& padded_basis() const { return padded_; }
    const std::shared_ptr<const FockBasis>& interior_basis() const { return interior_; }
    std::string name() const { return coupling_name(kind_); }

private:
    CouplingScenario(CouplingKind kind, double eta, int mode, int n_use)
        : kind_(kind), eta_(eta), mode_(mode), n_use_(n_use) {
        if (n_use < 0) throw std::invalid_argument("CouplingScenario: N_use must be >= 0");
        const bool single = (kind == CouplingKind::Qnd || kind == CouplingKind::BlueSideband);
        const int modes = single ? 1 : (kind == CouplingKind::SecondRed2d ? 2 : 3);
        if (mode < 0 || mode >= modes)
            throw std::invalid_argument("CouplingScenario: mode index incompatible with coupling kind");
        if (single) {
            padded_ = FockBasis::build(1, Truncation::per_mode(n_use + kTruncationMargin));
            interior_ = FockBasis::build(1, Truncation::per_mode(n_use));
        } else {
            padded_ = FockBasis::build(modes, Truncation::total_excitation(n_use + kTruncationMargin));
            interior_ = FockBasis::build(modes, Truncation::total_excitation(n_use));
        }
    }

    CouplingKind kind_;
    double eta_;
    int mode_;
    int n_use_;
    std::shared_ptr<const FockBasis> padded_;
    std::shared_ptr<const FockBasis> interior_;
};

// f(n, eta) = exp(-eta^2/2) L_n(eta^2) via the three-term Laguerre recurrence.
inline double laguerre_f(int n, double eta) {
    if (n < 0) throw std::invalid_argument("laguerre_f: n must be >= 0");
    const double x = eta * eta;
    double prev = 1.0;
    double cur = 1.0 - x;
    if (n == 0) cur = 1.0;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return std::exp(-x / 2.0) * cur;
}

// Omega on the padded basis of the scenario.
inline Operator coupling_omega(const CouplingScenario& sc) {
    const auto& b = sc.padded_basis();
    switch (sc.kind()) {
        case CouplingKind::Qnd: {
            std::vector<double> d(static_cast<std::size_t>(b->dim()));
            for (int i = 0; i < b->dim(); ++i)
                d[static_cast<std::size_t>(i)] =
                    laguerre_f(b->occupation(i)[static_cast<std::size_t>(sc.mode())], sc.eta());
            return Operator::diagonal(b, d);
        }
        case CouplingKind::BlueSideband:
            return creation(b, sc.mode());
        case CouplingKind::SecondRed2d: {
            const Operator ax = annihilation(b, 0), ay = annihilation(b, 1);
            return ax * ax + ay * ay;
        }
        case CouplingKind::SecondRed3d: {
            const Operator ax = annihilation(b, 0), ay = annihilation(b, 1), az = annihilation(b, 2);
            return ax * ax + ay * ay + az * az;
        }
    }
    throw std::logic_error("coupling_omega: unreachable");
}

namespace detail {

// Exact in-sector action of L_l = i [ a_j a_k^dag - a_k a_j^dag ].  N_T is
// conserved term by term, so no truncation margin is needed as long as the
// basis admits the whole sector.
inline StateVector apply_angular(const StateVector& v, int mode_j, int mode_k) {
    const auto& basis = v.basis();
    std::vector<Complex> out(static_cast<std::size_t>(basis->dim()));
    const Complex i_unit{0.0, 1.0};
    for (int idx = 0; idx < basis->dim(); ++idx) {
        const Complex c = v.amplitude(idx);
        if (c == Complex{}) continue;
        Occupation occ = basis->occupation(idx);
        const int nj = occ[static_cast<std::size_t>(mode_j)];
        const int nk = occ[static_cast<std::size_t>(mode_k)];
        if (nj > 0) {  // a_j a_k^dag
            occ[static_cast<std::size_t>(mode_j)] = nj - 1;
            occ[static_cast<std::size_t>(mode_k)] = nk + 1;
            if (auto tgt = basis->find(occ))
                out[static_cast<std::size_t>(*tgt)] += i_unit * std::sqrt(double(nj) * double(nk + 1)) * c;
            occ[static_cast<std::size_t>(mode_j)] = nj;
            occ[static_cast<std::size_t>(mode_k)] = nk;
        }
        if (nk > 0) {  // - a_k a_j^dag
            occ[static_cast<std::size_t>(mode_j)] = nj + 1;
            occ[static_cast<std::size_t>(mode_k)] = nk - 1;
            if (auto tgt = basis->find(occ))
                out[static_cast<std::size_t>(*tgt)] -= i_unit * std::sqrt(double(nk) * double(nj + 1)) * c;
            occ[static_cast<std::size_t>(mode_j)] = nj;
            occ[static_cast<std::size_t>(mode_k)] = nk;
        }
    }
    return {basis, std::move(out)};
}

inline StateVector apply_lz(const StateVector& v) { return apply_angular(v, 0, 1); }

inline void require_full_sector(const std::shared_ptr<const FockBasis>& basis, int n_total,
                                const char* who) {
    if (n_total < 0) throw std::invalid_argument(std::string(who) + ": n_total must be >= 0");
    if (basis->n_modes() == 2) {
        for (int k = 0; k <= n_total; ++k)
            if (!basis->truncation().admits({n_total - k, k}))
                throw std::invalid_argument(std::string(who) + ": truncation too small for the sector");
        return;
    }
    for (int nx = 0; nx <= n_total; ++nx)
        for (int ny = 0; ny + nx <= n_total; ++ny)
            if (!basis->truncation().admits({nx, ny, n_total - nx - ny}))
                throw std::invalid_argument(std::string(who) + ": truncation too small for the sector");
}

}  // namespace detail

// |n_T, m> built from circular quanta: a_+ = (a_x - i a_y)/sqrt(2) carries
// m = +1, so the state has n_± = (n_T ± m)/2 quanta in a_±.  This convention
// gives L_z = N_+ - N_- and matches su2_state(mu = +i) with global phase one.
inline StateVector angular_eigenstate_2d(int n_total, int m, std::shared_ptr<const FockBasis> basis) {
    if (basis->n_modes() != 2)
        throw std::invalid_argument("angular_eigenstate_2d: basis must have 2 modes");
    if (std::abs(m) > n_total || ((n_total - m) % 2) != 0)
        throw std::invalid_argument(
            "angular_eigenstate_2d: need |m| <= n_T and m = n_T (mod 2)");
    detail::require_full_sector(basis, n_total, "angular_eigenstate_2d");

    const int n_plus = (n_total + m) / 2;
    const int n_minus = (n_total - m) / 2;
    const Operator adx = creation(basis, 0);
    const Operator ady = creation(basis, 1);
    const Complex i_unit{0.0, 1.0};
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const Operator a_plus_dag = inv_sqrt2 * (adx + i_unit * ady);
    const Operator a_minus_dag = inv_sqrt2 * (adx - i_unit * ady);

    StateVector v = fock_state(basis, {0, 0});
    for (int k = 0; k < n_plus; ++k) v = a_plus_dag.apply(v);
    for (int k = 0; k < n_minus; ++k) v = a_minus_dag.apply(v);
    v = v.normalized();

    const StateVector lz_v = detail::apply_lz(v);
    const StateVector m_v = Complex(static_cast<double>(m)) * v;
    if ((lz_v - m_v).norm() > 1e-10)
        throw std::logic_error("angular_eigenstate_2d: L_z eigenvalue check failed");
    for (int idx = 0; idx < basis->dim(); ++idx)
        if (v.amplitude(idx) != Complex{} && basis->total_excitation(idx) != n_total)
            throw std::logic_error("angular_eigenstate_2d: N_T support check failed");
    return v;
}

// Orthonormal basis of the joint (N_T = n_total, L^2 = l(l+1)) eigenspace:
// L^2 is diagonalized inside the N_T sector, then L_z inside the L^2 block.
// States come back ordered by the L_z eigenvalue m = -l..l.
inline std::vector<StateVector> angular_eigenbasis_3d(int n_total, int l,
                                                      std::shared_ptr<const FockBasis> basis) {
    if (basis->n_modes() != 3)
        throw std::invalid_argument("angular_eigenbasis_3d: basis must have 3 modes");
    if (l < 0 || l > n_total || ((n_total - l) % 2) != 0)
        throw std::invalid_argument(
            "angular_eigenbasis_3d: incompatible (n_T, l); need l <= n_T with l = n_T (mod 2)");
    detail::require_full_sector(basis, n_total, "angular_eigenbasis_3d");

    std::vector<int> sector;
    for (int i = 0; i < basis->dim(); ++i)
        if (basis->total_excitation(i) == n_total) sector.push_back(i);
    const int sdim = static_cast<int>(sector.size());

    auto sector_state = [&](const std::vector<Complex>& coeffs) {
        std::vector<Complex> a(static_cast<std::size_t>(basis->dim()));
        for (int s = 0; s < sdim; ++s)
            a[static_cast<std::size_t>(sector[static_cast<std::size_t>(s)])] = coeffs[static_cast<std::size_t>(s)];
        return StateVector(basis, std::move(a));
    };
    auto to_sector = [&](const StateVector& v) {
        std::vector<Complex> c(static_cast<std::size_t>(sdim));
        for (int s = 0; s < sdim; ++s)
            c[static_cast<std::size_t>(s)] = v.amplitude(sector[static_cast<std::size_t>(s)]);
        return c;
    };
    auto apply_l2 = [&](const StateVector& v) {
        StateVector lx = detail::apply_angular(v, 1, 2);
        StateVector ly = detail::apply_angular(v, 2, 0);
        StateVector lz = detail::apply_angular(v, 0, 1);
        return detail::apply_angular(lx, 1, 2) + detail::apply_angular(ly, 2, 0) +
               detail::apply_angular(lz, 0, 1);
    };

    CMatrix l2_block(sdim);
    CMatrix lz_block(sdim);
    for (int s = 0; s < sdim; ++s) {
        std::vector<Complex> e(static_cast<std::size_t>(sdim));
        e[static_cast<std::size_t>(s)] = 1.0;
        const StateVector col = sector_state(e);
        const auto l2col = to_sector(apply_l2(col));
        const auto lzcol = to_sector(detail::apply_lz(col));
        for (int r = 0; r < sdim; ++r) {
            l2_block(r, s) = l2col[static_cast<std::size_t>(r)];
            lz_block(r, s) = lzcol[static_cast<std::size_t>(r)];
        }
    }

    const EigResult l2_eig = jacobi_hermitian_eig(l2_block);
    const double want = static_cast<double>(l) * (l + 1.0);
    std::vector<int> block;
    for (int k = 0; k < sdim; ++k)
        if (std::abs(l2_eig.values[static_cast<std::size_t>(k)] - want) < 1e-6) block.push_back(k);
    if (block.empty())
        throw std::invalid_argument("angular_eigenbasis_3d: no L^2 = l(l+1) block in this N_T sector");
    const int bdim = static_cast<int>(block.size());
    if (bdim != 2 * l + 1)
        throw std::runtime_error("angular_eigenbasis_3d: unexpected L^2 multiplicity");

    // W^dag L_z W on the degenerate block
    CMatrix w(sdim);  // only first bdim columns used
    for (int c = 0; c < bdim; ++c)
        for (int r = 0; r < sdim; ++r) w(r, c) = l2_eig.vectors(r, block[static_cast<std::size_t>(c)]);
    CMatrix lz_small(bdim);
    for (int c = 0; c < bdim; ++c) {
        std::vector<Complex> wc(static_cast<std::size_t>(sdim));
        for (int r = 0; r < sdim; ++r) wc[static_cast<std::size_t>(r)] = w(r, c);
        const auto lzwc = lz_block.apply(wc);
        for (int r = 0; r < bdim; ++r) {
            Complex s{};
            for (int i = 0; i < sdim; ++i) s += std::conj(w(i, r)) * lzwc[static_cast<std::size_t>(i)];
            lz_small(r, c) = s;
        }
    }
    const EigResult lz_eig = jacobi_hermitian_eig(lz_small);

    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(bdim));
    for (int k = 0; k < bdim; ++k) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(sdim));
        for (int r = 0; r < sdim; ++r) {
            Complex s{};
            for (int c = 0; c < bdim; ++c) s += w(r, c) * lz_eig.vectors(c, k);
            coeffs[static_cast<std::size_t>(r)] = s;
        }
        out.push_back(sector_state(coeffs).normalized());
    }
    return out;
}

// (|n_T, +n_T> + e^{i 2 n_T theta} |n_T, -n_T>)/sqrt(2) in the circular-mode
// phase convention above.
inline StateVector cat_target(int n_total, double theta, std::shared_ptr<const FockBasis> basis) {
    const StateVector plus = angular_eigenstate_2d(n_total, n_total, basis);
    const StateVector minus = angular_eigenstate_2d(n_total, -n_total, basis);
    const Complex phase = std::polar(1.0, 2.0 * n_total * theta);
    return ((1.0 / std::numbers::sqrt2) * (plus + phase * minus)).normalized();
}

}  // namespace iondistill
