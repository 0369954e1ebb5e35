#pragma once
// Ladder operators on truncated Fock bases and the angular momentum
// bilinears built from them.  Creation is defined as the exact matrix
// adjoint of annihilation, so truncation artifacts stay consistent:
// raising transitions that would leave the basis are simply absent.

#include "iondistill/operator.hpp"

namespace iondistill {

inline Operator annihilation(std::shared_ptr<const FockBasis> basis, int mode) {
    if (mode < 0 || mode >= basis->n_modes())
        throw std::invalid_argument("annihilation: invalid mode index");
    CMatrix m(basis->dim());
    for (int col = 0; col < basis->dim(); ++col) {
        Occupation occ = basis->occupation(col);
        const int n = occ[static_cast<std::size_t>(mode)];
        if (n == 0) continue;
        occ[static_cast<std::size_t>(mode)] = n - 1;
        m(basis->index_of(occ), col) = std::sqrt(static_cast<double>(n));
    }
    return {std::move(basis), std::move(m)};
}

inline Operator creation(std::shared_ptr<const FockBasis> basis, int mode) {
    return annihilation(std::move(basis), mode).adjoint();
}

// Number operators are built directly from the occupation labels; the
// diagonal entries are exact integers rather than sqrt(n)^2 round-trips.
inline Operator number_op(std::shared_ptr<const FockBasis> basis, int mode) {
    if (mode < 0 || mode >= basis->n_modes())
        throw std::invalid_argument("number_op: invalid mode index");
    std::vector<double> d(static_cast<std::size_t>(basis->dim()));
    for (int i = 0; i < basis->dim(); ++i)
        d[static_cast<std::size_t>(i)] = basis->occupation(i)[static_cast<std::size_t>(mode)];
    return Operator::diagonal(std::move(basis), d);
}

inline Operator total_number(std::shared_ptr<const FockBasis> basis) {
    std::vector<double> d(static_cast<std::size_t>(basis->dim()));
    for (int i = 0; i < basis->dim(); ++i) d[static_cast<std::size_t>(i)] = basis->total_excitation(i);
    return Operator::diagonal(std::move(basis), d);
}

// i [ a_j a_k^dag - a_k a_j^dag ]
inline Operator angular_bilinear(const std::shared_ptr<const FockBasis>& basis, int mode_j, int mode_k) {
    const Operator aj = annihilation(basis, mode_j);
    const Operator ak = annihilation(basis, mode_k);
    return Complex{0.0, 1.0} * (aj * ak.adjoint() - ak * aj.adjoint());
}

struct AngularMomentum2d {
    Operator l_z;
};

struct AngularMomentum3d {
    Operator l_x;
    Operator l_y;
    Operator l_z;
    Operator l_squared;
};

inline AngularMomentum2d angular_momentum_2d(const std::shared_ptr<const FockBasis>& basis) {
    if (basis->n_modes() != 2)
        throw std::invalid_argument("angular_momentum_2d: basis must have 2 modes");
    return {angular_bilinear(basis, 0, 1)};
}

inline AngularMomentum3d angular_momentum_3d(const std::shared_ptr<const FockBasis>& basis) {
    if (basis->n_modes() != 3)
        throw std::invalid_argument("angular_momentum_3d: basis must have 3 modes");
    Operator lx = angular_bilinear(basis, 1, 2);
    Operator ly = angular_bilinear(basis, 2, 0);
    Operator lz = angular_bilinear(basis, 0, 1);
    Operator l2 = lx * lx + ly * ly + lz * lz;
    return {std::move(lx), std::move(ly), std::move(lz), std::move(l2)};
}

}  // namespace iondistill
