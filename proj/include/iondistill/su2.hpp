#pragma once
// Two-mode SU(2) states |mu, j>, rotated Fock states, and the closed-form
// overlap between labels.  j is stored as 2j (an integer), and mu = infinity
// (all excitation in the second mode) is an explicit label, not a large float.

#include <cmath>
#include <numbers>

#include "iondistill/operator.hpp"

namespace iondistill {

struct SU2Label {
    Complex mu{};
    bool at_infinity = false;
    int two_j = 0;

    static SU2Label finite(Complex mu, int two_j) {
        if (two_j < 0) throw std::invalid_argument("SU2Label: 2j must be >= 0");
        return {mu, false, two_j};
    }

    static SU2Label infinite(int two_j) {
        if (two_j < 0) throw std::invalid_argument("SU2Label: 2j must be >= 0");
        return {Complex{}, true, two_j};
    }
};

inline Complex int_pow(Complex z, int n) {
    Complex r = 1.0;
    for (int k = 0; k < n; ++k) r *= z;
    return r;
}

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return b;
}

// Amplitudes binom(n_T, k)^{1/2} mu^k / (1+|mu|^2)^{n_T/2} on |n_T - k, k>.
inline StateVector su2_state(const SU2Label& label, std::shared_ptr<const FockBasis> basis) {
    if (basis->n_modes() != 2) throw std::invalid_argument("su2_state: basis must have 2 modes");
    const int n_t = label.two_j;
    for (int k = 0; k <= n_t; ++k)
        if (!basis->truncation().admits({n_t - k, k}))
            throw std::invalid_argument("su2_state: truncation too small for 2j quanta");

    std::vector<Complex> a(static_cast<std::size_t>(basis->dim()));
    if (label.at_infinity) {
        a[static_cast<std::size_t>(basis->index_of({0, n_t}))] = 1.0;
        return {std::move(basis), std::move(a)};
    }
    const double denom = std::pow(1.0 + std::norm(label.mu), static_cast<double>(n_t) / 2.0);
    Complex mu_pow = 1.0;
    for (int k = 0; k <= n_t; ++k) {
        a[static_cast<std::size_t>(basis->index_of({n_t - k, k}))] =
            std::sqrt(binomial(n_t, k)) * mu_pow / denom;
        mu_pow *= label.mu;
    }
    return StateVector::normalized(std::move(basis), std::move(a));
}

inline SU2Label rotated_fock_label(int n_total, double theta) {
    if (n_total < 0) throw std::invalid_argument("rotated_fock: n_total must be >= 0");
    if (std::abs(std::cos(theta)) < 1e-12) return SU2Label::infinite(n_total);
    return SU2Label::finite(std::tan(theta), n_total);
}

// Fock state of n_total quanta along the in-plane direction theta:
// |mu = tan(theta), j = n_total/2>, with theta = pi/2 mapped to mu = infinity.
inline StateVector rotated_fock(int n_total, double theta, std::shared_ptr<const FockBasis> basis) {
    return su2_state(rotated_fock_label(n_total, theta), std::move(basis));
}

// <mu1, j1 | mu2, j2> = (1 + mu1* mu2)^{2j} / ((1+|mu1|^2)^{j1} (1+|mu2|^2)^{j2}) delta_{j1 j2},
// extended to the infinity label by its limit.
inline Complex su2_overlap(const SU2Label& a, const SU2Label& b) {
    if (a.two_j != b.two_j) return {};
    const int two_j = a.two_j;
    const double j = static_cast<double>(two_j) / 2.0;
    if (a.at_infinity && b.at_infinity) return 1.0;
    if (a.at_infinity) return int_pow(b.mu, two_j) / std::pow(1.0 + std::norm(b.mu), j);
    if (b.at_infinity) return int_pow(std::conj(a.mu), two_j) / std::pow(1.0 + std::norm(a.mu), j);
    return int_pow(1.0 + std::conj(a.mu) * b.mu, two_j) /
           (std::pow(1.0 + std::norm(a.mu), j) * std::pow(1.0 + std::norm(b.mu), j));
}

}  // namespace iondistill
