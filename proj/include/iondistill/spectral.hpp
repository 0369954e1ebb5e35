#pragma once
// Hermitian eigendecomposition by cyclic complex Jacobi rotations, spectral
// functions of nonnegative operators (cos/sin of gamma*tau*sqrt(M)), and
// resonance-set analysis for the conditional evolution.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "iondistill/operator.hpp"

namespace iondistill {

// Eigenvalues of Omega*Omega^dag type operators may round slightly negative;
// anything below this floor is a genuinely indefinite input.
inline constexpr double kPsdFloor = -1e-10;

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary; column k pairs with values[k]
};

// Cyclic Jacobi sweeps for a Hermitian matrix.  Off-diagonal Frobenius mass
// below 1e-14 * ||A||_F counts as converged; the sweep cap is a hard error.
inline EigResult jacobi_hermitian_eig(CMatrix a, int max_sweeps = 100) {
    const int n = a.dim();
    CMatrix v = CMatrix::identity(n);
    const double scale = a.frobenius();

    auto off_mass = [&a, n]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j)) + std::norm(a(j, i));
        return std::sqrt(s);
    };

    bool converged = (scale == 0.0);
    const double goal = 1e-14 * scale;
    // rotations on elements this small cannot move the off-mass above goal
    const double skip = goal / (10.0 * std::max(n, 1));

    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_mass() <= goal) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= skip) continue;

                const Complex phase = apq / g;
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double theta = (aqq - app) / (2.0 * g);
                const double t =
                    (theta >= 0.0 ? -1.0 : 1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G = I except G(p,p)=c, G(p,q)=-s*phase, G(q,p)=s*conj(phase), G(q,q)=c
                for (int i = 0; i < n; ++i) {  // A <- A G
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(phase) * aiq;
                    a(i, q) = c * aiq - s * phase * aip;
                }
                for (int j = 0; j < n; ++j) {  // A <- G^H A
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + s * phase * aqj;
                    a(q, j) = c * aqj - s * std::conj(phase) * apj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = std::real(a(p, p));
                a(q, q) = std::real(a(q, q));
                for (int i = 0; i < n; ++i) {  // V <- V G
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(phase) * viq;
                    v(i, q) = c * viq - s * phase * vip;
                }
            }
        }
    }
    if (!converged && off_mass() > goal)
        throw std::runtime_error("jacobi_hermitian_eig: sweep cap exceeded without convergence");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int x, int y) { return std::real(a(x, x)) < std::real(a(y, y)); });

    EigResult res;
    res.values.resize(static_cast<std::size_t>(n));
    res.vectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        res.values[static_cast<std::size_t>(k)] = std::real(a(src, src));
        for (int i = 0; i < n; ++i) res.vectors(i, k) = v(i, src);
    }
    return res;
}

struct SpectralDecomposition {
    std::shared_ptr<const FockBasis> basis;
    std::vector<double> eigenvalues;  // ascending
    CMatrix eigenvectors;             // unitary columns
};

inline SpectralDecomposition hermitian_eig(const Operator& m) {
    if (!m.hermitian())
        throw std::invalid_argument("hermitian_eig: operator does not pass the hermiticity check");
    EigResult e = jacobi_hermitian_eig(m.matrix());
    return {m.basis(), std::move(e.values), std::move(e.vectors)};
}

// U f(lambda) U^dag
inline Operator spectral_map(const SpectralDecomposition& spec, const std::function<double(double)>& f) {
    const int n = spec.eigenvectors.dim();
    CMatrix scaled = spec.eigenvectors;
    for (int k = 0; k < n; ++k) {
        const double fk = f(spec.eigenvalues[static_cast<std::size_t>(k)]);
        for (int i = 0; i < n; ++i) scaled(i, k) *= fk;
    }
    return {spec.basis, scaled * spec.eigenvectors.adjoint()};
}

inline void require_nonnegative(const SpectralDecomposition& spec, const char* who) {
    if (!spec.eigenvalues.empty() && spec.eigenvalues.front() < kPsdFloor)
        throw std::domain_error(std::string(who) +
                                ": eigenvalue below PSD floor; input is not of Omega*Omega^dag type");
}

inline Operator cos_sqrt(const SpectralDecomposition& spec, double gamma_tau) {
    require_nonnegative(spec, "cos_sqrt");
    return spectral_map(spec, [gamma_tau](double lambda) {
        return std::cos(gamma_tau * std::sqrt(std::max(lambda, 0.0)));
    });
}

inline Operator cos_sqrt(const Operator& m, double gamma_tau) {
    return cos_sqrt(hermitian_eig(m), gamma_tau);
}

inline Operator sin_sqrt(const SpectralDecomposition& spec, double gamma_tau) {
    require_nonnegative(spec, "sin_sqrt");
    return spectral_map(spec, [gamma_tau](double lambda) {
        return std::sin(gamma_tau * std::sqrt(std::max(lambda, 0.0)));
    });
}

inline Operator sin_sqrt(const Operator& m, double gamma_tau) {
    return sin_sqrt(hermitian_eig(m), gamma_tau);
}

struct ResonantMember {
    int index;          // position in the ascending eigenvalue list
    double eigenvalue;  // omega_k
    long l;             // gamma*tau*sqrt(omega_k) = l*pi
    int parity;         // (-1)^l
};

struct ResonantSet {
    double gamma_tau = 0.0;
    double tolerance = 0.0;
    std::vector<ResonantMember> members;
    double leakage_bound = 0.0;  // max |cos(gamma*tau*sqrt(omega))| over non-members

    bool contains(int index) const {
        for (const auto& m : members)
            if (m.index == index) return true;
        return false;
    }

    bool all_even() const {
        for (const auto& m : members)
            if (m.parity != 1) return false;
        return true;
    }
};

inline ResonantSet resonant_set(const SpectralDecomposition& spec, double gamma_tau, double tolerance) {
    if (gamma_tau <= 0.0) throw std::invalid_argument("resonant_set: gamma_tau must be positive");
    if (tolerance <= 0.0 || tolerance >= 0.1)
        throw std::invalid_argument("resonant_set: tolerance must lie in (0, 0.1)");
    require_nonnegative(spec, "resonant_set");

    ResonantSet rs{gamma_tau, tolerance, {}, 0.0};
    for (int k = 0; k < static_cast<int>(spec.eigenvalues.size()); ++k) {
        const double omega = std::max(spec.eigenvalues[static_cast<std::size_t>(k)], 0.0);
        const double x = gamma_tau * std::sqrt(omega);
        const long l = std::lround(x / std::numbers::pi);
        if (std::abs(x - static_cast<double>(l) * std::numbers::pi) <= tolerance)
            rs.members.push_back({k, omega, l, (l % 2 == 0) ? 1 : -1});
        else
            rs.leakage_bound = std::max(rs.leakage_bound, std::abs(std::cos(x)));
    }
    if (rs.leakage_bound >= 1.0 - 1e-9)
        throw std::runtime_error(
            "resonant_set: ill-posed configuration; a non-member sits within floating noise of resonance");
    return rs;
}

inline double choose_gamma_tau(double target_eigenvalue, int l) {
    if (target_eigenvalue <= 0.0)
        throw std::invalid_argument("choose_gamma_tau: target eigenvalue must be positive");
    if (l < 1) throw std::invalid_argument("choose_gamma_tau: l must be >= 1");
    return static_cast<double>(l) * std::numbers::pi / std::sqrt(target_eigenvalue);
}

// Worst-case surviving amplitude ratio of any non-member after n steps.
inline double leakage_after_n(const ResonantSet& rs, int n) {
    if (n < 0) throw std::invalid_argument("leakage_after_n: n must be >= 0");
    if (n == 0) return 1.0;
    return std::pow(rs.leakage_bound, n);
}

}  // namespace iondistill
