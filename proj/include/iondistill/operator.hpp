#pragma once
// Dense complex matrices over a Fock basis, normalized state vectors, and
// the elementary compositions (sum, product, adjoint, scalar multiple).
// Dimensions stay small (a few hundred), so everything is dense and every
// value is immutable once built.

#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iondistill/fock_basis.hpp"

namespace iondistill {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;

// Square dense complex matrix, row major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

    static CMatrix identity(int dim) {
        CMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[idx(i, j)]; }
    const Complex& operator()(int i, int j) const { return a_[idx(i, j)]; }

    const std::vector<Complex>& data() const { return a_; }

    CMatrix adjoint() const {
        CMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const Complex& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool is_hermitian(double tol) const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j <= i; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    CMatrix& operator+=(const CMatrix& o) {
        check_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    CMatrix& operator-=(const CMatrix& o) {
        check_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    CMatrix& operator*=(Complex s) {
        for (Complex& z : a_) z *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        a.check_dim(b);
        const int n = a.dim_;
        CMatrix c(n);
        for (int i = 0; i < n; ++i) {
            Complex* crow = &c.a_[a.idx(i, 0)];
            for (int k = 0; k < n; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;  // ladder monomials are mostly zero
                const Complex* brow = &b.a_[a.idx(k, 0)];
                for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
            }
        }
        return c;
    }

    std::vector<Complex> apply(std::span<const Complex> v) const {
        if (static_cast<int>(v.size()) != dim_)
            throw std::invalid_argument("CMatrix: vector length mismatch");
        std::vector<Complex> out(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            Complex s{};
            const Complex* row = &a_[idx(i, 0)];
            for (int j = 0; j < dim_; ++j) s += row[j] * v[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = s;
        }
        return out;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
    }

    void check_dim(const CMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<Complex> a_;
};

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

class StateVector;

// Basis-tagged operator.  The hermitian flag is recomputed from the matrix
// on every construction, so it can be trusted (and tested) downstream.
class Operator {
public:
    Operator(std::shared_ptr<const FockBasis> basis, CMatrix matrix)
        : basis_(std::move(basis)), m_(std::move(matrix)) {
        if (!basis_) throw std::invalid_argument("Operator: null basis");
        if (m_.dim() != basis_->dim())
            throw std::invalid_argument("Operator: matrix/basis dimension mismatch");
        hermitian_ = m_.is_hermitian(kHermitianTol);
    }

    static Operator zero(std::shared_ptr<const FockBasis> basis) {
        const int d = basis->dim();
        return {std::move(basis), CMatrix(d)};
    }

    static Operator identity(std::shared_ptr<const FockBasis> basis) {
        const int d = basis->dim();
        return {std::move(basis), CMatrix::identity(d)};
    }

    static Operator diagonal(std::shared_ptr<const FockBasis> basis, const std::vector<double>& d) {
        if (static_cast<int>(d.size()) != basis->dim())
            throw std::invalid_argument("Operator: diagonal length mismatch");
        CMatrix m(basis->dim());
        for (int i = 0; i < basis->dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return {std::move(basis), std::move(m)};
    }

    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const CMatrix& matrix() const { return m_; }
    bool hermitian() const { return hermitian_; }
    int dim() const { return m_.dim(); }
    Complex element(int i, int j) const { return m_(i, j); }

    Operator adjoint() const { return {basis_, m_.adjoint()}; }

    friend Operator operator+(const Operator& a, const Operator& b) {
        a.check_basis(b);
        return {a.basis_, a.m_ + b.m_};
    }
    friend Operator operator-(const Operator& a, const Operator& b) {
        a.check_basis(b);
        return {a.basis_, a.m_ - b.m_};
    }
    friend Operator operator*(const Operator& a, const Operator& b) {
        a.check_basis(b);
        return {a.basis_, a.m_ * b.m_};
    }
    friend Operator operator*(Complex s, const Operator& a) { return {a.basis_, s * a.m_}; }
    friend Operator operator*(const Operator& a, Complex s) { return {a.basis_, s * a.m_}; }

    StateVector apply(const StateVector& v) const;

private:
    void check_basis(const Operator& o) const {
        if (!(*basis_ == *o.basis_)) throw std::invalid_argument("Operator: basis mismatch");
    }

    std::shared_ptr<const FockBasis> basis_;
    CMatrix m_;
    bool hermitian_ = false;
};

// Complex amplitude vector over a Fock basis.  The normalizing constructors
// guarantee unit norm to 1e-12; raw amplitudes (e.g. V|psi> before
// renormalization) are also representable.
class StateVector {
public:
    StateVector(std::shared_ptr<const FockBasis> basis, std::vector<Complex> amplitudes)
        : basis_(std::move(basis)), a_(std::move(amplitudes)) {
        if (!basis_) throw std::invalid_argument("StateVector: null basis");
        if (static_cast<int>(a_.size()) != basis_->dim())
            throw std::invalid_argument("StateVector: amplitude length mismatch");
    }

    static StateVector normalized(std::shared_ptr<const FockBasis> basis, std::vector<Complex> amplitudes) {
        StateVector v(std::move(basis), std::move(amplitudes));
        return v.normalized();
    }

    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const std::vector<Complex>& amplitudes() const { return a_; }
    Complex amplitude(int i) const { return a_.at(static_cast<std::size_t>(i)); }
    int dim() const { return static_cast<int>(a_.size()); }

    double norm_squared() const {
        double s = 0.0;
        for (const Complex& z : a_) s += std::norm(z);
        return s;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    StateVector normalized() const {
        const double n = norm();
        if (n < 1e-150) throw std::invalid_argument("StateVector: cannot normalize a zero vector");
        std::vector<Complex> out(a_);
        for (Complex& z : out) z /= n;
        return {basis_, std::move(out)};
    }

    friend StateVector operator+(const StateVector& a, const StateVector& b) {
        a.check_basis(b);
        std::vector<Complex> out(a.a_);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.a_[k];
        return {a.basis_, std::move(out)};
    }
    friend StateVector operator-(const StateVector& a, const StateVector& b) {
        a.check_basis(b);
        std::vector<Complex> out(a.a_);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b.a_[k];
        return {a.basis_, std::move(out)};
    }
    friend StateVector operator*(Complex s, const StateVector& v) {
        std::vector<Complex> out(v.a_);
        for (Complex& z : out) z *= s;
        return {v.basis_, std::move(out)};
    }

private:
    void check_basis(const StateVector& o) const {
        if (!(*basis_ == *o.basis_)) throw std::invalid_argument("StateVector: basis mismatch");
    }

    std::shared_ptr<const FockBasis> basis_;
    std::vector<Complex> a_;
};

inline StateVector Operator::apply(const StateVector& v) const {
    if (!(*basis_ == *v.basis())) throw std::invalid_argument("Operator: basis mismatch");
    return {basis_, m_.apply(v.amplitudes())};
}

inline Complex inner(const StateVector& a, const StateVector& b) {
    if (!(*a.basis() == *b.basis())) throw std::invalid_argument("inner: basis mismatch");
    Complex s{};
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a.amplitude(i)) * b.amplitude(i);
    return s;
}

inline double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

inline Complex expectation(const Operator& op, const StateVector& v) { return inner(v, op.apply(v)); }

inline StateVector fock_state(std::shared_ptr<const FockBasis> basis, const Occupation& occ) {
    const int i = basis->index_of(occ);
    std::vector<Complex> a(static_cast<std::size_t>(basis->dim()));
    a[static_cast<std::size_t>(i)] = 1.0;
    return {std::move(basis), std::move(a)};
}

// Sub-basis restriction: picks the rows/columns whose occupation vectors the
// smaller basis enumerates.  Exact for number-conserving operators built with
// the +2 truncation margin.
inline Operator restrict_to(const Operator& op, std::shared_ptr<const FockBasis> sub) {
    const auto& super = *op.basis();
    std::vector<int> map(static_cast<std::size_t>(sub->dim()));
    for (int i = 0; i < sub->dim(); ++i) map[static_cast<std::size_t>(i)] = super.index_of(sub->occupation(i));
    CMatrix m(sub->dim());
    for (int i = 0; i < sub->dim(); ++i)
        for (int j = 0; j < sub->dim(); ++j)
            m(i, j) = op.element(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    return {std::move(sub), std::move(m)};
}

inline StateVector restrict_to(const StateVector& v, std::shared_ptr<const FockBasis> sub) {
    std::vector<Complex> a(static_cast<std::size_t>(sub->dim()));
    for (int i = 0; i < sub->dim(); ++i)
        a[static_cast<std::size_t>(i)] = v.amplitude(v.basis()->index_of(sub->occupation(i)));
    return {std::move(sub), std::move(a)};
}

inline StateVector embed(const StateVector& v, std::shared_ptr<const FockBasis> super) {
    std::vector<Complex> a(static_cast<std::size_t>(super->dim()));
    for (int i = 0; i < v.dim(); ++i)
        a[static_cast<std::size_t>(super->index_of(v.basis()->occupation(i)))] = v.amplitude(i);
    return {std::move(super), std::move(a)};
}

inline double max_abs_diff(const Operator& a, const Operator& b) {
    return max_abs_diff(a.matrix(), b.matrix());
}

}  // namespace iondistill
