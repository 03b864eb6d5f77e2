// Dense matrices over an exact field, and the linear algebra the rest of
// the library is built on: rank, affine solve with kernel, Sylvester solve.
// 0xN and Nx0 matrices are legal everywhere and behave as empty maps.
#pragma once

#include "zastava/rational.hpp"
#include "zastava/rng.hpp"

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zastava {

template <class F>
class MatT {
public:
    MatT() : rows_(0), cols_(0) {}
    MatT(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static MatT zero(int r, int c) { return MatT(r, c); }
    static MatT identity(int n) {
        MatT m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }
    static MatT scalar(int n, const F& v) {
        MatT m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = v;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

    F& at(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const F& at(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == F(0))) return false;
        return true;
    }

    bool operator==(const MatT& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const MatT& o) const { return !(*this == o); }

    MatT operator+(const MatT& o) const {
        require_same_shape(o);
        MatT r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    MatT operator-(const MatT& o) const {
        require_same_shape(o);
        MatT r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    MatT operator-() const {
        MatT r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }
    MatT operator*(const MatT& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch: " + shape_str() + " * " + o.shape_str());
        MatT r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const F& aik = at(i, k);
                if (aik == F(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }
    MatT scaled(const F& c) const {
        MatT r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
        return r;
    }
    MatT transpose() const {
        MatT r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::string shape_str() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const MatT& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch: " + shape_str() + " vs " + o.shape_str());
    }

    int rows_, cols_;
    std::vector<F> a_;
};

using Mat = MatT<Rational>;

// --- generic elimination -------------------------------------------------

// Row echelon over any exact field; returns rank, optionally records the
// pivot columns. Destroys m.
template <class F>
int echelonize(MatT<F>& m, std::vector<int>* pivot_cols = nullptr) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!(m.at(i, c) == F(0))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        F inv = F(1) / m.at(r, c);
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            F f = m.at(i, c);
            if (f == F(0)) continue;
            for (int j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

template <class F>
int rank_generic(MatT<F> m) {
    return echelonize(m);
}

// Exact rank of a rational matrix via fraction-free (Bareiss) elimination
// on the denominator-cleared integer matrix.
int rank(const Mat& m);

template <class F>
struct LinearSolution {
    MatT<F> particular;              // one x with a*x = b
    std::vector<MatT<F>> kernel;     // basis of ker(a), as column vectors
};

// Solve a*x = b columnwise; absent when inconsistent. Kernel basis of `a`
// is returned either way the system is consistent.
template <class F>
std::optional<LinearSolution<F>> solve_linear_generic(const MatT<F>& a, const MatT<F>& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: lhs/rhs row mismatch " + a.shape_str() + " vs " + b.shape_str());
    int n = a.rows(), m = a.cols(), k = b.cols();
    MatT<F> aug(n, m + k);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < k; ++j) aug.at(i, m + j) = b.at(i, j);
    }
    std::vector<int> pivots;
    echelonize(aug, &pivots);
    std::vector<int> pivot_of_col(m, -1);
    int r = 0;
    for (int c : pivots) {
        if (c >= m) return std::nullopt; // pivot in the rhs block: inconsistent
        pivot_of_col[c] = r++;
    }
    LinearSolution<F> sol;
    sol.particular = MatT<F>(m, k);
    for (int c = 0; c < m; ++c)
        if (pivot_of_col[c] >= 0)
            for (int j = 0; j < k; ++j) sol.particular.at(c, j) = aug.at(pivot_of_col[c], m + j);
    for (int c = 0; c < m; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        MatT<F> v(m, 1);
        v.at(c, 0) = F(1);
        for (int c2 = 0; c2 < m; ++c2)
            if (pivot_of_col[c2] >= 0) v.at(c2, 0) = -aug.at(pivot_of_col[c2], c);
        sol.kernel.push_back(v);
    }
    return sol;
}

inline std::optional<LinearSolution<Rational>> solve_linear(const Mat& a, const Mat& b) {
    return solve_linear_generic(a, b);
}

template <class F>
std::optional<MatT<F>> inverse(const MatT<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    auto sol = solve_linear_generic(m, MatT<F>::identity(m.rows()));
    if (!sol || !sol->kernel.empty()) return std::nullopt;
    return sol->particular;
}

// Solve p*X - X*q = r for X (p: n x n, q: m x m, r: n x m) by vectorizing
// to an ordinary linear system. The solution is unique exactly when p and q
// share no characteristic factor; otherwise any solution is returned.
std::optional<Mat> sylvester_solve(const Mat& p, const Mat& q, const Mat& r);

// Like sylvester_solve but also returns a kernel basis of X -> p*X - X*q.
std::optional<LinearSolution<Rational>> sylvester_solve_full(const Mat& p, const Mat& q, const Mat& r);

Mat random_int_matrix(int rows, int cols, Rng& rng, long bound = Rng::kDefaultBound);

// --- row-space (subspace) utilities --------------------------------------

// Subspaces are carried as matrices whose rows span them; the canonical
// form is the reduced row echelon basis with zero rows dropped, so equal
// subspaces compare equal as matrices.
template <class F>
MatT<F> row_space_basis(MatT<F> m) {
    int r = echelonize(m);
    MatT<F> out(r, m.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
    return out;
}

template <class F>
MatT<F> vstack(const MatT<F>& a, const MatT<F>& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    MatT<F> r(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

template <class F>
MatT<F> sum_spaces(const MatT<F>& a, const MatT<F>& b) {
    return row_space_basis(vstack(a, b));
}

template <class F>
bool space_contains(const MatT<F>& space, const MatT<F>& vectors) {
    // both as row collections over the same ambient dimension
    if (vectors.rows() == 0) return true;
    int d0 = rank_generic(space);
    int d1 = rank_generic(vstack(space, vectors));
    return d0 == d1;
}

} // namespace zastava
