#include "zastava/matrix.hpp"

namespace zastava {

namespace {

// Integer matrix with the same rank as the rational input: each row is
// scaled by the lcm of its denominators.
std::vector<std::vector<Integer>> clear_denominators(const Mat& m) {
    std::vector<std::vector<Integer>> z(m.rows(), std::vector<Integer>(m.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (int j = 0; j < m.cols(); ++j) {
            Integer den = m.at(i, j).get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& q = m.at(i, j);
            z[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    return z;
}

} // namespace

int rank(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto z = clear_denominators(m);
    int rows = m.rows(), cols = m.cols();
    // Bareiss fraction-free elimination: every intermediate entry is a minor
    // of the input, which keeps growth polynomial.
    Integer prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (z[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) std::swap(z[piv], z[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                Integer t = z[r][c] * z[i][j] - z[i][c] * z[r][j];
                mpz_divexact(z[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            z[i][c] = 0;
        }
        prev = z[r][c];
        ++r;
    }
    return r;
}

std::optional<LinearSolution<Rational>> sylvester_solve_full(const Mat& p, const Mat& q, const Mat& r) {
    if (p.rows() != p.cols() || q.rows() != q.cols())
        throw std::invalid_argument("sylvester: p and q must be square");
    if (r.rows() != p.rows() || r.cols() != q.rows())
        throw std::invalid_argument("sylvester: rhs shape mismatch");
    int n = p.rows(), m = q.rows();
    // Unknown X is n x m; flatten row-major. (p*X)_{ij} = sum_k p_{ik} X_{kj},
    // (X*q)_{ij} = sum_k X_{ik} q_{kj}.
    Mat sys(n * m, n * m);
    Mat rhs(n * m, 1);
    auto idx = [m](int i, int j) { return i * m + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < n; ++k) sys.at(idx(i, j), idx(k, j)) += p.at(i, k);
            for (int k = 0; k < m; ++k) sys.at(idx(i, j), idx(i, k)) -= q.at(k, j);
            rhs.at(idx(i, j), 0) = r.at(i, j);
        }
    auto sol = solve_linear(sys, rhs);
    if (!sol) return std::nullopt;
    LinearSolution<Rational> out;
    out.particular = Mat(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) out.particular.at(i, j) = sol->particular.at(idx(i, j), 0);
    for (const auto& kv : sol->kernel) {
        Mat K(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) K.at(i, j) = kv.at(idx(i, j), 0);
        out.kernel.push_back(K);
    }
    return out;
}

std::optional<Mat> sylvester_solve(const Mat& p, const Mat& q, const Mat& r) {
    auto full = sylvester_solve_full(p, q, r);
    if (!full) return std::nullopt;
    return full->particular;
}

Mat random_int_matrix(int rows, int cols, Rng& rng, long bound) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rng.small_int(bound);
    return m;
}

} // namespace zastava
