#include "ekron/fit.hpp"

#include "ekron/errors.hpp"

namespace ekron {

namespace {

// Solve A z = b in place (A is k x k, symmetric positive definite in our
// use). Throws data_error on a singular system.
std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> b,
                              mpfr_prec_t prec) {
    const std::size_t k = b.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        Real best = abs(A[col][col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            Real v = abs(A[r][col]);
            if (v > best) { best = v; pivot = r; }
        }
        if (best.is_zero())
            throw data_error("degenerate fit: singular normal equations "
                             "(all samples equal? add more sample points)");
        if (pivot != col) {
            std::swap(A[pivot], A[col]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            Real factor = A[r][col] / A[col][col];
            for (std::size_t c = col; c < k; ++c) A[r][c] -= factor * A[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<Real> z(k, Real(prec));
    for (std::size_t ri = k; ri-- > 0;) {
        Real acc = b[ri];
        for (std::size_t c = ri + 1; c < k; ++c) acc -= A[ri][c] * z[c];
        z[ri] = acc / A[ri][ri];
    }
    return z;
}

}  // namespace

LinearFit least_squares(const std::vector<std::vector<Real>>& design,
                        const std::vector<Real>& y, mpfr_prec_t prec) {
    const std::size_t m = design.size();
    if (m == 0 || m != y.size()) throw usage_error("least_squares: empty or mismatched data");
    const std::size_t k = design[0].size();
    if (m < k) throw data_error("least_squares: fewer samples than coefficients");

    // normal equations G = X^T X, rhs = X^T y
    std::vector<std::vector<Real>> G(k, std::vector<Real>(k, Real(prec)));
    std::vector<Real> rhs(k, Real(prec));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = r; c < k; ++c) G[r][c] += design[i][r] * design[i][c];
            rhs[r] += design[i][r] * y[i];
        }
    }
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < r; ++c) G[r][c] = G[c][r];

    LinearFit fit;
    fit.coeffs = solve_dense(G, rhs, prec);

    Real rss(prec);
    for (std::size_t i = 0; i < m; ++i) {
        Real pred(prec);
        for (std::size_t c = 0; c < k; ++c) pred += design[i][c] * fit.coeffs[c];
        Real r = y[i] - pred;
        rss += r * r;
    }
    unsigned long dof = m > k ? static_cast<unsigned long>(m - k) : 1;
    Real variance = rss;
    variance /= dof;
    fit.residual_rms = sqrt(variance);

    // SE of the first coefficient: residual_rms * sqrt((G^-1)_00)
    std::vector<Real> e0(k, Real(prec));
    mpfr_set_ui(e0[0].raw(), 1, MPFR_RNDN);
    std::vector<Real> ginv0 = solve_dense(G, e0, prec);
    Real g00 = ginv0[0];
    if (g00.sign() < 0) g00 = Real(prec);  // numerical guard; variance is nonnegative
    fit.stderr_first = fit.residual_rms * sqrt(g00);
    return fit;
}

}  // namespace ekron
