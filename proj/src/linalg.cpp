#include "sorption/linalg.hpp"

#include <algorithm>
#include <limits>

namespace sorption {

bool solve(Matrix A, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = A.n;
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t imax = k;
        double amax = std::fabs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(A(i, k)) > amax) {
                amax = std::fabs(A(i, k));
                imax = i;
            }
        }
        if (amax == 0.0 || !std::isfinite(amax)) return false;
        if (imax != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(imax, j));
            std::swap(b[k], b[imax]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            A(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= A(ii, j) * x[j];
        x[ii] = s / A(ii, ii);
        if (!std::isfinite(x[ii])) return false;
    }
    return true;
}

bool invert(const Matrix& A, Matrix& inv) {
    const std::size_t n = A.n;
    inv = Matrix(n);
    std::vector<double> e(n), col;
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        if (!solve(A, e, col)) return false;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return true;
}

double norm1(const Matrix& A) {
    double best = 0.0;
    for (std::size_t j = 0; j < A.n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < A.n; ++i) s += std::fabs(A(i, j));
        best = std::max(best, s);
    }
    return best;
}

double condition1(const Matrix& A) {
    Matrix inv;
    if (!invert(A, inv)) return std::numeric_limits<double>::infinity();
    return norm1(A) * norm1(inv);
}

std::vector<double> symmetric_eigenvalues(Matrix A, int sweeps) {
    const std::size_t n = A.n;
    for (int s = 0; s < sweeps; ++s) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - sn * akq;
                    A(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - sn * aqk;
                    A(q, k) = sn * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace sorption
