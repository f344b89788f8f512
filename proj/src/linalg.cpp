#include "invnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

namespace invnet {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw NumericalError(what);
}

}  // namespace

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.data() == b.data();
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "matmul: dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Vector operator*(const DenseMatrix& a, const Vector& x) {
    require(a.cols() == x.size(), "matvec: dimension mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix add: dimension mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix subtract: dimension mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
    return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double norm_one(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

double norm_two(const Vector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double norm_inf(const Vector& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::abs(v));
    return s;
}

DenseMatrix TridiagonalMatrix::to_dense() const {
    const std::size_t n = size();
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = diag[i];
        if (i + 1 < n) {
            a(i, i + 1) = super[i];
            a(i + 1, i) = sub[i];
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// Dense LU with partial pivoting

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    require(lu_.is_square() && lu_.rows() >= 1, "lu: matrix must be square and nonempty");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best)) {
            throw NumericalError("lu: matrix is numerically singular at column " + std::to_string(k));
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) / lu_(k, k);
            lu_(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

Vector LuFactorization::solve(Vector rhs) const {
    const std::size_t n = lu_.rows();
    require(rhs.size() == n, "lu solve: rhs length mismatch");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 1; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
        x[ii] = s / lu_(ii, ii);
    }
    return x;
}

DenseMatrix LuFactorization::solve(DenseMatrix rhs) const {
    const std::size_t n = lu_.rows();
    require(rhs.rows() == n, "lu solve: rhs rows mismatch");
    DenseMatrix x(n, rhs.cols());
    Vector col(n);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        Vector sol = solve(col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
}

DenseMatrix LuFactorization::inverse() const {
    return solve(DenseMatrix::identity(lu_.rows()));
}

Vector lu_solve(const DenseMatrix& a, Vector rhs) {
    return LuFactorization(a).solve(std::move(rhs));
}

DenseMatrix lu_inverse(const DenseMatrix& a) {
    return LuFactorization(a).inverse();
}

// ---------------------------------------------------------------------------
// Matrix exponential

namespace {

// Diagonal Pade approximant of order 6 on the scaled matrix; with the norm
// brought below 1/2 the truncation error is far below double roundoff.
DenseMatrix pade6(const DenseMatrix& x) {
    constexpr int q = 6;
    const std::size_t n = x.rows();
    double c = 1.0;
    DenseMatrix num = DenseMatrix::identity(n);
    DenseMatrix den = DenseMatrix::identity(n);
    DenseMatrix power = DenseMatrix::identity(n);
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
        power = power * x;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                num(i, j) += c * power(i, j);
                den(i, j) += sign * c * power(i, j);
            }
        }
    }
    return LuFactorization(den).solve(num);
}

}  // namespace

DenseMatrix expm(const DenseMatrix& a, double t) {
    require(a.is_square() && a.rows() >= 1, "expm: matrix must be square and nonempty");
    require(a.all_finite() && std::isfinite(t), "expm: non-finite input");

    DenseMatrix at = t * a;
    const double norm = norm_one(at);
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        const double scale = std::ldexp(1.0, -squarings);
        at = scale * at;
    }
    DenseMatrix e = pade6(at);
    for (int s = 0; s < squarings; ++s) e = e * e;
    if (!e.all_finite()) {
        throw NumericalError("expm: overflow, exponential exceeds representable range");
    }
    return e;
}

DenseMatrix expm_2x2_closed(const DenseMatrix& a, double t) {
    require(a.rows() == 2 && a.cols() == 2, "expm_2x2_closed: matrix must be 2x2");
    using Complex = std::complex<double>;

    const double tr = a(0, 0) + a(1, 1);
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const Complex root = std::sqrt(Complex(tr * tr - 4.0 * det, 0.0));
    const Complex eta1 = 0.5 * (Complex(tr) + root);
    const Complex eta2 = 0.5 * (Complex(tr) - root);

    DenseMatrix e(2, 2);
    if (std::abs(eta1 - eta2) < 1e-9 * std::max(1.0, std::abs(eta1))) {
        // Limit form for a repeated eigenvalue: e^{nt} (I + t (A - n I)).
        const double eta = 0.5 * tr;
        const double scale = std::exp(eta * t);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                e(i, j) = scale * ((i == j ? 1.0 : 0.0) + t * (a(i, j) - (i == j ? eta : 0.0)));
        return e;
    }

    const Complex e1 = std::exp(eta1 * t);
    const Complex e2 = std::exp(eta2 * t);
    const Complex w = (e1 - e2) / (eta1 - eta2);
    // Complex parts cancel for real A; keep the real part of each entry.
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex entry = (i == j ? e1 : Complex(0.0)) + w * (Complex(a(i, j)) - (i == j ? eta1 : Complex(0.0)));
            e(i, j) = entry.real();
        }
    }
    return e;
}

// ---------------------------------------------------------------------------
// Tridiagonal kernels

Vector tridiag_solve(const TridiagonalMatrix& t, Vector rhs) {
    const std::size_t n = t.size();
    require(n >= 1 && t.sub.size() == n - 1 && t.super.size() == n - 1,
            "tridiag_solve: inconsistent band lengths");
    require(rhs.size() == n, "tridiag_solve: rhs length mismatch");

    const auto row_scale = [&](std::size_t i) {
        double s = std::abs(t.diag[i]);
        if (i > 0) s = std::max(s, std::abs(t.sub[i - 1]));
        if (i + 1 < n) s = std::max(s, std::abs(t.super[i]));
        return s;
    };

    Vector cp(n, 0.0);
    Vector x(n);
    double pivot = t.diag[0];
    if (std::abs(pivot) <= 1e-14 * row_scale(0)) {
        throw BreakdownError("tridiag_solve: near-singular pivot at row 0");
    }
    cp[0] = (n > 1) ? t.super[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = t.diag[i] - t.sub[i - 1] * cp[i - 1];
        if (std::abs(pivot) <= 1e-14 * row_scale(i)) {
            throw BreakdownError("tridiag_solve: near-singular pivot at row " + std::to_string(i));
        }
        if (i + 1 < n) cp[i] = t.super[i] / pivot;
        x[i] = (rhs[i] - t.sub[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= cp[i] * x[i + 1];
    }
    return x;
}

DenseMatrix tridiag_inverse(const TridiagonalMatrix& t) {
    const std::size_t n = t.size();
    require(n >= 1 && t.sub.size() == n - 1 && t.super.size() == n - 1,
            "tridiag_inverse: inconsistent band lengths");

    // Leading and trailing continuants; theta[i] is the i-th leading principal
    // minor, phi[i] the minor of the trailing block starting at row i.
    Vector theta(n + 1), phi(n + 2);
    theta[0] = 1.0;
    theta[1] = t.diag[0];
    for (std::size_t i = 2; i <= n; ++i) {
        theta[i] = t.diag[i - 1] * theta[i - 1] - t.super[i - 2] * t.sub[i - 2] * theta[i - 2];
    }
    phi[n + 1] = 1.0;
    phi[n] = t.diag[n - 1];
    for (std::size_t i = n - 1; i >= 1; --i) {
        phi[i] = t.diag[i - 1] * phi[i + 1] - t.super[i - 1] * t.sub[i - 1] * phi[i + 2];
    }

    const double det = theta[n];
    double scale = 0.0;
    for (std::size_t i = 0; i <= n; ++i) scale = std::max(scale, std::abs(theta[i]));
    if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale) {
        throw BreakdownError("tridiag_inverse: zero continuant, matrix is singular");
    }
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (!std::isfinite(phi[i])) throw BreakdownError("tridiag_inverse: continuant overflow");
    }

    DenseMatrix inv(n, n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            double prod = 1.0;
            if (i < j) {
                for (std::size_t k = i; k < j; ++k) prod *= t.super[k - 1];
                inv(i - 1, j - 1) = sign * prod * theta[i - 1] * phi[j + 1] / det;
            } else if (i > j) {
                for (std::size_t k = j + 1; k <= i; ++k) prod *= t.sub[k - 2];
                inv(i - 1, j - 1) = sign * prod * theta[j - 1] * phi[i + 1] / det;
            } else {
                inv(i - 1, j - 1) = theta[i - 1] * phi[i + 1] / det;
            }
        }
    }
    return inv;
}

DenseMatrix smw_inverse(const DenseMatrix& m_inv, const DenseMatrix& u, const DenseMatrix& v) {
    const std::size_t n = m_inv.rows();
    require(m_inv.is_square(), "smw_inverse: M^{-1} must be square");
    require(u.rows() == n && v.rows() == n && u.cols() == v.cols(),
            "smw_inverse: factor dimensions mismatch");
    const std::size_t l = u.cols();
    if (l == 0) return m_inv;

    const DenseMatrix p = m_inv * u;              // n x l
    const DenseMatrix vt_minv = transpose(v) * m_inv;  // l x n
    DenseMatrix inner = transpose(v) * p;         // l x l
    for (std::size_t i = 0; i < l; ++i) inner(i, i) += 1.0;

    DenseMatrix correction;
    try {
        correction = p * LuFactorization(inner).solve(vt_minv);
    } catch (const NumericalError&) {
        throw BreakdownError("smw_inverse: inner capacitance matrix is singular");
    }
    return m_inv - correction;
}

GershgorinReport gershgorin(const DenseMatrix& a) {
    require(a.is_square() && a.rows() >= 1, "gershgorin: matrix must be square and nonempty");
    const std::size_t n = a.rows();
    GershgorinReport report;
    report.discs.reserve(n);
    double bound = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double radius = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != j) radius += std::abs(a(i, j));
        }
        report.discs.push_back({a(j, j), radius});
        bound = std::max(bound, a(j, j) + radius);
    }
    report.upper_bound = bound;
    return report;
}

}  // namespace invnet
