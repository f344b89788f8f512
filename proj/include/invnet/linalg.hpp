#pragma once

#include <cstddef>
#include <vector>

#include "invnet/errors.hpp"

namespace invnet {

using Vector = std::vector<double>;

// Row-major dense matrix. Square in most of the library; the rectangular case
// exists for low-rank factors and Jacobians of non-square maps.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool all_finite() const;

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

bool operator==(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, const Vector& x);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
DenseMatrix transpose(const DenseMatrix& a);

double norm_one(const DenseMatrix& a);  // max absolute column sum
double norm_two(const Vector& x);
double norm_inf(const Vector& x);

struct TridiagonalMatrix {
    Vector sub;    // entries (i+1, i), length n-1
    Vector diag;   // entries (i, i), length n
    Vector super;  // entries (i, i+1), length n-1

    std::size_t size() const { return diag.size(); }
    DenseMatrix to_dense() const;
};

struct GershgorinDisc {
    double center;
    double radius;
};

// Column discs of A (row discs of the transpose, which shares A's spectrum).
struct GershgorinReport {
    std::vector<GershgorinDisc> discs;
    double upper_bound;  // max_j (A_jj + sum_{i != j} |A_ij|)
};

// Dense LU with partial pivoting. Backs the general solve path and serves as
// the fallback when a structured route breaks down.
class LuFactorization {
public:
    explicit LuFactorization(DenseMatrix a);  // throws NumericalError when singular

    Vector solve(Vector rhs) const;
    DenseMatrix solve(DenseMatrix rhs) const;  // column-wise
    DenseMatrix inverse() const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

Vector lu_solve(const DenseMatrix& a, Vector rhs);
DenseMatrix lu_inverse(const DenseMatrix& a);

// e^{At} by scaling and squaring with a fixed-order diagonal Pade
// approximant; the scaled norm is brought below 1/2 before squaring.
DenseMatrix expm(const DenseMatrix& a, double t);

// Closed form for 2x2 systems: e^{At} = e^{n1 t} I + divided-difference term,
// switching to the limit form e^{nt}(I + t(A - nI)) for near-equal eigenvalues.
DenseMatrix expm_2x2_closed(const DenseMatrix& a, double t);

// Thomas algorithm; throws BreakdownError on a near-zero pivot.
Vector tridiag_solve(const TridiagonalMatrix& t, Vector rhs);

// Explicit tridiagonal inverse via the two-sided continuant recurrence;
// throws BreakdownError on a zero/non-finite continuant.
DenseMatrix tridiag_inverse(const TridiagonalMatrix& t);

// (M + U V^t)^{-1} from M^{-1} and the n-by-l factors U, V; throws
// BreakdownError when the inner l-by-l system is singular.
DenseMatrix smw_inverse(const DenseMatrix& m_inv, const DenseMatrix& u, const DenseMatrix& v);

GershgorinReport gershgorin(const DenseMatrix& a);

}  // namespace invnet
