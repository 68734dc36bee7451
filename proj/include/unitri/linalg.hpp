#pragma once

// Small dense complex linear algebra. Everything here is sized for the
// 3x3 / 4x4 / 4x7 problems of the tridiagonalization pipeline.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "unitri/errors.hpp"

namespace unitri {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Largest row or column count accepted by DenseMatrix.
inline constexpr std::size_t kMaxDim = 16;

/// Relative tolerance used by rank and nullspace decisions unless overridden.
inline constexpr double kDefaultTol = 1e-10;

template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<T>> rows);
    static DenseMatrix from_columns(std::span<const std::vector<T>> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    std::vector<T> column(std::size_t j) const;
    std::vector<T> row(std::size_t i) const;
    void set_column(std::size_t j, std::span<const T> values);

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(T scale);

    double norm_fro() const;
    double max_abs() const;
    bool all_finite() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<Complex>;
using RealMatrix = DenseMatrix<double>;

template <typename T>
DenseMatrix<T> operator+(DenseMatrix<T> a, const DenseMatrix<T>& b) { return a += b; }
template <typename T>
DenseMatrix<T> operator-(DenseMatrix<T> a, const DenseMatrix<T>& b) { return a -= b; }
template <typename T>
DenseMatrix<T> operator*(T s, DenseMatrix<T> a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
Vector operator*(const ComplexMatrix& a, std::span<const Complex> x);
std::vector<double> operator*(const RealMatrix& a, std::span<const double> x);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);
RealMatrix transpose(const RealMatrix& m);

void require_finite(const ComplexMatrix& m, const char* what);

// Vector helpers.
Complex dot(std::span<const Complex> x, std::span<const Complex> y); // x^H y
double norm(std::span<const Complex> x);
Vector scaled(std::span<const Complex> x, Complex s);
Vector axpy(Complex a, std::span<const Complex> x, std::span<const Complex> y); // a x + y
Vector unit_vector(std::size_t n, std::size_t k);

/// A nonzero complex vector up to scale, stored in canonical form: unit norm,
/// first coordinate with |c| > 1e-12 real and positive.
class ProjectivePoint {
public:
    ProjectivePoint() = default;
    explicit ProjectivePoint(std::span<const Complex> coords);
    ProjectivePoint(std::initializer_list<Complex> coords);

    const Vector& coords() const noexcept { return coords_; }
    std::size_t size() const noexcept { return coords_.size(); }
    Complex operator[](std::size_t i) const { return coords_[i]; }

    /// sqrt(1 - |<x,y>|^2), the sine of the Fubini-Study angle.
    double distance(const ProjectivePoint& other) const;

private:
    Vector coords_;
};

template <typename T>
struct Svd {
    DenseMatrix<T> u;             // rows x cols, columns are left vectors (zero where sigma is 0)
    std::vector<double> sigma;    // length cols, nonincreasing
    DenseMatrix<T> v;             // cols x cols, unitary
};

/// One-sided Jacobi SVD. Works for any shape up to kMaxDim.
template <typename T>
Svd<T> svd(const DenseMatrix<T>& m);

struct RankInfo {
    std::size_t rank = 0;
    std::vector<double> singular_values; // min(rows, cols) values, nonincreasing
};

/// Rank with singular values counted above tol * sigma_max.
RankInfo rank_svd(const ComplexMatrix& m, double tol = kDefaultTol);

/// Ratio sigma_k / sigma_1 (k is 1-based); zero for the zero matrix.
double relative_singular_value(const ComplexMatrix& m, std::size_t k);

/// Unit right singular vector of the smallest singular value.
Vector smallest_right_singular_vector(const ComplexMatrix& m);

/// Minimum-norm least-squares solution with singular values below
/// rcond * sigma_max discarded.
template <typename T>
std::vector<T> solve_least_squares(const DenseMatrix<T>& a, std::span<const T> b,
                                   double rcond = 1e-13);

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws
/// DependentInput when a residual falls to tol times the vector's norm.
std::vector<Vector> orthonormalize(std::span<const Vector> vectors, double tol = kDefaultTol);

/// Residual of x after removing its components along the orthonormal set.
Vector project_out(std::span<const Vector> orthonormal, std::span<const Complex> x);

/// Extend an orthonormal family to an orthonormal basis of C^n.
std::vector<Vector> complete_basis(std::span<const Vector> orthonormal, std::size_t n);

Complex det(const ComplexMatrix& m);
Complex det3(const ComplexMatrix& m, std::size_t r0, std::size_t r1, std::size_t r2,
             std::size_t c0, std::size_t c1, std::size_t c2);
/// Classical adjugate by cofactors; valid for singular matrices. n <= 4.
ComplexMatrix adjugate(const ComplexMatrix& m);

/// Monic characteristic polynomial coefficients in ascending order.
std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m);

struct EigenPair {
    Complex value;
    Vector vector;           // unit norm
    std::size_t multiplicity = 1;
    double residual = 0.0;   // ||M v - lambda v||
};

struct EigenResult {
    std::vector<EigenPair> pairs;
    bool repeated = false;   // at least one cluster of size > 1
};

/// Eigenpairs of a square matrix (n <= 4): roots of the characteristic
/// polynomial, then nullspace vectors of M - lambda I. Clustered roots are
/// replaced by their mean.
EigenResult eigen(const ComplexMatrix& m, double tol_eigen = 1e-8);

} // namespace unitri
