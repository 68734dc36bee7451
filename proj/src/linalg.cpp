#include "unitri/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "unitri/polyroots.hpp"

namespace unitri {

namespace {

double abs2(double x) { return x * x; }
double abs2(Complex z) { return std::norm(z); }
double conj_of(double x) { return x; }
Complex conj_of(Complex z) { return std::conj(z); }

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows > kMaxDim || cols > kMaxDim) {
        throw InvalidInput("matrix dimension exceeds " + std::to_string(kMaxDim));
    }
}

} // namespace

template <typename T>
DenseMatrix<T>::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, T{}) {
    check_dims(rows, cols);
}

template <typename T>
DenseMatrix<T> DenseMatrix<T>::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
}

template <typename T>
DenseMatrix<T> DenseMatrix<T>::from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw InvalidInput("ragged matrix rows");
        std::size_t j = 0;
        for (const auto& x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

template <typename T>
DenseMatrix<T> DenseMatrix<T>::from_columns(std::span<const std::vector<T>> columns) {
    const std::size_t c = columns.size();
    const std::size_t r = c == 0 ? 0 : columns[0].size();
    DenseMatrix m(r, c);
    for (std::size_t j = 0; j < c; ++j) {
        if (columns[j].size() != r) throw InvalidInput("ragged matrix columns");
        for (std::size_t i = 0; i < r; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

template <typename T>
std::vector<T> DenseMatrix<T>::column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

template <typename T>
std::vector<T> DenseMatrix<T>::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

template <typename T>
void DenseMatrix<T>::set_column(std::size_t j, std::span<const T> values) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

template <typename T>
DenseMatrix<T>& DenseMatrix<T>::operator+=(const DenseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("shape mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

template <typename T>
DenseMatrix<T>& DenseMatrix<T>::operator-=(const DenseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("shape mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

template <typename T>
DenseMatrix<T>& DenseMatrix<T>::operator*=(T scale) {
    for (auto& x : data_) x *= scale;
    return *this;
}

template <typename T>
double DenseMatrix<T>::norm_fro() const {
    double s = 0.0;
    for (const auto& x : data_) s += abs2(x);
    return std::sqrt(s);
}

template <typename T>
double DenseMatrix<T>::max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
}

template <typename T>
bool DenseMatrix<T>::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) {
        if constexpr (std::is_same_v<T, Complex>) {
            return std::isfinite(x.real()) && std::isfinite(x.imag());
        } else {
            return std::isfinite(x);
        }
    });
}

template class DenseMatrix<Complex>;
template class DenseMatrix<double>;

namespace {

template <typename T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw InvalidInput("shape mismatch in *");
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

template <typename T>
std::vector<T> apply(const DenseMatrix<T>& a, std::span<const T> x) {
    if (a.cols() != x.size()) throw InvalidInput("shape mismatch in matrix-vector product");
    std::vector<T> y(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

} // namespace

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) { return multiply(a, b); }
Vector operator*(const ComplexMatrix& a, std::span<const Complex> x) { return apply(a, x); }
std::vector<double> operator*(const RealMatrix& a, std::span<const double> x) { return apply(a, x); }

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

RealMatrix transpose(const RealMatrix& m) {
    RealMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.all_finite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

Vector scaled(std::span<const Complex> x, Complex s) {
    Vector out(x.begin(), x.end());
    for (auto& z : out) z *= s;
    return out;
}

Vector axpy(Complex a, std::span<const Complex> x, std::span<const Complex> y) {
    Vector out(y.begin(), y.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * x[i];
    return out;
}

Vector unit_vector(std::size_t n, std::size_t k) {
    Vector e(n);
    e[k] = 1.0;
    return e;
}

ProjectivePoint::ProjectivePoint(std::span<const Complex> coords) : coords_(coords.begin(), coords.end()) {
    const double n = norm(coords_);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("projective point must be a finite nonzero vector");
    for (auto& z : coords_) z /= n;
    for (const auto& z : coords_) {
        if (std::abs(z) > 1e-12) {
            const Complex phase = std::conj(z) / std::abs(z);
            for (auto& w : coords_) w *= phase;
            break;
        }
    }
    // the pivot is real by construction; drop the rounding residue
    for (auto& z : coords_) {
        if (std::abs(z) > 1e-12) {
            z = Complex(z.real(), 0.0);
            break;
        }
    }
}

ProjectivePoint::ProjectivePoint(std::initializer_list<Complex> coords)
    : ProjectivePoint(std::span<const Complex>(coords.begin(), coords.size())) {}

double ProjectivePoint::distance(const ProjectivePoint& other) const {
    // |y - <x,y> x| keeps full relative accuracy for nearby points
    const Complex c = dot(coords_, other.coords_);
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) s += std::norm(other.coords_[i] - c * coords_[i]);
    return std::min(1.0, std::sqrt(s));
}

template <typename T>
Svd<T> svd(const DenseMatrix<T>& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    DenseMatrix<T> a = m;
    DenseMatrix<T> v = DenseMatrix<T>::identity(cols);
    constexpr double eps = 2.220446049250313e-16;

    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0;
                T gamma{};
                for (std::size_t i = 0; i < rows; ++i) {
                    alpha += abs2(a(i, p));
                    beta += abs2(a(i, q));
                    gamma += conj_of(a(i, p)) * a(i, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const T phase = gamma / g; // unit modulus
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // rotate (p, conj(phase) q) as a real pair, then restore the phase on q
                for (std::size_t i = 0; i < rows; ++i) {
                    const T ap = a(i, p);
                    const T aq = conj_of(phase) * a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = phase * (s * ap + c * aq);
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const T vp = v(i, p);
                    const T vq = conj_of(phase) * v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = phase * (s * vp + c * vq);
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += abs2(a(i, j));
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    Svd<T> out{DenseMatrix<T>(rows, cols), std::vector<double>(cols), DenseMatrix<T>(cols, cols)};
    for (std::size_t k = 0; k < cols; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = norms[j];
        for (std::size_t i = 0; i < cols; ++i) out.v(i, k) = v(i, j);
        if (norms[j] > 0.0) {
            for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = a(i, j) / norms[j];
        }
    }
    return out;
}

template Svd<Complex> svd(const ComplexMatrix&);
template Svd<double> svd(const RealMatrix&);

RankInfo rank_svd(const ComplexMatrix& m, double tol) {
    if (!(tol > 0.0)) throw InvalidInput("rank_svd: tol must be positive");
    // one-sided Jacobi on the wider orientation keeps the column count small
    const auto s = m.rows() < m.cols() ? svd(adjoint(m)) : svd(m);
    const std::size_t k = std::min(m.rows(), m.cols());
    RankInfo info;
    info.singular_values.assign(s.sigma.begin(), s.sigma.begin() + static_cast<std::ptrdiff_t>(k));
    const double smax = k == 0 ? 0.0 : info.singular_values[0];
    if (smax > 0.0) {
        for (double sv : info.singular_values)
            if (sv > tol * smax) ++info.rank;
    }
    return info;
}

double relative_singular_value(const ComplexMatrix& m, std::size_t k) {
    const auto info = rank_svd(m, kDefaultTol);
    if (k == 0 || k > info.singular_values.size()) return 0.0;
    const double smax = info.singular_values[0];
    return smax > 0.0 ? info.singular_values[k - 1] / smax : 0.0;
}

Vector smallest_right_singular_vector(const ComplexMatrix& m) {
    const auto s = svd(m);
    return s.v.column(m.cols() - 1);
}

template <typename T>
std::vector<T> solve_least_squares(const DenseMatrix<T>& a, std::span<const T> b, double rcond) {
    if (a.rows() != b.size()) throw InvalidInput("least squares: shape mismatch");
    const auto s = svd(a);
    const std::size_t n = a.cols();
    std::vector<T> x(n, T{});
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    if (smax == 0.0) return x;
    for (std::size_t k = 0; k < n; ++k) {
        if (s.sigma[k] <= rcond * smax) break;
        T coef{};
        for (std::size_t i = 0; i < a.rows(); ++i) coef += conj_of(s.u(i, k)) * b[i];
        coef /= s.sigma[k];
        for (std::size_t j = 0; j < n; ++j) x[j] += s.v(j, k) * coef;
    }
    return x;
}

template std::vector<Complex> solve_least_squares(const ComplexMatrix&, std::span<const Complex>, double);
template std::vector<double> solve_least_squares(const RealMatrix&, std::span<const double>, double);

Vector project_out(std::span<const Vector> orthonormal, std::span<const Complex> x) {
    Vector r(x.begin(), x.end());
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : orthonormal) {
            const Complex c = dot(q, r);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * q[i];
        }
    }
    return r;
}

std::vector<Vector> orthonormalize(std::span<const Vector> vectors, double tol) {
    std::vector<Vector> out;
    out.reserve(vectors.size());
    for (const auto& x : vectors) {
        const double nx = norm(x);
        Vector r = project_out(out, x);
        const double nr = norm(r);
        if (!(nr > tol * nx) || nr == 0.0) {
            throw DependentInput("orthonormalize: vector " + std::to_string(out.size()) +
                                 " is dependent on its predecessors");
        }
        for (auto& z : r) z /= nr;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Vector> complete_basis(std::span<const Vector> orthonormal, std::size_t n) {
    std::vector<Vector> basis(orthonormal.begin(), orthonormal.end());
    while (basis.size() < n) {
        Vector best;
        double best_norm = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            Vector r = project_out(basis, unit_vector(n, k));
            const double nr = norm(r);
            if (nr > best_norm) {
                best_norm = nr;
                best = std::move(r);
            }
        }
        for (auto& z : best) z /= best_norm;
        basis.push_back(std::move(best));
    }
    return basis;
}

Complex det3(const ComplexMatrix& m, std::size_t r0, std::size_t r1, std::size_t r2,
             std::size_t c0, std::size_t c1, std::size_t c2) {
    return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
           m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
           m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
}

Complex det(const ComplexMatrix& m) {
    if (!m.square()) throw InvalidInput("det: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (n == 3) return det3(m, 0, 1, 2, 0, 1, 2);
    // LU with partial pivoting
    ComplexMatrix a = m;
    Complex d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (a(p, k) == Complex{}) return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

ComplexMatrix adjugate(const ComplexMatrix& m) {
    if (!m.square() || m.rows() > 4) throw InvalidInput("adjugate: square n <= 4 required");
    const std::size_t n = m.rows();
    ComplexMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1.0;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // cofactor of (i, j) goes to adj(j, i)
            std::size_t rs[3], cs[3];
            std::size_t r = 0, c = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i) rs[r++] = k;
                if (k != j) cs[c++] = k;
            }
            Complex minor;
            if (n == 2) {
                minor = m(rs[0], cs[0]);
            } else if (n == 3) {
                minor = m(rs[0], cs[0]) * m(rs[1], cs[1]) - m(rs[0], cs[1]) * m(rs[1], cs[0]);
            } else {
                minor = det3(m, rs[0], rs[1], rs[2], cs[0], cs[1], cs[2]);
            }
            adj(j, i) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    }
    return adj;
}

std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m) {
    if (!m.square()) throw InvalidInput("characteristic polynomial: matrix must be square");
    // Faddeev-LeVerrier
    const std::size_t n = m.rows();
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    ComplexMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        ComplexMatrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        const ComplexMatrix amk = m * mk;
        Complex tr{};
        for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / static_cast<double>(k);
    }
    return c;
}

EigenResult eigen(const ComplexMatrix& m, double tol_eigen) {
    if (!m.square() || m.rows() == 0 || m.rows() > 4) throw InvalidInput("eigen: square n <= 4 required");
    require_finite(m, "eigen");
    const std::size_t n = m.rows();
    const double scale = m.norm_fro();
    EigenResult result;
    if (scale == 0.0) {
        for (std::size_t k = 0; k < n; ++k) result.pairs.push_back({0.0, unit_vector(n, k), n, 0.0});
        result.repeated = n > 1;
        return result;
    }
    if (n == 1) {
        result.pairs.push_back({m(0, 0), {1.0}, 1, 0.0});
        return result;
    }
    ComplexMatrix unit = m;
    unit *= Complex(1.0 / scale);
    RootOptions ro;
    ro.coefficient_noise = 64.0 * 2.220446049250313e-16;
    auto rts = roots(Polynomial(characteristic_polynomial(unit)), ro);
    for (auto& r : rts) r.value *= scale;
    for (const auto& r : rts) {
        ComplexMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= r.value;
        const auto s = svd(shifted);
        // a cluster of multiplicity k gets up to k independent null vectors
        const std::size_t want = r.multiplicity;
        for (std::size_t k = 0; k < want; ++k) {
            const std::size_t col = n - 1 - std::min(k, n - 1);
            Vector vec = s.v.column(col);
            // beyond the geometric multiplicity reuse the best vector
            if (k > 0 && s.sigma[col] > 1e-6 * scale) vec = s.v.column(n - 1);
            const Vector mv = m * vec;
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::norm(mv[i] - r.value * vec[i]);
            res = std::sqrt(res);
            result.pairs.push_back({r.value, ProjectivePoint(vec).coords(), r.multiplicity, res});
        }
        if (r.multiplicity > 1) result.repeated = true;
    }
    for (const auto& p : result.pairs) {
        // a defective cluster has an intrinsically inexact null vector
        const double allowed = p.multiplicity > 1 ? std::max(tol_eigen, 1e-4) : tol_eigen;
        if (p.residual > allowed * scale) {
            throw ConvergenceFailure("eigen: eigenvector residual " + std::to_string(p.residual / scale) +
                                     " exceeds tolerance");
        }
    }
    return result;
}

} // namespace unitri
