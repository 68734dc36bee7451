#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "unitri/linalg.hpp"

namespace unitri {

/// Univariate polynomial with complex coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);
    Polynomial(std::initializer_list<Complex> coeffs);

    /// Degree after trimming coefficients below 1e-14 * max|c_i|; -1 for zero.
    int degree() const;
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    Complex operator()(Complex z) const;
    Polynomial derivative() const;
    Polynomial trimmed(double rel = 1e-14) const;
    double max_abs_coeff() const;

    /// Interpolate a polynomial of degree <= degree_bound from samples of f
    /// on a circle of the given radius (inverse DFT).
    static Polynomial interpolate(const std::function<Complex(Complex)>& f,
                                  std::size_t degree_bound, double radius = 1.0);

private:
    std::vector<Complex> coeffs_;
};

struct Root {
    Complex value;
    std::size_t multiplicity = 1;
};

struct RootOptions {
    std::size_t max_iterations = 200;
    double cluster_tol = 1e-7;
    /// Absolute error of each coefficient as a fraction of max |c_i|. Widens the
    /// multiple-root test for polynomials built from rounded data.
    double coefficient_noise = 0.0;
};

/// All roots of p (degree >= 1) by Aberth-Ehrlich iteration, grouped into
/// clusters. Clustered roots are reported once with their multiplicity and
/// located at the cluster mean.
std::vector<Root> roots(const Polynomial& p, const RootOptions& opts = {});

/// roots() expanded so each root appears multiplicity times.
std::vector<Complex> roots_flat(const Polynomial& p, const RootOptions& opts = {});

/// Homogeneous form of degree <= 4 in (t0, t1, t2).
class TernaryForm {
public:
    TernaryForm() = default;
    explicit TernaryForm(int degree);

    int degree() const noexcept { return degree_; }
    /// Coefficient of t0^a t1^b t2^c (a + b + c == degree).
    Complex coeff(int a, int b, int c) const;
    void set_coeff(int a, int b, int c, Complex value);
    Complex operator()(std::span<const Complex> t) const;
    bool is_zero(double abs_tol = 0.0) const;
    double max_abs_coeff() const;

    /// Recover a form of the given degree from an evaluator; exact up to
    /// rounding (2-D DFT on the chart t0 = 1).
    static TernaryForm interpolate(const std::function<Complex(std::span<const Complex>)>& f,
                                   int degree);

private:
    int degree_ = 0;
    std::vector<Complex> coeffs_; // indexed by (b, c)
};

/// Cubic forms carry the minors of the pencil.
using BivariateCubic = TernaryForm;

/// Resultant of p and q, dehomogenized by t[chart] = 1, with variable
/// t[eliminate] eliminated. The result is a polynomial in the remaining
/// coordinate. Throws DegenerateResultant if it vanishes identically.
Polynomial resultant(const TernaryForm& p, const TernaryForm& q, int chart, int eliminate);

enum class NewtonStatus { converged, max_steps, singular_jacobian };

struct NewtonOptions {
    double tol = 1e-13;            // on ||f||_inf
    std::size_t max_steps = 60;
    double min_damping = 1.0 / 1024.0;
    double singular_rcond = 1e-14;
};

struct NewtonResult {
    std::vector<Complex> x;
    double residual = 0.0;
    std::size_t steps = 0;
    NewtonStatus status = NewtonStatus::max_steps;
    bool converged() const noexcept { return status == NewtonStatus::converged; }
};

/// Evaluates f(x) into `value` and its complex Jacobian into `jacobian`.
using HolomorphicSystem =
    std::function<void(std::span<const Complex> x, Vector& value, ComplexMatrix& jacobian)>;

/// Damped Newton for f: C^k -> C^m (m >= k allowed; steps are minimum-norm
/// least-squares). Line search halves the step until ||f||^2 decreases.
NewtonResult newton_system(const HolomorphicSystem& f, std::span<const Complex> start,
                           const NewtonOptions& opts = {});

} // namespace unitri
