#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unitri/linalg.hpp"

namespace unitri {

/// The matrix family t0 I + t1 A + t2 A* attached to a square matrix A.
class Pencil {
public:
    explicit Pencil(ComplexMatrix a);

    std::size_t n() const noexcept { return a_.rows(); }
    const ComplexMatrix& A() const noexcept { return a_; }
    const ComplexMatrix& Astar() const noexcept { return astar_; }
    const ComplexMatrix& A2() const noexcept { return a2_; }
    const ComplexMatrix& Astar2() const noexcept { return astar2_; }
    double norm() const noexcept { return norm_; }

private:
    ComplexMatrix a_, astar_, a2_, astar2_;
    double norm_ = 0.0;
};

/// A point of the curve D together with its kernel vector on C.
struct PencilPoint {
    ProjectivePoint t;        // [t0 : t1 : t2]
    ProjectivePoint v;        // kernel of the pencil matrix at t
    std::size_t sheet = 0;    // eigenvalue index within its fiber
    ProjectivePoint base;     // [t1 : t2]
    bool near_branch = false; // fiber eigenvalues closer than the gap tolerance
};

struct SectionValue {
    Complex h;            // det[v, Av, A^2 v, A*^2 v] with unit-norm v
    double h_normalized;  // |h| / (|v| |Av| |A^2 v| |A*^2 v|)
    double sigma4;        // sigma_4 / sigma_1 of [v, Av, A*v, A^2v, AA*v, A*Av, A*^2v]
};

struct SectionCandidate {
    PencilPoint point;
    Complex h_value;
    double sigma4 = 0.0;
    double curve_residual = 0.0;
    double jacobian_rcond = 0.0;
    bool shortcut = false; // dim W3(v) = 2 for A or for A*
    bool accepted = false;
    std::string rejection;  // empty when accepted
};

ComplexMatrix pencil_matrix(const Pencil& p, const ProjectivePoint& t);

/// The points of D over a base point [t1 : t2]: eigenpairs (lambda, v) of
/// t1 A + t2 A* give t = [-lambda : t1 : t2] with kernel vector v.
std::vector<PencilPoint> theta_fiber(const Pencil& p, const ProjectivePoint& base, double gap_tol = 1e-6);

/// Unit null vector of the pencil matrix at t. Throws RankDeficientPencil when
/// the second-smallest singular value is also below tol * sigma_max.
ProjectivePoint kernel_vector(const Pencil& p, const ProjectivePoint& t, double tol = 1e-10);

/// Largest 3x3 minor of [v; Av; A*v] divided by |v| |Av| |A*v|.
double curve_c_residual(const Pencil& p, std::span<const Complex> v);

SectionValue section_residual(const Pencil& p, std::span<const Complex> v);

/// sigma_k / sigma_1 of the matrix with the given columns.
double relative_sigma(std::span<const Vector> columns, std::size_t k);

/// Holomorphic homogeneous equations on C^n used to cut points out of C.
/// Overdetermined sets are allowed; Newton then takes least-squares steps.
struct CurveFunction {
    std::size_t equations = 1;
    /// Writes the values and, when jac is non-null, the equations x n Jacobian.
    std::function<void(std::span<const Complex> v, Vector& values, ComplexMatrix* jac)> eval;
    /// Scale-free magnitude used to rank sweep samples.
    std::function<double(std::span<const Complex> v)> magnitude;
};

CurveFunction section_function(const Pencil& p);
CurveFunction linear_function(Vector c);

struct SweepOptions {
    std::size_t samples = 720;        // base points on P^1
    std::size_t random_restarts = 0;  // extra random base points (all four sheets seed Newton)
    std::size_t neighbours = 8;
    std::size_t best_starts = 24;     // lowest samples always used as starts
    double gap_tol = 1e-6;
    double dedup_tol = 1e-6;
    double tol_section = 1e-8;
    double singular_rcond = 1e-6;     // Jacobian rcond below this marks a multiple zero
    std::uint64_t seed = 42;
    std::size_t threads = 0;          // 0: TRIDIAG_THREADS or hardware concurrency
};

struct CurveZero {
    PencilPoint point;
    double residual = 0.0;
    double jacobian_rcond = 0.0;
    bool multiple = false;
};

/// Zeros of f restricted to C: a sweep over the theta-fibration ranks samples
/// by f.magnitude, then Newton on the projective system
///   (t0 I + t1 A + t2 A*) v = 0, f(v) = 0
/// polishes local minima. Distinct converged zeros are returned in the order
/// their starts were tried. If stop is set and returns true for a zero, the
/// search ends there.
std::vector<CurveZero> curve_zeros(const Pencil& p, const CurveFunction& f, const SweepOptions& opts,
                                   const std::function<bool(const CurveZero&)>& stop = {});

/// The point of D over v in C: t spans the kernel of the n x 3 matrix
/// [v, Av, A*v], so that (t0 I + t1 A + t2 A*) v = 0.
PencilPoint curve_point(const Pencil& p, std::span<const Complex> v);

/// Newton from a single start; nullopt if it does not converge.
std::optional<CurveZero> polish_curve_point(const Pencil& p, const CurveFunction& f, const PencilPoint& start,
                                            const SweepOptions& opts = {});

/// Certify a zero of the section proxy: sigma4 test, dim W(v) = 2, and not an
/// eigenvector of A or A*.
SectionCandidate certify_section_zero(const Pencil& p, const CurveZero& z, double tol_section = 1e-8);

/// Certified zeros of the section on C, sorted by sigma4. Throws
/// NoSectionZero when nothing passes. If stop is set it is called on each
/// accepted candidate as soon as it is found; returning true ends the search.
std::vector<SectionCandidate> section_zeros(const Pencil& p, const SweepOptions& opts = {},
                                            const std::function<bool(const SectionCandidate&)>& stop = {});

/// Worker count: opts value, else TRIDIAG_THREADS, else hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

} // namespace unitri
