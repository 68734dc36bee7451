#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unitri/linalg.hpp"
#include "unitri/pencil.hpp"
#include "unitri/polyroots.hpp"

namespace unitri {

struct S3Result {
    bool ok = true;                         // pencil rank never drops by two
    std::optional<ProjectivePoint> witness; // [t0 : t1 : t2] with rank <= n - 2
    bool heuristic = false;                 // resultant degenerated; grid search used
    std::size_t candidates = 0;             // points examined after elimination
    double min_sigma = 0.0;                 // smallest sigma_{n-1} seen, unit t and unit-norm A
    std::string details;
};

struct GenericityReport {
    bool nonsingular = false;
    bool distinct_eigenvalues = false;
    bool pencil_rank_ok = false;
    std::vector<ProjectivePoint> common_eigenvectors;
    std::optional<ProjectivePoint> witness;
    bool heuristic = false;
    double sigma_ratio = 0.0;    // sigma_min / sigma_max of A
    double eigenvalue_gap = 0.0; // min pairwise gap divided by |A|_F
    std::string details;

    bool generic() const noexcept { return nonsingular && distinct_eigenvalues && pencil_rank_ok; }
};

bool check_s1(const ComplexMatrix& a, double tol = kDefaultTol);
bool check_s2(const ComplexMatrix& a, double tol_gap = 1e-6);
S3Result check_s3(const ComplexMatrix& a, double tol = 1e-8);

/// Eigenvectors of A that are also eigenvectors of A*, within tol * |A|_F.
std::vector<ProjectivePoint> common_eigenvectors(const ComplexMatrix& a, double tol = 1e-8);

GenericityReport classify(const ComplexMatrix& a, double tol = 1e-8);

/// det(t0 I + t1 A + t2 A*) as a form of degree n.
TernaryForm pencil_determinant(const Pencil& p);

/// Sum of the principal (n-1)-minors of the pencil, a form of degree n - 1.
TernaryForm pencil_exterior_trace(const Pencil& p);

/// The (n-1)-minor of the pencil with row `row` and column `col` deleted
/// (0-based), as a form of degree n - 1.
TernaryForm pencil_minor(const Pencil& p, std::size_t row, std::size_t col);

} // namespace unitri
