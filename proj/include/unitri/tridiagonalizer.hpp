#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unitri/linalg.hpp"
#include "unitri/pencil.hpp"

namespace unitri {

enum class Provenance {
    section_zero,
    shortcut_dimW3,
    common_eigenvector_deflation,
    cubic_curve_3x3,
    trivial,
    perturbed,
};

const char* to_string(Provenance p);

/// Orthonormal f_1..f_n whose prefix spans W_1 c W_2 c ... satisfy
/// A W_i c W_{i+1} and A* W_i c W_{i+1}.
struct Flag {
    std::vector<Vector> basis;
    Provenance provenance = Provenance::section_zero;
};

struct TridiagOptions {
    double tol = 1e-8;                 // on the off-tridiagonal residual relative to |A|_F
    SweepOptions sweep{};              // full sweep; a coarse pass runs first
    std::size_t coarse_samples = 96;   // 0 disables the coarse pass
    std::size_t max_restarts = 8;      // random lines for the 3x3 cubic
    bool force_perturbation = false;   // go straight to perturb_and_retry (n >= 3)
    bool all_flags = false;            // collect every certified section zero
    std::uint64_t seed = 42;
};

struct TridiagResult {
    ComplexMatrix U;
    ComplexMatrix T;
    double off_residual = 0.0;        // max |T_ij|, |i - j| >= 2, divided by |A|_F
    double unitarity_residual = 0.0;  // |U U* - I|_F
    Provenance provenance = Provenance::trivial;
    double perturbation = 0.0;        // epsilon relative to |A|_F, 0 if unused
    bool polished = false;            // U refined on the unitary group
    std::uint64_t seed = 0;
    Flag flag;
    std::vector<SectionCandidate> candidates; // filled when all_flags is set
    std::string diagnostics;
};

struct VerifyReport {
    double off_residual = 0.0;
    double unitarity_residual = 0.0;
    double spectrum_gap = 0.0;  // greedy-matched eigenvalue gap divided by |A|_F
    bool consistent = false;    // recomputed residuals agree with the result's claims
};

TridiagResult tridiagonalize(const ComplexMatrix& a, const TridiagOptions& opts = {});
TridiagResult tridiagonalize3(const ComplexMatrix& a, const TridiagOptions& opts = {});
TridiagResult deflate_common_eigenvector(const ComplexMatrix& a, const ProjectivePoint& v,
                                         const TridiagOptions& opts = {});
TridiagResult perturb_and_retry(const ComplexMatrix& a, const TridiagOptions& opts = {});

/// Flag from a certified section zero. Throws FlagDegenerate when no third
/// vector can be found or the containments fail by more than tol.
Flag build_flag(const ComplexMatrix& a, const SectionCandidate& candidate, double tol = 1e-8);

/// U with rows f_i^*, so that U* e_i = f_i.
ComplexMatrix flag_to_unitary(const Flag& flag);

/// Flag read off the rows of a unitary.
Flag unitary_to_flag(const ComplexMatrix& u, Provenance provenance);

VerifyReport verify(const TridiagResult& result, const ComplexMatrix& a);

/// max |T_ij| over |i - j| >= 2.
double off_tridiagonal(const ComplexMatrix& t);

/// Worst of |P_{W_{i+1}}^perp A f_j| and the same for A*, over j <= i, divided by |A|_F.
double flag_condition_ii(const ComplexMatrix& a, const Flag& flag);

/// Worst |<w, A u>| over w in W_i and u in W_{i+1}^perp, divided by |A|_F.
double flag_condition_iii(const ComplexMatrix& a, const Flag& flag);

/// Gauss-Newton on the unitary group driving the off-tridiagonal entries of
/// U A U* to zero; returns the improved U (or the input if nothing helps).
ComplexMatrix polish_unitary(const ComplexMatrix& a, ComplexMatrix u, std::size_t max_iterations = 60);

} // namespace unitri
