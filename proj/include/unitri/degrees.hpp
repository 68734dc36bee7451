#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitri/linalg.hpp"
#include "unitri/pencil.hpp"

namespace unitri {

/// One point found by a counting experiment.
struct CountedPoint {
    Vector location;            // root parameter (D) or unit vector on C
    std::size_t multiplicity = 1;
    double residual = 0.0;
    bool near_branch = false;
};

/// Outcome of one counting experiment on one random line or hyperplane.
struct CountTrial {
    std::size_t count = 0;      // with multiplicity
    std::vector<CountedPoint> points;
    std::string note;
};

/// Repeated counting experiment; `count` is the modal value.
struct CountSummary {
    std::size_t count = 0;
    bool stable = true;         // every trial agreed
    double agreement = 1.0;     // fraction of trials equal to the mode
    std::vector<CountTrial> trials;
};

/// Intersect D with `lines` random lines of P^2 and count roots of the
/// restricted determinant with multiplicity. The restriction is interpolated
/// with room for degree 8 so the observed degree is measured, not assumed.
CountSummary degree_of_D(const Pencil& p, std::size_t lines = 10, std::uint64_t seed = 42);

/// Points of C on the hyperplane sum_i c_i v_i = 0; zeros flagged as
/// multiple count twice.
CountTrial curve_hyperplane_count(const Pencil& p, const Vector& c, const SweepOptions& opts = {});

/// curve_hyperplane_count over `hyperplanes` random hyperplanes.
CountSummary degree_of_C(const Pencil& p, std::size_t hyperplanes = 1, std::uint64_t seed = 42,
                         const SweepOptions& opts = {});

/// Sweep settings used for exhaustive section-zero counts.
SweepOptions exhaustive_sweep(std::uint64_t seed = 42);

/// Accepted section zeros under exhaustive_sweep-style settings.
CountTrial section_zero_count(const Pencil& p, const SweepOptions& opts = exhaustive_sweep());

struct DegreeOptions {
    std::size_t trials = 10;     // one random line and one random hyperplane per trial
    std::uint64_t seed = 42;
    SweepOptions sweep{};        // used for the hyperplane counts
    SweepOptions exhaustive = exhaustive_sweep();
    bool force = false;          // run even when the genericity screen fails
    bool strict = false;         // throw UnstableCount when trials disagree
};

struct DegreeTrialDetail {
    std::size_t index = 0;
    CountTrial deg_D;
    CountTrial deg_C;
};

struct DegreeReport {
    std::size_t deg_D_observed = 0;
    std::size_t deg_C_observed = 0;
    std::size_t section_zero_count = 0;
    std::size_t trials = 0;
    bool deg_D_stable = true;
    bool deg_C_stable = true;
    double deg_C_agreement = 1.0;
    bool skipped = false;
    std::string notice;
    std::vector<DegreeTrialDetail> per_trial_detail;
    CountTrial section_zeros;
};

DegreeReport run_degree_experiments(const ComplexMatrix& a, const DegreeOptions& opts = {});

} // namespace unitri
