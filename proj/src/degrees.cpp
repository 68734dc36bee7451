#include "unitri/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "unitri/errors.hpp"
#include "unitri/genericity.hpp"
#include "unitri/polyroots.hpp"

namespace unitri {

namespace {

Vector random_unit(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vector x(n);
    for (auto& z : x) z = Complex(nd(rng), nd(rng));
    return scaled(x, 1.0 / norm(x));
}

void summarize(CountSummary& s) {
    std::map<std::size_t, std::size_t> freq;
    for (const auto& t : s.trials) ++freq[t.count];
    std::size_t best = 0;
    for (const auto& [count, k] : freq)
        if (k > best) {
            best = k;
            s.count = count;
        }
    s.stable = freq.size() <= 1;
    s.agreement = s.trials.empty() ? 1.0 : static_cast<double>(best) / static_cast<double>(s.trials.size());
}

CountTrial count_on_line(const Pencil& unit, std::mt19937_64& rng) {
    const Vector p = random_unit(3, rng), q = random_unit(3, rng);
    const auto restricted = [&](Complex s) {
        const Vector t = axpy(s, q, p);
        ComplexMatrix m = t[1] * unit.A() + t[2] * unit.Astar();
        for (std::size_t i = 0; i < unit.n(); ++i) m(i, i) += t[0];
        return det(m);
    };
    const Polynomial g = Polynomial::interpolate(restricted, 8, 1.0).trimmed(1e-12);
    CountTrial trial;
    const int d = g.degree();
    if (d < 0) {
        trial.note = "determinant vanishes on the whole line";
        return trial;
    }
    if (d > 0) {
        for (const auto& r : roots(g)) {
            CountedPoint pt;
            pt.location = {r.value};
            pt.multiplicity = r.multiplicity;
            pt.residual = std::abs(g(r.value)) / (g.max_abs_coeff() * std::pow(1.0 + std::abs(r.value), d));
            trial.count += r.multiplicity;
            trial.points.push_back(std::move(pt));
        }
    }
    if (d < static_cast<int>(unit.n())) {
        // the line meets D where the parameter runs off to infinity
        const std::size_t extra = unit.n() - static_cast<std::size_t>(d);
        ComplexMatrix m = q[1] * unit.A() + q[2] * unit.Astar();
        for (std::size_t i = 0; i < unit.n(); ++i) m(i, i) += q[0];
        const double at_inf = std::abs(det(m));
        if (at_inf <= 1e-10) {
            trial.points.push_back({q, extra, at_inf, false});
            trial.count += extra;
        }
    }
    std::ostringstream note;
    note << "restricted degree " << d;
    trial.note = note.str();
    return trial;
}

} // namespace

CountSummary degree_of_D(const Pencil& p, std::size_t lines, std::uint64_t seed) {
    if (p.n() == 0) throw InvalidInput("degree_of_D: empty matrix");
    const double scale = p.norm() > 0.0 ? p.norm() : 1.0;
    ComplexMatrix a = p.A();
    a *= Complex(1.0 / scale);
    const Pencil unit(a);
    std::mt19937_64 rng(seed);
    CountSummary s;
    for (std::size_t i = 0; i < lines; ++i) s.trials.push_back(count_on_line(unit, rng));
    summarize(s);
    return s;
}

CountTrial curve_hyperplane_count(const Pencil& p, const Vector& c, const SweepOptions& opts) {
    if (c.size() != p.n()) throw InvalidInput("curve_hyperplane_count: hyperplane has the wrong length");
    const auto f = linear_function(c);
    const auto zeros = curve_zeros(p, f, opts);
    CountTrial trial;
    const double cn = norm(c);
    for (const auto& z : zeros) {
        CountedPoint pt;
        pt.location = z.point.v.coords();
        pt.multiplicity = z.multiple ? 2 : 1;
        pt.near_branch = z.point.near_branch;
        Complex s{};
        for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * pt.location[i];
        pt.residual = std::max(std::abs(s) / cn, curve_c_residual(p, pt.location));
        trial.count += pt.multiplicity;
        trial.points.push_back(std::move(pt));
    }
    const auto near = std::count_if(trial.points.begin(), trial.points.end(),
                                    [](const CountedPoint& q) { return q.near_branch; });
    std::ostringstream note;
    note << zeros.size() << " distinct zeros";
    if (near > 0) note << ", " << near << " near a branch point";
    trial.note = note.str();
    return trial;
}

CountSummary degree_of_C(const Pencil& p, std::size_t hyperplanes, std::uint64_t seed, const SweepOptions& opts) {
    std::mt19937_64 rng(seed ^ 0xc0ffeeULL);
    CountSummary s;
    for (std::size_t i = 0; i < hyperplanes; ++i) {
        SweepOptions o = opts;
        o.seed = opts.seed + i;
        s.trials.push_back(curve_hyperplane_count(p, random_unit(p.n(), rng), o));
    }
    summarize(s);
    return s;
}

SweepOptions exhaustive_sweep(std::uint64_t seed) {
    SweepOptions o;
    o.samples = 2880;
    o.random_restarts = 64;
    o.seed = seed;
    return o;
}

CountTrial section_zero_count(const Pencil& p, const SweepOptions& opts) {
    CountTrial trial;
    std::vector<SectionCandidate> zeros;
    try {
        zeros = section_zeros(p, opts);
    } catch (const NoSectionZero&) {
        trial.note = "no section zero found";
        return trial;
    }
    for (const auto& z : zeros) {
        CountedPoint pt;
        pt.location = z.point.v.coords();
        pt.residual = z.sigma4;
        pt.near_branch = z.point.near_branch;
        trial.points.push_back(std::move(pt));
    }
    trial.count = trial.points.size();
    trial.note = std::to_string(trial.count) + " certified zeros";
    return trial;
}

DegreeReport run_degree_experiments(const ComplexMatrix& a, const DegreeOptions& opts) {
    if (!a.square() || a.rows() != 4) throw InvalidInput("degree experiments need a 4x4 matrix");
    require_finite(a, "degree experiments");
    DegreeReport rep;
    rep.trials = opts.trials;
    const GenericityReport screen = classify(a);
    if (!opts.force) {
        if (!screen.common_eigenvectors.empty()) {
            rep.skipped = true;
            rep.notice = "skipped: A and A* share an eigenvector, so the deflation path applies";
            return rep;
        }
        if (!screen.generic()) {
            rep.skipped = true;
            rep.notice = "skipped: matrix fails the genericity screen (" + screen.details + ")";
            return rep;
        }
    }
    const double scale = a.norm_fro();
    if (scale == 0.0) throw InvalidInput("degree experiments need a nonzero matrix");
    ComplexMatrix ah = a;
    ah *= Complex(1.0 / scale);
    const Pencil p(ah);

    const CountSummary d = degree_of_D(p, opts.trials, opts.seed);
    const CountSummary c = degree_of_C(p, opts.trials, opts.seed, opts.sweep);
    rep.deg_D_observed = d.count;
    rep.deg_D_stable = d.stable;
    rep.deg_C_observed = c.count;
    rep.deg_C_stable = c.stable;
    rep.deg_C_agreement = c.agreement;
    for (std::size_t i = 0; i < opts.trials; ++i) rep.per_trial_detail.push_back({i, d.trials[i], c.trials[i]});
    rep.section_zeros = section_zero_count(p, opts.exhaustive);
    rep.section_zero_count = rep.section_zeros.count;
    if (!d.stable || !c.stable) {
        std::ostringstream msg;
        msg << "trial counts disagree (deg D modal " << d.count << ", deg C modal " << c.count << " with agreement "
            << c.agreement << ")";
        rep.notice = msg.str();
        if (opts.strict) throw UnstableCount(msg.str());
    }
    return rep;
}

} // namespace unitri
