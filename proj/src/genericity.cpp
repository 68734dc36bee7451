#include "unitri/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "unitri/errors.hpp"

namespace unitri {

namespace {

ComplexMatrix evaluate_pencil(const ComplexMatrix& a, const ComplexMatrix& as, std::span<const Complex> t) {
    ComplexMatrix m = t[1] * a + t[2] * as;
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, i) += t[0];
    return m;
}

ComplexMatrix delete_row_col(const ComplexMatrix& m, std::size_t row, std::size_t col) {
    ComplexMatrix out(m.rows() - 1, m.cols() - 1);
    for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
            if (j == col) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

Complex minor_det(const ComplexMatrix& m) { return m.rows() == 0 ? Complex(1.0) : det(m); }

// sigma_{n-1} of the pencil at the unit representative of t (A has unit
// Frobenius norm). A ratio against sigma_1 would miss points where the whole
// pencil vanishes, since every singular value shrinks together near them.
double pencil_sigma(const ComplexMatrix& a, const ComplexMatrix& as, std::span<const Complex> t) {
    const std::size_t n = a.rows();
    if (n < 2) return 1.0;
    const Vector u = scaled(t, 1.0 / norm(t));
    const auto info = rank_svd(evaluate_pencil(a, as, u), kDefaultTol);
    return info.singular_values[n - 2];
}

// Gauss-Newton on all (n-1)-minors in the chart where the largest coordinate
// of the start is fixed to 1.
Vector refine_on_minors(const ComplexMatrix& a, const ComplexMatrix& as, Vector t) {
    const std::size_t n = a.rows();
    if (n < 2) return t;
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(t[i]) > std::abs(t[k])) k = i;
    const Complex pivot = t[k];
    for (auto& z : t) z /= pivot;
    std::array<std::size_t, 2> free{};
    for (std::size_t i = 0, f = 0; i < 3; ++i)
        if (i != k) free[f++] = i;
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix* dirs[3] = {&id, &a, &as};

    const HolomorphicSystem sys = [&](std::span<const Complex> x, Vector& val, ComplexMatrix& jac) {
        Vector tt = t;
        tt[free[0]] = x[0];
        tt[free[1]] = x[1];
        const ComplexMatrix p = evaluate_pencil(a, as, tt);
        val.assign(n * n, Complex{});
        jac = ComplexMatrix(n * n, 2);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const ComplexMatrix sub = delete_row_col(p, r, c);
                val[r * n + c] = minor_det(sub);
                if (sub.rows() == 0) continue;
                const ComplexMatrix adj = adjugate(sub);
                for (std::size_t f = 0; f < 2; ++f) {
                    // d det(S) = tr(adj(S) dS)
                    const ComplexMatrix ds = delete_row_col(*dirs[free[f]], r, c);
                    Complex tr{};
                    for (std::size_t i = 0; i < sub.rows(); ++i)
                        for (std::size_t j = 0; j < sub.rows(); ++j) tr += adj(i, j) * ds(j, i);
                    jac(r * n + c, f) = tr;
                }
            }
        }
    };
    const Vector x0 = {t[free[0]], t[free[1]]};
    NewtonOptions opts;
    // high-multiplicity points converge linearly, so run to stagnation
    opts.tol = 1e-300;
    opts.max_steps = 120;
    const auto r = newton_system(sys, x0, opts);
    Vector out = t;
    if (std::isfinite(std::abs(r.x[0])) && std::isfinite(std::abs(r.x[1]))) {
        Vector cand = t;
        cand[free[0]] = r.x[0];
        cand[free[1]] = r.x[1];
        if (pencil_sigma(a, as, cand) <= pencil_sigma(a, as, t)) out = cand;
    }
    return out;
}

struct Search {
    const ComplexMatrix& a;
    const ComplexMatrix& as;
    double tol;
    S3Result result;
    bool found = false;

    void consider(Vector t) {
        if (found) return;
        ++result.candidates;
        t = refine_on_minors(a, as, std::move(t));
        const double s = pencil_sigma(a, as, t);
        if (result.candidates == 1 || s < result.min_sigma) result.min_sigma = s;
        if (s <= tol) {
            found = true;
            result.ok = false;
            result.witness = ProjectivePoint(t);
        }
    }
};

Polynomial slice(const TernaryForm& f, int chart, int eliminate, Complex s) {
    const int remaining = 3 - chart - eliminate;
    return Polynomial::interpolate(
        [&](Complex x) {
            Complex t[3];
            t[chart] = 1.0;
            t[remaining] = s;
            t[eliminate] = x;
            return f(t);
        },
        static_cast<std::size_t>(f.degree()), 1.0);
}

std::vector<Complex> safe_roots(const Polynomial& p) {
    try {
        if (p.degree() < 1) return {};
        std::vector<Complex> out;
        for (const auto& r : roots(p)) out.push_back(r.value);
        return out;
    } catch (const Error&) {
        return {};
    }
}

void grid_search(const Pencil& pencil, Search& search) {
    const std::size_t samples = 360;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<std::pair<double, Vector>> best;
    for (std::size_t i = 0; i < samples; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
        const double theta = std::acos(z);
        const double phi = golden * static_cast<double>(i);
        const ProjectivePoint base{Complex(std::cos(theta / 2.0)), std::polar(std::sin(theta / 2.0), phi)};
        std::vector<PencilPoint> fiber;
        try {
            fiber = theta_fiber(pencil, base);
        } catch (const Error&) {
            continue;
        }
        for (const auto& pt : fiber) {
            Vector t = pt.t.coords();
            const double s = pencil_sigma(search.a, search.as, t);
            best.emplace_back(s, std::move(t));
        }
    }
    std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < std::min<std::size_t>(best.size(), 8); ++i) search.consider(best[i].second);
}

} // namespace

TernaryForm pencil_determinant(const Pencil& p) {
    if (p.n() > 4) throw InvalidInput("pencil_determinant: n <= 4 required");
    return TernaryForm::interpolate(
        [&](std::span<const Complex> t) { return det(evaluate_pencil(p.A(), p.Astar(), t)); },
        static_cast<int>(p.n()));
}

TernaryForm pencil_exterior_trace(const Pencil& p) {
    if (p.n() > 4) throw InvalidInput("pencil_exterior_trace: n <= 4 required");
    return TernaryForm::interpolate(
        [&](std::span<const Complex> t) {
            const ComplexMatrix m = evaluate_pencil(p.A(), p.Astar(), t);
            Complex s{};
            for (std::size_t i = 0; i < p.n(); ++i) s += minor_det(delete_row_col(m, i, i));
            return s;
        },
        static_cast<int>(p.n()) - 1);
}

TernaryForm pencil_minor(const Pencil& p, std::size_t row, std::size_t col) {
    if (p.n() > 4 || row >= p.n() || col >= p.n()) throw InvalidInput("pencil_minor: index out of range");
    return TernaryForm::interpolate(
        [&](std::span<const Complex> t) {
            return minor_det(delete_row_col(evaluate_pencil(p.A(), p.Astar(), t), row, col));
        },
        static_cast<int>(p.n()) - 1);
}

bool check_s1(const ComplexMatrix& a, double tol) {
    const auto info = rank_svd(a, tol);
    return info.rank == a.rows();
}

bool check_s2(const ComplexMatrix& a, double tol_gap) {
    const auto ev = eigen(a);
    if (ev.repeated) return false;
    const double scale = a.norm_fro();
    for (std::size_t i = 0; i < ev.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < ev.pairs.size(); ++j)
            if (std::abs(ev.pairs[i].value - ev.pairs[j].value) <= tol_gap * scale) return false;
    return true;
}

S3Result check_s3(const ComplexMatrix& a_in, double tol) {
    if (!a_in.square() || a_in.rows() == 0 || a_in.rows() > 4) throw InvalidInput("check_s3: n <= 4 required");
    require_finite(a_in, "check_s3");
    const std::size_t n = a_in.rows();
    const double scale = a_in.norm_fro();
    if (n == 1) return {};
    if (scale == 0.0) {
        S3Result r;
        r.ok = false;
        r.witness = ProjectivePoint{0.0, 1.0, 0.0};
        r.details = "zero matrix: the pencil vanishes at [0:1:0]";
        return r;
    }
    ComplexMatrix a = a_in;
    a *= Complex(1.0 / scale);
    const Pencil pencil(a);
    const ComplexMatrix& as = pencil.Astar();
    Search search{a, as, tol, {}, false};

    const TernaryForm g = pencil_determinant(pencil);
    const TernaryForm e = pencil_exterior_trace(pencil);
    std::ostringstream details;
    bool degenerate = false;
    // A fixed pseudo-random change of coordinates per chart keeps common zeros
    // away from the line at infinity, where the formal-degree resultant would
    // vanish identically without the forms sharing a component.
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int chart = 0; chart < 3 && !search.found; ++chart) {
        ComplexMatrix change(3, 3);
        for (auto& z : change.data()) z = Complex(nd(rng), nd(rng));
        const auto transformed = [&](const TernaryForm& f) {
            return TernaryForm::interpolate([&](std::span<const Complex> s) { return f(change * s); }, f.degree());
        };
        const TernaryForm gc = transformed(g), ec = transformed(e);
        const int eliminate = (chart + 1) % 3;
        Polynomial res;
        try {
            res = resultant(gc, ec, chart, eliminate);
        } catch (const DegenerateResultant&) {
            degenerate = true;
            break;
        }
        for (const Complex s : safe_roots(res)) {
            std::vector<Complex> xs = safe_roots(slice(ec, chart, eliminate, s));
            const auto gx = safe_roots(slice(gc, chart, eliminate, s));
            xs.insert(xs.end(), gx.begin(), gx.end());
            for (const Complex x : xs) {
                Vector u(3);
                u[static_cast<std::size_t>(chart)] = 1.0;
                u[static_cast<std::size_t>(3 - chart - eliminate)] = s;
                u[static_cast<std::size_t>(eliminate)] = x;
                search.consider(change * std::span<const Complex>(u));
                if (search.found) break;
            }
            if (search.found) break;
        }
    }
    if (degenerate && !search.found) {
        search.result.heuristic = true;
        grid_search(pencil, search);
        details << "determinant and exterior trace share a component; grid search over D used. ";
    }
    S3Result out = search.result;
    if (out.witness) {
        // back from the unit-norm matrix to the caller's A
        Vector w = out.witness->coords();
        w[1] /= scale;
        w[2] /= scale;
        out.witness = ProjectivePoint(w);
    }
    if (out.ok) {
        details << "no rank <= " << n - 2 << " point among " << out.candidates
                << " candidates; smallest sigma_" << n - 1 << " " << out.min_sigma;
    } else {
        details << "rank drops to <= " << n - 2 << " at the witness (sigma_" << n - 1 << " = " << out.min_sigma << ")";
    }
    out.details = details.str();
    return out;
}

std::vector<ProjectivePoint> common_eigenvectors(const ComplexMatrix& a, double tol) {
    if (!a.square() || a.rows() == 0 || a.rows() > 4) throw InvalidInput("common_eigenvectors: n <= 4 required");
    require_finite(a, "common_eigenvectors");
    const std::size_t n = a.rows();
    const double scale = a.norm_fro();
    std::vector<ProjectivePoint> out;
    if (scale == 0.0) {
        for (std::size_t k = 0; k < n; ++k) out.emplace_back(unit_vector(n, k));
        return out;
    }
    const ComplexMatrix as = adjoint(a);
    // a common eigenvector is an eigenvector of every combination A + c A*, so a
    // generic combination also exposes common vectors hidden in a repeated
    // eigenspace of A
    std::vector<Vector> candidates;
    const Complex c(0.6180339887, 0.3819660113);
    for (const ComplexMatrix& m : {a, a + c * as}) {
        try {
            for (const auto& p : eigen(m, 1e-4).pairs) candidates.push_back(p.vector);
        } catch (const Error&) {
        }
    }
    const auto residual = [](const ComplexMatrix& m, const Vector& v) {
        const Vector mv = m * v;
        const Complex mu = dot(v, mv);
        return norm(axpy(-mu, v, mv));
    };
    for (const auto& v : candidates) {
        if (residual(a, v) > tol * scale || residual(as, v) > tol * scale) continue;
        const ProjectivePoint pt(v);
        const bool dup = std::any_of(out.begin(), out.end(), [&](const ProjectivePoint& q) { return q.distance(pt) < 1e-6; });
        if (!dup) out.push_back(pt);
    }
    return out;
}

GenericityReport classify(const ComplexMatrix& a, double tol) {
    if (!a.square() || a.rows() == 0 || a.rows() > 4) throw InvalidInput("classify: n <= 4 required");
    require_finite(a, "classify");
    GenericityReport r;
    const auto info = rank_svd(a, kDefaultTol);
    r.sigma_ratio = info.singular_values.front() > 0.0 ? info.singular_values.back() / info.singular_values.front() : 0.0;
    r.nonsingular = check_s1(a);
    r.distinct_eigenvalues = check_s2(a);
    {
        const auto ev = eigen(a);
        const double scale = a.norm_fro();
        double gap = ev.pairs.size() > 1 ? INFINITY : 0.0;
        for (std::size_t i = 0; i < ev.pairs.size(); ++i)
            for (std::size_t j = i + 1; j < ev.pairs.size(); ++j)
                gap = std::min(gap, std::abs(ev.pairs[i].value - ev.pairs[j].value));
        r.eigenvalue_gap = scale > 0.0 ? gap / scale : 0.0;
    }
    const auto s3 = check_s3(a, tol);
    r.pencil_rank_ok = s3.ok;
    r.witness = s3.witness;
    r.heuristic = s3.heuristic;
    r.common_eigenvectors = common_eigenvectors(a, tol);
    std::ostringstream d;
    d << "sigma_min/sigma_max = " << r.sigma_ratio << "; min eigenvalue gap / |A| = " << r.eigenvalue_gap << "; "
      << s3.details << "; " << r.common_eigenvectors.size() << " common eigenvector(s)";
    r.details = d.str();
    return r;
}

} // namespace unitri
