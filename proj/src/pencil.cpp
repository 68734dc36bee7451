#include "unitri/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <random>
#include <thread>

#include "unitri/errors.hpp"
#include "unitri/polyroots.hpp"

namespace unitri {

Pencil::Pencil(ComplexMatrix a) : a_(std::move(a)) {
    if (!a_.square() || a_.rows() == 0) throw InvalidInput("pencil: square matrix required");
    require_finite(a_, "pencil");
    astar_ = adjoint(a_);
    a2_ = a_ * a_;
    astar2_ = astar_ * astar_;
    norm_ = a_.norm_fro();
}

ComplexMatrix pencil_matrix(const Pencil& p, const ProjectivePoint& t) {
    if (t.size() != 3) throw InvalidInput("pencil_matrix: t must lie in P^2");
    ComplexMatrix m = t[1] * p.A() + t[2] * p.Astar();
    for (std::size_t i = 0; i < p.n(); ++i) m(i, i) += t[0];
    return m;
}

std::vector<PencilPoint> theta_fiber(const Pencil& p, const ProjectivePoint& base, double gap_tol) {
    if (base.size() != 2) throw InvalidInput("theta_fiber: base must lie in P^1");
    const ComplexMatrix m = base[0] * p.A() + base[1] * p.Astar();
    const auto ev = eigen(m, 1e-6);
    const double scale = std::max(m.norm_fro(), 1e-300);
    double gap = INFINITY;
    for (std::size_t i = 0; i < ev.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < ev.pairs.size(); ++j)
            gap = std::min(gap, std::abs(ev.pairs[i].value - ev.pairs[j].value));
    const bool near = ev.repeated || gap < gap_tol * scale;
    std::vector<PencilPoint> out;
    for (std::size_t k = 0; k < ev.pairs.size(); ++k) {
        PencilPoint pt;
        pt.t = ProjectivePoint{-ev.pairs[k].value, base[0], base[1]};
        pt.v = ProjectivePoint(ev.pairs[k].vector);
        pt.sheet = k;
        pt.base = base;
        pt.near_branch = near;
        out.push_back(std::move(pt));
    }
    return out;
}

ProjectivePoint kernel_vector(const Pencil& p, const ProjectivePoint& t, double tol) {
    const ComplexMatrix m = pencil_matrix(p, t);
    const auto s = svd(m);
    const std::size_t n = m.cols();
    const double smax = s.sigma[0];
    if (n >= 2 && s.sigma[n - 2] <= tol * smax) {
        throw RankDeficientPencil("kernel_vector: pencil has rank <= n - 2 at this point");
    }
    return ProjectivePoint(s.v.column(n - 1));
}

double relative_sigma(std::span<const Vector> columns, std::size_t k) {
    return relative_singular_value(ComplexMatrix::from_columns(columns), k);
}

double curve_c_residual(const Pencil& p, std::span<const Complex> v) {
    const Vector av = p.A() * v;
    const Vector asv = p.Astar() * v;
    const double scale = norm(v) * norm(av) * norm(asv);
    if (scale == 0.0) return 0.0;
    const std::vector<Vector> rows = {Vector(v.begin(), v.end()), av, asv};
    ComplexMatrix lam(3, p.n());
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < p.n(); ++c) lam(r, c) = rows[r][c];
    if (p.n() < 3) return 0.0;
    double worst = 0.0;
    for (std::size_t a = 0; a < p.n(); ++a)
        for (std::size_t b = a + 1; b < p.n(); ++b)
            for (std::size_t c = b + 1; c < p.n(); ++c) worst = std::max(worst, std::abs(det3(lam, 0, 1, 2, a, b, c)));
    return worst / scale;
}

namespace {

std::vector<Vector> krylov_columns(const ComplexMatrix& a, const ComplexMatrix& as, std::span<const Complex> v) {
    const Vector av = a * v;
    const Vector asv = as * v;
    return {Vector(v.begin(), v.end()), av, asv, a * std::span<const Complex>(av), a * std::span<const Complex>(asv),
            as * std::span<const Complex>(av), as * std::span<const Complex>(asv)};
}

ComplexMatrix normalized(const ComplexMatrix& m, double scale) {
    ComplexMatrix out = m;
    if (scale > 0.0) out *= Complex(1.0 / scale);
    return out;
}

} // namespace

SectionValue section_residual(const Pencil& p, std::span<const Complex> v) {
    if (p.n() != 4) throw InvalidInput("section_residual: 4x4 matrix required");
    const double s = p.norm() > 0.0 ? p.norm() : 1.0;
    const ComplexMatrix a = normalized(p.A(), s), as = normalized(p.Astar(), s);
    const Vector u = scaled(v, 1.0 / norm(v));
    const auto cols = krylov_columns(a, as, u);
    // columns: v, Av, A*v, A^2v, AA*v, A*Av, A*^2v
    const std::vector<Vector> x = {cols[0], cols[1], cols[3], cols[6]};
    SectionValue out;
    out.h = det(ComplexMatrix::from_columns(x));
    const double denom = norm(x[0]) * norm(x[1]) * norm(x[2]) * norm(x[3]);
    out.h_normalized = denom > 0.0 ? std::abs(out.h) / denom : 0.0;
    out.sigma4 = relative_sigma(cols, 4);
    return out;
}

namespace {

// det[P_0 v, ..., P_3 v] and its gradient; a null P_c stands for the identity.
Complex column_det(std::span<const ComplexMatrix* const> mats, std::span<const Complex> v, Complex* grad) {
    const std::size_t n = v.size();
    std::vector<Vector> cols;
    for (const auto* m : mats) cols.push_back(m == nullptr ? Vector(v.begin(), v.end()) : (*m) * v);
    const ComplexMatrix x = ComplexMatrix::from_columns(cols);
    if (grad != nullptr) {
        // d det X = sum_c adj(X)_{c,:} P_c dv
        const ComplexMatrix adj = adjugate(x);
        for (std::size_t j = 0; j < n; ++j) grad[j] = Complex{};
        for (std::size_t c = 0; c < mats.size(); ++c) {
            for (std::size_t j = 0; j < n; ++j) {
                Complex g{};
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex pij = mats[c] == nullptr ? Complex(r == j ? 1.0 : 0.0) : (*mats[c])(r, j);
                    g += adj(c, r) * pij;
                }
                grad[j] += g;
            }
        }
    }
    return det(x);
}

} // namespace

CurveFunction section_function(const Pencil& p) {
    if (p.n() != 4) throw InvalidInput("section_function: 4x4 matrix required");
    const double s = p.norm() > 0.0 ? p.norm() : 1.0;
    const ComplexMatrix a = normalized(p.A(), s), as = normalized(p.Astar(), s);
    const auto mats = std::make_shared<std::array<ComplexMatrix, 6>>(
        std::array<ComplexMatrix, 6>{a, as, a * a, as * as, a * as, as * a});
    CurveFunction f;
    // h = det[v, Av, A^2v, A*^2v] vanishes on the eigenvectors of A and A*;
    // det[v, A*v, AA*v, A*^2v] and det[v, Av, A^2v, A*Av] do not vanish on E
    // and E* respectively, so only the true section zeros solve all three.
    f.equations = 3;
    f.eval = [mats](std::span<const Complex> v, Vector& values, ComplexMatrix* jac) {
        const auto& m = *mats;
        const std::array<std::array<const ComplexMatrix*, 4>, 3> sets = {{
            {nullptr, &m[0], &m[2], &m[3]},
            {nullptr, &m[1], &m[4], &m[3]},
            {nullptr, &m[0], &m[2], &m[5]},
        }};
        const std::size_t n = v.size();
        values.assign(3, Complex{});
        if (jac != nullptr) *jac = ComplexMatrix(3, n);
        Vector grad(n);
        for (std::size_t e = 0; e < 3; ++e) {
            values[e] = column_det(sets[e], v, jac != nullptr ? grad.data() : nullptr);
            if (jac != nullptr)
                for (std::size_t j = 0; j < n; ++j) (*jac)(e, j) = grad[j];
        }
    };
    // sigma4 of the Krylov matrix vanishes only at true section zeros
    f.magnitude = [a, as](std::span<const Complex> v) { return relative_sigma(krylov_columns(a, as, v), 4); };
    return f;
}

CurveFunction linear_function(Vector c) {
    const double cn = norm(c);
    if (!(cn > 0.0)) throw InvalidInput("linear_function: zero hyperplane");
    CurveFunction f;
    f.eval = [c](std::span<const Complex> v, Vector& values, ComplexMatrix* jac) {
        Complex s{};
        for (std::size_t i = 0; i < v.size(); ++i) s += c[i] * v[i];
        values.assign(1, s);
        if (jac != nullptr) {
            *jac = ComplexMatrix(1, v.size());
            for (std::size_t i = 0; i < v.size(); ++i) (*jac)(0, i) = c[i];
        }
    };
    f.magnitude = [c, cn](std::span<const Complex> v) {
        Complex s{};
        for (std::size_t i = 0; i < v.size(); ++i) s += c[i] * v[i];
        return std::abs(s) / (cn * norm(v));
    };
    return f;
}

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TRIDIAG_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct Sample {
    std::array<double, 3> xyz{};       // position on the Riemann sphere
    std::vector<PencilPoint> fiber;    // empty when the eigen solve failed
    std::vector<double> value;         // f.magnitude per sheet
};

ProjectivePoint sphere_to_base(double z, double phi) {
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    return ProjectivePoint{Complex(std::cos(theta / 2.0), 0.0), std::polar(std::sin(theta / 2.0), phi)};
}

void fill_sample(const Pencil& p, const CurveFunction& f, double gap_tol, Sample& s) {
    const double z = s.xyz[2];
    const double phi = std::atan2(s.xyz[1], s.xyz[0]);
    try {
        s.fiber = theta_fiber(p, sphere_to_base(z, phi), gap_tol);
    } catch (const Error&) {
        s.fiber.clear();
    }
    s.value.resize(s.fiber.size());
    for (std::size_t k = 0; k < s.fiber.size(); ++k) s.value[k] = f.magnitude(s.fiber[k].v.coords());
}

std::vector<Sample> build_sweep(const Pencil& p, const CurveFunction& f, const SweepOptions& opts,
                                std::size_t threads) {
    const std::size_t n = std::max<std::size_t>(opts.samples, 2);
    std::vector<Sample> samples(n + opts.random_restarts);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        samples[i].xyz = {r * std::cos(phi), r * std::sin(phi), z};
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uz(-1.0, 1.0), uphi(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = n; i < samples.size(); ++i) {
        const double z = uz(rng), phi = uphi(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        samples[i].xyz = {r * std::cos(phi), r * std::sin(phi), z};
    }
    parallel_for(samples.size(), threads, [&](std::size_t i) { fill_sample(p, f, opts.gap_tol, samples[i]); });
    return samples;
}

struct Start {
    std::size_t sample;
    std::size_t sheet;
    double value;
};

// Local minima of the sampled magnitude over the k-nearest-neighbour graph of
// the lattice, with sheets matched between neighbours by kernel overlap.
std::vector<Start> select_starts(const std::vector<Sample>& samples, std::size_t lattice, const SweepOptions& opts) {
    const std::size_t k = std::min(opts.neighbours, lattice > 0 ? lattice - 1 : 0);
    std::vector<Start> minima, all;
    std::vector<std::pair<double, std::size_t>> dist(lattice);
    for (std::size_t i = 0; i < lattice; ++i) {
        const auto& s = samples[i];
        if (s.fiber.empty()) continue;
        for (std::size_t j = 0; j < lattice; ++j) {
            double d = 0.0;
            for (int c = 0; c < 3; ++c) d += (s.xyz[c] - samples[j].xyz[c]) * (s.xyz[c] - samples[j].xyz[c]);
            dist[j] = {j == i ? INFINITY : d, j};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        for (std::size_t a = 0; a < s.fiber.size(); ++a) {
            all.push_back({i, a, s.value[a]});
            bool is_min = true;
            for (std::size_t q = 0; q < k && is_min; ++q) {
                const auto& nb = samples[dist[q].second];
                if (nb.fiber.empty()) continue;
                std::size_t best = 0;
                double overlap = -1.0;
                for (std::size_t b = 0; b < nb.fiber.size(); ++b) {
                    const double o = std::abs(dot(s.fiber[a].v.coords(), nb.fiber[b].v.coords()));
                    if (o > overlap) {
                        overlap = o;
                        best = b;
                    }
                }
                if (nb.value[best] < s.value[a]) is_min = false;
            }
            if (is_min) minima.push_back({i, a, s.value[a]});
        }
    }
    const auto by_value = [](const Start& x, const Start& y) { return x.value < y.value; };
    std::sort(minima.begin(), minima.end(), by_value);
    std::sort(all.begin(), all.end(), by_value);
    std::vector<Start> out = minima;
    std::size_t added = 0;
    for (const auto& s : all) {
        if (added >= opts.best_starts) break;
        const bool dup = std::any_of(out.begin(), out.end(),
                                     [&](const Start& o) { return o.sample == s.sample && o.sheet == s.sheet; });
        if (!dup) {
            out.push_back(s);
            ++added;
        }
    }
    for (std::size_t i = lattice; i < samples.size(); ++i)
        for (std::size_t a = 0; a < samples[i].fiber.size(); ++a) out.push_back({i, a, samples[i].value[a]});
    return out;
}

std::size_t argmax_abs(std::span<const Complex> x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[best])) best = i;
    return best;
}

// Newton on x = (v, t) for (t0 I + t1 A + t2 A*) v = 0, v_k = 1, t_m = 1,
// f(v) = 0, with A scaled to unit Frobenius norm.
std::optional<CurveZero> polish(const ComplexMatrix& a, const ComplexMatrix& as, double scale,
                                const CurveFunction& f, const PencilPoint& start, const SweepOptions& opts) {
    const std::size_t n = a.rows();
    Vector v = start.v.coords();
    Vector t = start.t.coords();
    t[1] *= scale;
    t[2] *= scale;
    const std::size_t kv = argmax_abs(v);
    const std::size_t kt = argmax_abs(t);
    const Complex sv = v[kv], st = t[kt];
    for (auto& z : v) z /= sv;
    for (auto& z : t) z /= st;
    Vector x(v);
    x.insert(x.end(), t.begin(), t.end());

    const HolomorphicSystem sys = [&](std::span<const Complex> xs, Vector& val, ComplexMatrix& jac) {
        const std::span<const Complex> vv = xs.subspan(0, n);
        const Vector av = a * vv, asv = as * vv;
        const std::size_t m = f.equations;
        val.assign(n + 2 + m, Complex{});
        jac = ComplexMatrix(n + 2 + m, n + 3);
        for (std::size_t i = 0; i < n; ++i) {
            val[i] = xs[n] * vv[i] + xs[n + 1] * av[i] + xs[n + 2] * asv[i];
            for (std::size_t j = 0; j < n; ++j) jac(i, j) = xs[n + 1] * a(i, j) + xs[n + 2] * as(i, j);
            jac(i, i) += xs[n];
            jac(i, n) = vv[i];
            jac(i, n + 1) = av[i];
            jac(i, n + 2) = asv[i];
        }
        val[n] = vv[kv] - 1.0;
        jac(n, kv) = 1.0;
        val[n + 1] = xs[n + kt] - 1.0;
        jac(n + 1, n + kt) = 1.0;
        Vector fv;
        ComplexMatrix fj;
        f.eval(vv, fv, &fj);
        for (std::size_t e = 0; e < m; ++e) {
            val[n + 2 + e] = fv[e];
            for (std::size_t j = 0; j < n; ++j) jac(n + 2 + e, j) = fj(e, j);
        }
    };
    NewtonOptions nopts;
    nopts.tol = 1e-13;
    nopts.max_steps = 60;
    const auto r = newton_system(sys, x, nopts);
    if (!r.converged()) return std::nullopt;
    for (const auto& z : r.x)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;

    Vector val;
    ComplexMatrix jac;
    sys(r.x, val, jac);
    const auto sv2 = svd(jac);
    CurveZero out;
    out.residual = r.residual;
    out.jacobian_rcond = sv2.sigma[0] > 0.0 ? sv2.sigma.back() / sv2.sigma[0] : 0.0;
    out.multiple = out.jacobian_rcond < opts.singular_rcond;
    Vector vf(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
    Vector tf(r.x.begin() + static_cast<std::ptrdiff_t>(n), r.x.end());
    tf[1] /= scale;
    tf[2] /= scale;
    try {
        out.point.v = ProjectivePoint(vf);
        out.point.t = ProjectivePoint(tf);
        if (std::abs(tf[1]) + std::abs(tf[2]) > 0.0) out.point.base = ProjectivePoint{tf[1], tf[2]};
    } catch (const InvalidInput&) {
        return std::nullopt;
    }
    out.point.sheet = start.sheet;
    out.point.near_branch = start.near_branch;
    return out;
}

struct Polisher {
    const Pencil& p;
    const CurveFunction& f;
    const SweepOptions& opts;
    std::size_t threads;
    ComplexMatrix a, as;
    double scale;

    Polisher(const Pencil& pp, const CurveFunction& ff, const SweepOptions& o, std::size_t th)
        : p(pp), f(ff), opts(o), threads(th) {
        scale = p.norm() > 0.0 ? p.norm() : 1.0;
        a = normalized(p.A(), scale);
        as = normalized(p.Astar(), scale);
    }

    // Runs Newton from each start in batches of `threads`, keeping distinct
    // zeros in start order; `stop` ends the search after a batch.
    std::vector<CurveZero> run(const std::vector<Sample>& samples, const std::vector<Start>& starts,
                               const std::function<bool(const CurveZero&)>& stop) {
        std::vector<CurveZero> found;
        const std::size_t batch = std::max<std::size_t>(threads, 1);
        for (std::size_t b0 = 0; b0 < starts.size(); b0 += batch) {
            const std::size_t b1 = std::min(starts.size(), b0 + batch);
            std::vector<std::optional<CurveZero>> res(b1 - b0);
            parallel_for(b1 - b0, threads, [&](std::size_t i) {
                const auto& s = starts[b0 + i];
                res[i] = polish(a, as, scale, f, samples[s.sample].fiber[s.sheet], opts);
            });
            for (auto& r : res) {
                if (!r) continue;
                const bool dup = std::any_of(found.begin(), found.end(), [&](const CurveZero& z) {
                    return z.point.v.distance(r->point.v) < opts.dedup_tol;
                });
                if (dup) continue;
                found.push_back(*r);
                if (stop && stop(found.back())) return found;
            }
        }
        return found;
    }
};

} // namespace

std::vector<CurveZero> curve_zeros(const Pencil& p, const CurveFunction& f, const SweepOptions& opts,
                                   const std::function<bool(const CurveZero&)>& stop) {
    const std::size_t threads = resolve_threads(opts.threads);
    const auto samples = build_sweep(p, f, opts, threads);
    const auto starts = select_starts(samples, std::max<std::size_t>(opts.samples, 2), opts);
    Polisher pol(p, f, opts, threads);
    return pol.run(samples, starts, stop);
}

PencilPoint curve_point(const Pencil& p, std::span<const Complex> v) {
    const std::vector<Vector> cols = {Vector(v.begin(), v.end()), p.A() * v, p.Astar() * v};
    const Vector t = smallest_right_singular_vector(ComplexMatrix::from_columns(cols));
    PencilPoint out;
    out.v = ProjectivePoint(v);
    out.t = ProjectivePoint(t);
    if (std::abs(t[1]) + std::abs(t[2]) > 0.0) out.base = ProjectivePoint{t[1], t[2]};
    return out;
}

std::optional<CurveZero> polish_curve_point(const Pencil& p, const CurveFunction& f, const PencilPoint& start,
                                            const SweepOptions& opts) {
    const double scale = p.norm() > 0.0 ? p.norm() : 1.0;
    return polish(normalized(p.A(), scale), normalized(p.Astar(), scale), scale, f, start, opts);
}

SectionCandidate certify_section_zero(const Pencil& p, const CurveZero& z, double tol_section) {
    const double s = p.norm() > 0.0 ? p.norm() : 1.0;
    const ComplexMatrix a = normalized(p.A(), s), as = normalized(p.Astar(), s);
    const Vector& v = z.point.v.coords();
    const auto cols = krylov_columns(a, as, v);
    SectionCandidate c;
    c.point = z.point;
    c.jacobian_rcond = z.jacobian_rcond;
    const auto sec = section_residual(p, v);
    c.h_value = sec.h;
    c.sigma4 = sec.sigma4;
    c.curve_residual = curve_c_residual(p, v);

    // columns: 0 v, 1 Av, 2 A*v, 3 A^2v, 4 AA*v, 5 A*Av, 6 A*^2v
    const std::vector<Vector> w = {cols[0], cols[1], cols[2]};
    const std::vector<Vector> w3 = {cols[0], cols[1], cols[2], cols[3], cols[4]};
    const std::vector<Vector> w3t = {cols[0], cols[1], cols[2], cols[6], cols[5]};
    const double w_s2 = relative_sigma(w, 2), w_s3 = relative_sigma(w, 3);
    c.shortcut = relative_sigma(w3, 3) <= tol_section || relative_sigma(w3t, 3) <= tol_section;

    if (w_s3 > tol_section) {
        c.rejection = "not on C";
    } else if (w_s2 <= 1e-6) {
        c.rejection = "dim W(v) < 2 (common eigenvector)";
    } else if (c.sigma4 > tol_section) {
        c.rejection = "sigma4 above tolerance";
    }
    c.accepted = c.rejection.empty();
    return c;
}

std::vector<SectionCandidate> section_zeros(const Pencil& p, const SweepOptions& opts,
                                            const std::function<bool(const SectionCandidate&)>& stop) {
    if (p.n() != 4) throw InvalidInput("section_zeros: 4x4 matrix required");
    const CurveFunction f = section_function(p);
    const std::size_t threads = resolve_threads(opts.threads);
    const auto samples = build_sweep(p, f, opts, threads);
    const std::size_t lattice = std::max<std::size_t>(opts.samples, 2);

    std::vector<SectionCandidate> accepted;
    const auto known = [&](const ProjectivePoint& v) {
        return std::any_of(accepted.begin(), accepted.end(),
                           [&](const SectionCandidate& c) { return c.point.v.distance(v) < opts.dedup_tol; });
    };

    // a sample with dim W3 = 2 already gives a flag
    for (const auto& s : samples) {
        for (std::size_t k = 0; k < s.fiber.size(); ++k) {
            if (s.value[k] > 1e-6) continue;
            CurveZero z;
            z.point = s.fiber[k];
            const auto c = certify_section_zero(p, z, opts.tol_section);
            if (c.accepted && c.shortcut && !known(c.point.v)) {
                accepted.push_back(c);
                if (stop && stop(c)) return accepted;
            }
        }
    }

    const auto starts = select_starts(samples, lattice, opts);
    Polisher pol(p, f, opts, threads);
    bool stopped = false;
    pol.run(samples, starts, [&](const CurveZero& z) {
        const auto c = certify_section_zero(p, z, opts.tol_section);
        if (!c.accepted || known(c.point.v)) return false;
        accepted.push_back(c);
        if (stop && stop(c)) {
            stopped = true;
            return true;
        }
        return false;
    });
    if (accepted.empty()) throw NoSectionZero("section_zeros: no certified zero of the section on C");
    if (!stopped) {
        std::stable_sort(accepted.begin(), accepted.end(),
                         [](const SectionCandidate& x, const SectionCandidate& y) { return x.sigma4 < y.sigma4; });
    }
    return accepted;
}

} // namespace unitri
