#include "unitri/tridiagonalizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include "unitri/errors.hpp"
#include "unitri/genericity.hpp"
#include "unitri/polyroots.hpp"

namespace unitri {

const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::section_zero: return "section_zero";
    case Provenance::shortcut_dimW3: return "shortcut_dimW3";
    case Provenance::common_eigenvector_deflation: return "common_eigenvector_deflation";
    case Provenance::cubic_curve_3x3: return "cubic_curve_3x3";
    case Provenance::trivial: return "trivial";
    case Provenance::perturbed: return "perturbed";
    }
    return "unknown";
}

double off_tridiagonal(const ComplexMatrix& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (i > j + 1 || j > i + 1) m = std::max(m, std::abs(t(i, j)));
    return m;
}

ComplexMatrix flag_to_unitary(const Flag& flag) {
    const std::size_t n = flag.basis.size();
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (flag.basis[i].size() != n) throw InvalidInput("flag_to_unitary: basis vectors must have length n");
        for (std::size_t j = 0; j < n; ++j) u(i, j) = std::conj(flag.basis[i][j]);
    }
    return u;
}

Flag unitary_to_flag(const ComplexMatrix& u, Provenance provenance) {
    Flag f;
    f.provenance = provenance;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        Vector row(u.cols());
        for (std::size_t j = 0; j < u.cols(); ++j) row[j] = std::conj(u(i, j));
        f.basis.push_back(std::move(row));
    }
    return f;
}

double flag_condition_ii(const ComplexMatrix& a, const Flag& flag) {
    const std::size_t n = flag.basis.size();
    const double scale = a.norm_fro() > 0.0 ? a.norm_fro() : 1.0;
    const ComplexMatrix as = adjoint(a);
    double worst = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::span<const Vector> next(flag.basis.data(), i + 1);
        for (std::size_t j = 0; j < i; ++j) {
            for (const ComplexMatrix* m : {&a, &as}) {
                const Vector img = (*m) * flag.basis[j];
                worst = std::max(worst, norm(project_out(next, img)) / scale);
            }
        }
    }
    return worst;
}

double flag_condition_iii(const ComplexMatrix& a, const Flag& flag) {
    const std::size_t n = flag.basis.size();
    const double scale = a.norm_fro() > 0.0 ? a.norm_fro() : 1.0;
    double worst = 0.0;
    // W_{i+1}^perp is spanned by f_{i+2}, ..., f_n; its image must be orthogonal to W_i
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const Vector img = a * flag.basis[k];
            for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(dot(flag.basis[j], img)) / scale);
        }
    }
    return worst;
}

namespace {

void validate(const ComplexMatrix& a, const char* what) {
    if (!a.square() || a.rows() == 0) throw InvalidInput(std::string(what) + ": square matrix required");
    if (a.rows() > 4) throw InvalidInput(std::string(what) + ": n <= 4 required");
    require_finite(a, what);
}

ComplexMatrix scaled_matrix(const ComplexMatrix& a, double s) {
    ComplexMatrix out = a;
    out *= Complex(s);
    return out;
}

double unitarity(const ComplexMatrix& u) {
    return (u * adjoint(u) - ComplexMatrix::identity(u.rows())).norm_fro();
}

// Fills T and the residuals of r for the caller's A.
void finish(TridiagResult& r, const ComplexMatrix& a) {
    const double scale = a.norm_fro();
    r.T = r.U * a * adjoint(r.U);
    r.off_residual = scale > 0.0 ? off_tridiagonal(r.T) / scale : 0.0;
    r.unitarity_residual = unitarity(r.U);
    if (r.flag.basis.empty()) r.flag = unitary_to_flag(r.U, r.provenance);
}

TridiagResult trivial_result(const ComplexMatrix& a, const TridiagOptions& opts) {
    TridiagResult r;
    r.U = ComplexMatrix::identity(a.rows());
    r.provenance = Provenance::trivial;
    r.seed = opts.seed;
    finish(r, a);
    return r;
}

// Rows orthonormalized in order; a retraction onto the unitary group.
ComplexMatrix retract(const ComplexMatrix& m) {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Vector c(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) c[j] = std::conj(m(i, j));
        cols.push_back(std::move(c));
    }
    const auto q = orthonormalize(cols, 1e-14);
    ComplexMatrix u(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) u(i, j) = std::conj(q[i][j]);
    return u;
}

// Flag f1 = v, f2 from Av or A*v (larger residual), completed to a basis.
ComplexMatrix flag3_unitary(const ComplexMatrix& b, const Vector& v_in) {
    const ComplexMatrix bs = adjoint(b);
    const Vector v = scaled(v_in, 1.0 / norm(v_in));
    std::vector<Vector> basis = {v};
    const Vector r1 = project_out(basis, b * v);
    const Vector r2 = project_out(basis, bs * v);
    const Vector& pick = norm(r1) >= norm(r2) ? r1 : r2;
    if (norm(pick) > 1e-12) basis.push_back(scaled(pick, 1.0 / norm(pick)));
    Flag f;
    f.basis = complete_basis(basis, b.rows());
    return flag_to_unitary(f);
}

std::optional<ComplexMatrix> solve3(const ComplexMatrix& b, const TridiagOptions& opts, double& best_off) {
    const ComplexMatrix bs = adjoint(b);
    std::mt19937_64 rng(opts.seed ^ 0x3c3c3c3cULL);
    std::normal_distribution<double> nd(0.0, 1.0);
    const auto random_vector = [&] {
        Vector x(3);
        for (auto& z : x) z = Complex(nd(rng), nd(rng));
        return scaled(x, 1.0 / norm(x));
    };
    std::optional<ComplexMatrix> best;
    best_off = INFINITY;
    const auto consider = [&](const Vector& v) {
        if (!(norm(v) > 0.0) || !std::isfinite(norm(v))) return;
        const ComplexMatrix u = flag3_unitary(b, v);
        const double off = off_tridiagonal(u * b * adjoint(u));
        if (off < best_off) {
            best_off = off;
            best = u;
        }
    };
    for (std::size_t attempt = 0; attempt <= opts.max_restarts && best_off > opts.tol * 1e-3; ++attempt) {
        const Vector p = random_vector(), q = random_vector();
        const auto cubic = [&](Complex s) {
            const Vector v = axpy(s, q, p);
            const std::vector<Vector> cols = {v, b * v, bs * v};
            return det(ComplexMatrix::from_columns(cols));
        };
        const Polynomial f = Polynomial::interpolate(cubic, 3, 1.0);
        if (f.max_abs_coeff() <= 1e-14) {
            // the whole line lies on the curve
            consider(p);
            continue;
        }
        try {
            const auto rts = roots_flat(f);
            for (const Complex s : rts) consider(axpy(s, q, p));
            if (rts.size() < 3) consider(q); // a root at infinity of the line
        } catch (const Error&) {
            continue;
        }
    }
    if (best_off > opts.tol) {
        // eigenvectors of B lie on the curve as well
        try {
            for (const auto& pr : eigen(b, 1e-4).pairs) consider(pr.vector);
        } catch (const Error&) {
        }
    }
    return best;
}

struct Solved {
    ComplexMatrix u;
    Provenance provenance;
    Flag flag;
    std::vector<SectionCandidate> candidates;
};

// Section-zero path on a unit-norm 4x4 matrix.
std::optional<Solved> solve_sections(const ComplexMatrix& ahat, const TridiagOptions& opts, std::string& log) {
    const Pencil pencil(ahat);
    std::optional<Solved> found;
    const auto try_candidate = [&](const SectionCandidate& c) {
        try {
            Flag f = build_flag(ahat, c, opts.tol);
            const ComplexMatrix u = flag_to_unitary(f);
            if (off_tridiagonal(u * ahat * adjoint(u)) <= opts.tol) {
                found = Solved{u, f.provenance, std::move(f), {}};
                return true;
            }
        } catch (const FlagDegenerate& e) {
            log += std::string("flag rejected: ") + e.what() + "; ";
        }
        return false;
    };
    std::vector<SweepOptions> stages;
    if (opts.coarse_samples > 0 && opts.coarse_samples < opts.sweep.samples && !opts.all_flags) {
        SweepOptions coarse = opts.sweep;
        coarse.samples = opts.coarse_samples;
        coarse.random_restarts = 0;
        stages.push_back(coarse);
    }
    stages.push_back(opts.sweep);
    for (const auto& stage : stages) {
        try {
            if (opts.all_flags) {
                auto all = section_zeros(pencil, stage);
                for (const auto& c : all)
                    if (try_candidate(c)) break;
                if (found) found->candidates = std::move(all);
            } else {
                section_zeros(pencil, stage, [&](const SectionCandidate& c) { return try_candidate(c); });
            }
        } catch (const NoSectionZero&) {
            log += "no section zero with " + std::to_string(stage.samples) + " samples; ";
        } catch (const RankDeficientPencil&) {
            log += "rank-deficient pencil; ";
        }
        if (found) return found;
    }
    return std::nullopt;
}

std::optional<Solved> solve_deflation(const ComplexMatrix& ahat, const TridiagOptions& opts) {
    for (const auto& v : common_eigenvectors(ahat)) {
        try {
            const TridiagResult r = deflate_common_eigenvector(ahat, v, opts);
            if (r.off_residual <= opts.tol) return Solved{r.U, Provenance::common_eigenvector_deflation, r.flag, {}};
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

// Direct paths without the perturbation fallback, on a unit-norm matrix.
std::optional<Solved> solve_direct(const ComplexMatrix& ahat, const TridiagOptions& opts, std::string& log) {
    const std::size_t n = ahat.rows();
    if (n <= 2 || off_tridiagonal(ahat) <= 1e-15) {
        return Solved{ComplexMatrix::identity(n), Provenance::trivial, {}, {}};
    }
    if (n == 3) {
        double off = INFINITY;
        auto u = solve3(ahat, opts, off);
        if (u && off > opts.tol) *u = polish_unitary(ahat, *u);
        if (u && off_tridiagonal(*u * ahat * adjoint(*u)) <= opts.tol)
            return Solved{*u, Provenance::cubic_curve_3x3, {}, {}};
        log += "3x3 cubic path failed; ";
        return std::nullopt;
    }
    if (auto d = solve_deflation(ahat, opts)) return d;
    return solve_sections(ahat, opts, log);
}

} // namespace

Flag build_flag(const ComplexMatrix& a, const SectionCandidate& candidate, double tol) {
    const std::size_t n = a.rows();
    if (n != 4) throw InvalidInput("build_flag: 4x4 matrix required");
    const double scale = a.norm_fro() > 0.0 ? a.norm_fro() : 1.0;
    const ComplexMatrix ah = scaled_matrix(a, 1.0 / scale);
    const ComplexMatrix as = adjoint(ah);
    const Vector& v = candidate.point.v.coords();
    std::vector<Vector> basis = {scaled(v, 1.0 / norm(v))};

    const Vector r_a = project_out(basis, ah * basis[0]);
    const Vector r_s = project_out(basis, as * basis[0]);
    const Vector& second = norm(r_a) >= norm(r_s) ? r_a : r_s;
    if (norm(second) <= 1e-12) throw FlagDegenerate("build_flag: v is a common eigenvector");
    basis.push_back(scaled(second, 1.0 / norm(second)));

    // W3 = W + AW = W + A*W; take the best conditioned spanning vector
    const Vector& f1 = basis[0];
    const std::vector<Vector> third = {ah * (ah * f1), as * (as * f1), ah * (as * f1), as * (ah * f1),
                                       ah * basis[1], as * basis[1]};
    Vector best;
    double best_norm = 0.0;
    for (const auto& c : third) {
        const Vector r = project_out(basis, c);
        if (norm(r) > best_norm) {
            best_norm = norm(r);
            best = r;
        }
    }
    Flag flag;
    flag.provenance = candidate.shortcut ? Provenance::shortcut_dimW3 : Provenance::section_zero;
    if (best_norm > 1e-10) {
        basis.push_back(scaled(best, 1.0 / best_norm));
    } else {
        // W(v) is invariant under A and A*: any completion works
        flag.provenance = Provenance::shortcut_dimW3;
    }
    flag.basis = complete_basis(basis, n);
    const double c2 = flag_condition_ii(ah, flag);
    if (c2 > tol) {
        std::ostringstream msg;
        msg << "build_flag: containment residual " << c2 << " exceeds " << tol;
        throw FlagDegenerate(msg.str());
    }
    return flag;
}

ComplexMatrix polish_unitary(const ComplexMatrix& a, ComplexMatrix u, std::size_t max_iterations) {
    const std::size_t n = a.rows();
    if (n < 3) return u;
    const double scale = a.norm_fro() > 0.0 ? a.norm_fro() : 1.0;
    const ComplexMatrix ah = scaled_matrix(a, 1.0 / scale);
    std::vector<std::pair<std::size_t, std::size_t>> band;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i > j + 1 || j > i + 1) band.emplace_back(i, j);

    // real basis of the skew-Hermitian matrices
    std::vector<ComplexMatrix> gens;
    for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix g(n, n);
        g(k, k) = Complex(0.0, 1.0);
        gens.push_back(g);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            ComplexMatrix re(n, n), im(n, n);
            re(k, l) = 1.0;
            re(l, k) = -1.0;
            im(k, l) = Complex(0.0, 1.0);
            im(l, k) = Complex(0.0, 1.0);
            gens.push_back(re);
            gens.push_back(im);
        }

    ComplexMatrix t = u * ah * adjoint(u);
    double off = off_tridiagonal(t);
    for (std::size_t it = 0; it < max_iterations && off > 1e-15; ++it) {
        RealMatrix jac(2 * band.size(), gens.size());
        std::vector<double> rhs(2 * band.size());
        for (std::size_t e = 0; e < band.size(); ++e) {
            rhs[2 * e] = -t(band[e].first, band[e].second).real();
            rhs[2 * e + 1] = -t(band[e].first, band[e].second).imag();
        }
        for (std::size_t p = 0; p < gens.size(); ++p) {
            const ComplexMatrix dt = gens[p] * t - t * gens[p];
            for (std::size_t e = 0; e < band.size(); ++e) {
                jac(2 * e, p) = dt(band[e].first, band[e].second).real();
                jac(2 * e + 1, p) = dt(band[e].first, band[e].second).imag();
            }
        }
        const auto step = solve_least_squares(jac, std::span<const double>(rhs), 1e-12);
        ComplexMatrix x(n, n);
        for (std::size_t p = 0; p < gens.size(); ++p) x += Complex(step[p]) * gens[p];
        bool improved = false;
        for (double lambda = 1.0; lambda >= 1.0 / 64.0; lambda *= 0.5) {
            const ComplexMatrix xs = Complex(lambda) * x;
            ComplexMatrix m = ComplexMatrix::identity(n) + xs + Complex(0.5) * (xs * xs);
            ComplexMatrix cand;
            try {
                cand = retract(m * u);
            } catch (const DependentInput&) {
                continue;
            }
            const ComplexMatrix tc = cand * ah * adjoint(cand);
            const double oc = off_tridiagonal(tc);
            if (oc < off) {
                u = cand;
                t = tc;
                off = oc;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return u;
}

TridiagResult tridiagonalize3(const ComplexMatrix& a, const TridiagOptions& opts) {
    validate(a, "tridiagonalize3");
    if (a.rows() != 3) throw InvalidInput("tridiagonalize3: 3x3 matrix required");
    const double scale = a.norm_fro();
    if (scale == 0.0 || off_tridiagonal(a) <= 1e-15 * scale) return trivial_result(a, opts);
    const ComplexMatrix ah = scaled_matrix(a, 1.0 / scale);
    double off = INFINITY;
    auto u = solve3(ah, opts, off);
    TridiagResult r;
    r.seed = opts.seed;
    r.provenance = Provenance::cubic_curve_3x3;
    if (u && off > opts.tol) {
        *u = polish_unitary(ah, *u);
        r.polished = true;
    }
    if (!u) throw Unsolved("tridiagonalize3: no point of the cubic curve found");
    r.U = *u;
    finish(r, a);
    if (r.off_residual > opts.tol) {
        std::ostringstream msg;
        msg << "tridiagonalize3: best residual " << r.off_residual << " after " << opts.max_restarts + 1 << " lines";
        throw Unsolved(msg.str());
    }
    return r;
}

TridiagResult deflate_common_eigenvector(const ComplexMatrix& a, const ProjectivePoint& v, const TridiagOptions& opts) {
    validate(a, "deflate_common_eigenvector");
    const std::size_t n = a.rows();
    if (n != 4 || v.size() != 4) throw InvalidInput("deflate_common_eigenvector: 4x4 matrix required");
    const std::vector<Vector> first = {v.coords()};
    const auto q = complete_basis(first, n);
    Flag change;
    change.basis = q;
    const ComplexMatrix qh = flag_to_unitary(change); // rows q_i^*
    const ComplexMatrix b = qh * a * adjoint(qh);
    ComplexMatrix b3(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) b3(i, j) = b(i + 1, j + 1);
    const TridiagResult inner = tridiagonalize3(b3, opts);
    ComplexMatrix lift = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) lift(i + 1, j + 1) = inner.U(i, j);
    TridiagResult r;
    r.U = lift * qh;
    r.provenance = Provenance::common_eigenvector_deflation;
    r.seed = opts.seed;
    r.polished = inner.polished;
    finish(r, a);
    return r;
}

TridiagResult perturb_and_retry(const ComplexMatrix& a, const TridiagOptions& opts) {
    validate(a, "perturb_and_retry");
    const std::size_t n = a.rows();
    const double scale = a.norm_fro();
    if (n <= 2 || scale == 0.0) return trivial_result(a, opts);
    const ComplexMatrix ah = scaled_matrix(a, 1.0 / scale);
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (auto& z : g.data()) z = Complex(nd(rng), nd(rng));
    g *= Complex(1.0 / g.norm_fro());

    TridiagOptions inner = opts;
    inner.all_flags = false;
    std::string log;
    for (const double eps : {1e-4, 1e-6, 1e-8}) {
        const ComplexMatrix ae = ah + Complex(eps) * g;
        std::optional<Solved> s;
        try {
            s = solve_direct(scaled_matrix(ae, 1.0 / ae.norm_fro()), inner, log);
        } catch (const Error& e) {
            log += std::string(e.what()) + "; ";
        }
        if (!s) continue;

        std::vector<ComplexMatrix> tries;
        if (n == 4) {
            // carry the flag's first vector over to the unperturbed curve
            try {
                const Pencil pencil(ah);
                const Vector v = s->flag.basis.empty() ? s->u.row(0) : s->flag.basis[0];
                Vector vc = v;
                if (s->flag.basis.empty())
                    for (auto& z : vc) z = std::conj(z);
                const auto start = curve_point(pencil, vc);
                if (auto z = polish_curve_point(pencil, section_function(pencil), start, opts.sweep)) {
                    const auto cand = certify_section_zero(pencil, *z, opts.sweep.tol_section);
                    if (cand.accepted) tries.push_back(flag_to_unitary(build_flag(ah, cand, opts.tol)));
                }
            } catch (const Error& e) {
                log += std::string("polish on the original matrix failed: ") + e.what() + "; ";
            }
        }
        tries.push_back(s->u);
        for (auto u : tries) {
            if (off_tridiagonal(u * ah * adjoint(u)) > opts.tol * 1e-3) u = polish_unitary(ah, u);
            if (off_tridiagonal(u * ah * adjoint(u)) <= opts.tol) {
                TridiagResult r;
                r.U = u;
                r.provenance = Provenance::perturbed;
                r.perturbation = eps;
                r.seed = opts.seed;
                r.polished = true;
                r.diagnostics = log;
                finish(r, a);
                if (r.off_residual <= opts.tol) return r;
            }
        }
        log += "epsilon " + std::to_string(eps) + " did not carry over; ";
    }
    throw Unsolved("perturb_and_retry: ladder exhausted: " + log);
}

TridiagResult tridiagonalize(const ComplexMatrix& a, const TridiagOptions& opts) {
    validate(a, "tridiagonalize");
    const std::size_t n = a.rows();
    const double scale = a.norm_fro();
    if (opts.force_perturbation && n >= 3 && scale > 0.0) return perturb_and_retry(a, opts);
    if (n <= 2 || scale == 0.0 || off_tridiagonal(a) <= 1e-15 * scale) return trivial_result(a, opts);

    const ComplexMatrix ah = scaled_matrix(a, 1.0 / scale);
    std::string log;
    std::optional<Solved> s;
    try {
        s = solve_direct(ah, opts, log);
    } catch (const Error& e) {
        log += std::string(e.what()) + "; ";
    }
    if (s) {
        TridiagResult r;
        r.U = s->u;
        r.provenance = s->provenance;
        r.flag = s->flag;
        r.candidates = std::move(s->candidates);
        r.seed = opts.seed;
        r.diagnostics = log;
        finish(r, a);
        if (r.off_residual > opts.tol) {
            r.U = polish_unitary(a, r.U);
            r.polished = true;
            r.flag = {};
            finish(r, a);
        }
        if (r.off_residual <= opts.tol) return r;
        log += "direct result above tolerance; ";
    }
    TridiagResult r = perturb_and_retry(a, opts);
    r.diagnostics = log + r.diagnostics;
    return r;
}

VerifyReport verify(const TridiagResult& result, const ComplexMatrix& a) {
    VerifyReport rep;
    const double scale = a.norm_fro() > 0.0 ? a.norm_fro() : 1.0;
    const ComplexMatrix t = result.U * a * adjoint(result.U);
    rep.off_residual = off_tridiagonal(t) / scale;
    rep.unitarity_residual = unitarity(result.U);
    // Roots of the characteristic polynomial of the unit-norm matrix. Defective
    // clusters spread by about eps^(1/k); their mean is accurate, so nearby
    // roots are merged before matching.
    const auto flat = [scale](const ComplexMatrix& m) {
        ComplexMatrix unit = m;
        unit *= Complex(1.0 / scale);
        RootOptions ro;
        ro.cluster_tol = 1e-3;
        std::vector<Complex> out;
        for (const auto& r : roots(Polynomial(characteristic_polynomial(unit)), ro))
            for (std::size_t k = 0; k < r.multiplicity; ++k) out.push_back(r.value * scale);
        std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        });
        return out;
    };
    try {
        const auto ea = flat(a);
        auto et = flat(t);
        double gap = 0.0;
        for (const auto& x : ea) {
            auto it = std::min_element(et.begin(), et.end(),
                                       [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
            gap = std::max(gap, std::abs(*it - x));
            et.erase(it);
        }
        rep.spectrum_gap = gap / scale;
    } catch (const Error&) {
        rep.spectrum_gap = INFINITY;
    }
    const double slack = 1e-12;
    rep.consistent = rep.off_residual <= result.off_residual + slack &&
                     rep.unitarity_residual <= result.unitarity_residual + slack;
    return rep;
}

} // namespace unitri
