#include "unitri/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace unitri {

namespace {

constexpr double kEps = 2.220446049250313e-16;

Complex ipow(Complex z, int k) {
    Complex r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Taylor coefficient p^(j)(c) / j! and a rounding-error bound for it.
std::pair<Complex, double> taylor_coeff(const std::vector<Complex>& a, int j, Complex c) {
    const int d = static_cast<int>(a.size()) - 1;
    Complex s{};
    double bound = 0.0;
    const double ac = std::abs(c);
    for (int i = d; i >= j; --i) {
        const double b = binomial(i, j);
        s = s * c + b * a[i];
        bound = bound * ac + b * std::abs(a[i]);
    }
    return {s, bound};
}

std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& a, Complex z) {
    Complex p = a.back();
    Complex dp{};
    for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i) {
        dp = dp * z + p;
        p = p * z + a[i];
    }
    return {p, dp};
}

double eval_error_bound(const std::vector<Complex>& a, Complex z) {
    double b = 0.0;
    const double az = std::abs(z);
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) b = b * az + std::abs(a[i]);
    return b * kEps * static_cast<double>(a.size()) * 4.0;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
};

std::vector<Complex> aberth(const std::vector<Complex>& a, std::size_t max_iterations) {
    const int d = static_cast<int>(a.size()) - 1;
    std::vector<Complex> z(d);
    // starting circle from the geometric mean of the root moduli
    const double radius = std::pow(std::abs(a[0] / a[d]), 1.0 / d);
    const double r0 = (radius > 0.0 && std::isfinite(radius)) ? radius : 1.0;
    for (int k = 0; k < d; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / d + 0.4;
        z[k] = std::polar(r0 * (1.0 + 0.01 * k), angle);
    }
    std::vector<bool> done(d, false);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        bool all_done = true;
        for (int i = 0; i < d; ++i) {
            if (done[i]) continue;
            const auto [p, dp] = eval_with_derivative(a, z[i]);
            if (std::abs(p) <= eval_error_bound(a, z[i])) {
                done[i] = true;
                continue;
            }
            all_done = false;
            const Complex ratio = p / dp;
            Complex sum{};
            for (int j = 0; j < d; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            Complex w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = Complex(1e-3 * (1.0 + std::abs(z[i])), 0.0);
            z[i] -= w;
            if (std::abs(w) <= 4.0 * kEps * std::abs(z[i])) done[i] = true;
        }
        if (all_done) return z;
    }
    for (int i = 0; i < d; ++i) {
        const auto [p, dp] = eval_with_derivative(a, z[i]);
        (void)dp;
        // multiple roots stall with a residual a few orders above the bound
        if (std::abs(p) > 1e6 * eval_error_bound(a, z[i])) {
            throw ConvergenceFailure("roots: Aberth iteration did not converge");
        }
    }
    return z;
}

// A k-fold root is a simple root of p^(k-1); Newton there recovers the centre
// of a cluster far more accurately than the mean of the scattered Aberth roots.
Complex polish_multiple(const std::vector<Complex>& a, int k, Complex c, double max_move) {
    const Complex start = c;
    for (int step = 0; step < 8; ++step) {
        const Complex g = taylor_coeff(a, k - 1, c).first;
        const Complex dg = taylor_coeff(a, k, c).first;
        if (dg == Complex{}) break;
        const Complex delta = g / (static_cast<double>(k) * dg);
        if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
        if (std::abs(c - delta - start) > max_move + 1e-12 * (1.0 + std::abs(start))) break;
        c -= delta;
        if (std::abs(delta) <= kEps * (1.0 + std::abs(c))) break;
    }
    return c;
}

// Error bound of the j-th Taylor coefficient at c when every a_i may be off by `noise`.
double noise_bound(int d, int j, double ac, double noise) {
    double bound = 0.0;
    for (int i = d; i >= j; --i) bound = bound * ac + binomial(i, j) * noise;
    return bound;
}

std::vector<Root> cluster(const std::vector<Complex>& a, const std::vector<Complex>& z, double cluster_tol,
                          double coefficient_noise) {
    double amax = 0.0;
    for (const auto& x : a) amax = std::max(amax, std::abs(x));
    const double noise = coefficient_noise * amax;
    const std::size_t d = z.size();
    double scale = 1.0;
    for (const auto& r : z) scale = std::max(scale, std::abs(r));
    UnionFind uf(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(z[i] - z[j]) <= cluster_tol * scale) uf.unite(i, j);

    // grow clusters whose centroid passes the vanishing-derivative test
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::size_t> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return std::abs(z[x] - z[i]) < std::abs(z[y] - z[i]); });
        std::size_t best = 1;
        for (std::size_t k = 2; k <= d; ++k) {
            Complex c{};
            for (std::size_t m = 0; m < k; ++m) c += z[order[m]];
            c /= static_cast<double>(k);
            double spread = 0.0;
            for (std::size_t m = 0; m < k; ++m) spread = std::max(spread, std::abs(z[order[m]] - c));
            if (spread > 1e-2 * (1.0 + std::abs(c))) break;
            const int kk = static_cast<int>(k);
            c = polish_multiple(a, kk, c, spread);
            bool vanishes = true;
            for (int j = 0; j < kk; ++j) {
                const auto [t, bound] = taylor_coeff(a, j, c);
                const double allowed = 256.0 * kEps * static_cast<double>(a.size()) * bound +
                                       noise_bound(static_cast<int>(a.size()) - 1, j, std::abs(c), noise);
                if (std::abs(t) > allowed) {
                    vanishes = false;
                    break;
                }
            }
            if (vanishes) best = k;
        }
        for (std::size_t m = 1; m < best; ++m) uf.unite(order[0], order[m]);
    }

    std::vector<Root> out;
    std::vector<std::size_t> seen;
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t rep = uf.find(i);
        if (std::find(seen.begin(), seen.end(), rep) != seen.end()) continue;
        seen.push_back(rep);
        Complex c{};
        std::size_t count = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (uf.find(j) == rep) {
                c += z[j];
                ++count;
            }
        }
        c /= static_cast<double>(count);
        if (count > 1) {
            double spread = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                if (uf.find(j) == rep) spread = std::max(spread, std::abs(z[j] - c));
            c = polish_multiple(a, static_cast<int>(count), c, spread);
        }
        out.push_back({c, count});
    }
    return out;
}

} // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}
Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::trimmed(double rel) const {
    const double m = max_abs_coeff();
    std::vector<Complex> c = coeffs_;
    while (!c.empty() && std::abs(c.back()) <= rel * m) c.pop_back();
    return Polynomial(std::move(c));
}

int Polynomial::degree() const { return static_cast<int>(trimmed().coeffs_.size()) - 1; }

Complex Polynomial::operator()(Complex z) const {
    Complex s{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * z + *it;
    return s;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial(std::vector<Complex>{});
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::interpolate(const std::function<Complex(Complex)>& f, std::size_t degree_bound,
                                   double radius) {
    const std::size_t n = degree_bound + 1;
    std::vector<Complex> samples(n);
    for (std::size_t k = 0; k < n; ++k) samples[k] = f(std::polar(radius, 2.0 * std::numbers::pi * k / n));
    std::vector<Complex> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex s{};
        for (std::size_t k = 0; k < n; ++k) s += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / n);
        c[j] = s / (static_cast<double>(n) * std::pow(radius, static_cast<double>(j)));
    }
    return Polynomial(std::move(c));
}

std::vector<Root> roots(const Polynomial& p, const RootOptions& opts) {
    std::vector<Complex> a = p.trimmed().coeffs();
    if (a.size() < 2) throw InvalidInput("roots: polynomial degree must be >= 1");
    for (const auto& c : a)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidInput("roots: non-finite coefficient");

    std::size_t zero_mult = 0;
    while (a.size() > 1 && a.front() == Complex{}) {
        a.erase(a.begin());
        ++zero_mult;
    }
    std::vector<Root> out;
    if (a.size() >= 2) {
        std::vector<Complex> z;
        if (a.size() == 2) {
            z = {-a[0] / a[1]};
        } else {
            z = aberth(a, opts.max_iterations);
        }
        out = cluster(a, z, opts.cluster_tol, opts.coefficient_noise);
    }
    if (zero_mult > 0) {
        // a cluster that already sits on zero absorbs the exact zeros
        auto it = std::find_if(out.begin(), out.end(), [](const Root& r) { return std::abs(r.value) == 0.0; });
        if (it != out.end()) {
            it->multiplicity += zero_mult;
        } else {
            out.push_back({0.0, zero_mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& x, const Root& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

std::vector<Complex> roots_flat(const Polynomial& p, const RootOptions& opts) {
    std::vector<Complex> out;
    for (const auto& r : roots(p, opts))
        for (std::size_t k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

TernaryForm::TernaryForm(int degree) : degree_(degree), coeffs_((degree + 1) * (degree + 1)) {
    if (degree < 0 || degree > 4) throw InvalidInput("TernaryForm: degree must be in [0, 4]");
}

Complex TernaryForm::coeff(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) return 0.0;
    return coeffs_[b * (degree_ + 1) + c];
}

void TernaryForm::set_coeff(int a, int b, int c, Complex value) {
    if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) throw InvalidInput("TernaryForm: bad monomial");
    coeffs_[b * (degree_ + 1) + c] = value;
}

Complex TernaryForm::operator()(std::span<const Complex> t) const {
    Complex s{};
    for (int b = 0; b <= degree_; ++b)
        for (int c = 0; b + c <= degree_; ++c) {
            const int a = degree_ - b - c;
            s += coeffs_[b * (degree_ + 1) + c] * ipow(t[0], a) * ipow(t[1], b) * ipow(t[2], c);
        }
    return s;
}

double TernaryForm::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool TernaryForm::is_zero(double abs_tol) const { return max_abs_coeff() <= abs_tol; }

TernaryForm TernaryForm::interpolate(const std::function<Complex(std::span<const Complex>)>& f, int degree) {
    TernaryForm form(degree);
    const int n = degree + 1;
    std::vector<Complex> samples(n * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const Complex t[3] = {1.0, std::polar(1.0, 2.0 * std::numbers::pi * j / n),
                                  std::polar(1.0, 2.0 * std::numbers::pi * k / n)};
            samples[j * n + k] = f(t);
        }
    for (int b = 0; b <= degree; ++b)
        for (int c = 0; b + c <= degree; ++c) {
            Complex s{};
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    s += samples[j * n + k] * std::polar(1.0, -2.0 * std::numbers::pi * (b * j + c * k) / n);
            form.set_coeff(degree - b - c, b, c, s / static_cast<double>(n * n));
        }
    return form;
}

namespace {

// Coefficients (ascending in the eliminated variable) of the form on the
// chart t[chart] = 1 with the remaining variable fixed to s.
std::vector<Complex> univariate_slice(const TernaryForm& f, int chart, int eliminate, Complex s) {
    const int d = f.degree();
    const int remaining = 3 - chart - eliminate;
    std::vector<Complex> out(d + 1);
    for (int b = 0; b <= d; ++b)
        for (int c = 0; b + c <= d; ++c) {
            const int e[3] = {d - b - c, b, c};
            out[e[eliminate]] += f.coeff(e[0], e[1], e[2]) * ipow(s, e[remaining]);
        }
    return out;
}

} // namespace

Polynomial resultant(const TernaryForm& p, const TernaryForm& q, int chart, int eliminate) {
    if (chart < 0 || chart > 2 || eliminate < 0 || eliminate > 2 || chart == eliminate) {
        throw InvalidInput("resultant: chart and eliminated variable must be distinct indices in [0, 2]");
    }
    if (p.is_zero() || q.is_zero()) throw InvalidInput("resultant: forms must not be identically zero");
    const int dp = p.degree();
    const int dq = q.degree();
    const auto sylvester_det = [&](Complex s) {
        const auto a = univariate_slice(p, chart, eliminate, s);
        const auto b = univariate_slice(q, chart, eliminate, s);
        const std::size_t n = static_cast<std::size_t>(dp + dq);
        if (n == 0) return Complex(1.0);
        ComplexMatrix m(n, n);
        for (int r = 0; r < dq; ++r)
            for (int k = 0; k <= dp; ++k) m(r, r + k) = a[dp - k];
        for (int r = 0; r < dp; ++r)
            for (int k = 0; k <= dq; ++k) m(dq + r, r + k) = b[dq - k];
        return det(m);
    };
    Polynomial res = Polynomial::interpolate(sylvester_det, static_cast<std::size_t>(dp * dq));
    const double scale = std::pow(p.max_abs_coeff(), dq) * std::pow(q.max_abs_coeff(), dp);
    if (res.max_abs_coeff() <= 1e-10 * scale) {
        throw DegenerateResultant("resultant vanishes identically: forms share a component");
    }
    // clean interpolation noise relative to the result itself
    std::vector<Complex> c = res.coeffs();
    const double m = res.max_abs_coeff();
    for (auto& x : c)
        if (std::abs(x) <= 1e-13 * m) x = 0.0;
    return Polynomial(std::move(c)).trimmed();
}

NewtonResult newton_system(const HolomorphicSystem& f, std::span<const Complex> start, const NewtonOptions& opts) {
    NewtonResult result;
    result.x.assign(start.begin(), start.end());
    Vector value;
    ComplexMatrix jac;
    f(result.x, value, jac);
    const auto inf_norm = [](const Vector& v) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    };
    const auto sq_norm = [](const Vector& v) {
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        return s;
    };
    bool singular = false;
    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        result.residual = inf_norm(value);
        result.steps = step;
        if (!std::isfinite(result.residual)) break;
        if (result.residual <= opts.tol) {
            result.status = NewtonStatus::converged;
            return result;
        }
        // one SVD serves both the singularity test and the minimum-norm step;
        // for a wide Jacobian decompose J^H = U S V^H so that J^+ = U S^+ V^H
        const bool wide = jac.rows() < jac.cols();
        const auto s = svd(wide ? adjoint(jac) : jac);
        const std::size_t r = s.sigma.size();
        const double smin = s.sigma[r - 1];
        singular = !(smin > opts.singular_rcond * s.sigma[0]);
        const ComplexMatrix& left = wide ? s.v : s.u;   // pairs with the value space
        const ComplexMatrix& right = wide ? s.u : s.v;  // pairs with the unknowns
        Vector delta(jac.cols());
        for (std::size_t k = 0; k < r; ++k) {
            if (!(s.sigma[k] > opts.singular_rcond * s.sigma[0])) continue;
            Complex c{};
            for (std::size_t i = 0; i < value.size(); ++i) c -= std::conj(left(i, k)) * value[i];
            c /= s.sigma[k];
            for (std::size_t j = 0; j < delta.size(); ++j) delta[j] += right(j, k) * c;
        }

        const double f0 = sq_norm(value);
        double lambda = 1.0;
        bool accepted = false;
        Vector trial_value;
        ComplexMatrix trial_jac;
        while (lambda >= opts.min_damping) {
            Vector trial = result.x;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += lambda * delta[i];
            f(trial, trial_value, trial_jac);
            const double f1 = sq_norm(trial_value);
            if (std::isfinite(f1) && f1 < f0) {
                result.x = std::move(trial);
                value = std::move(trial_value);
                jac = std::move(trial_jac);
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    result.residual = inf_norm(value);
    if (result.residual <= opts.tol) {
        result.status = NewtonStatus::converged;
    } else {
        result.status = singular ? NewtonStatus::singular_jacobian : NewtonStatus::max_steps;
    }
    return result;
}

} // namespace unitri
