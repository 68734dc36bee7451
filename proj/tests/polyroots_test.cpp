#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "unitri/polyroots.hpp"

using namespace unitri;
using namespace unitri::testing;

namespace {
const Complex I(0.0, 1.0);

Polynomial from_roots(const std::vector<Complex>& rs, Complex lead = 1.0) {
    std::vector<Complex> c = {lead};
    for (const auto& r : rs) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return Polynomial(std::move(c));
}
} // namespace

TEST_CASE("roots examples") {
    const auto r = roots_flat(Polynomial{1.0, 0.0, 1.0});
    CHECK(multiset_gap(r, {I, -I}) < 1e-14);

    const auto cube = roots(Polynomial{-1.0, 3.0, -3.0, 1.0});
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].multiplicity == 3);
    CHECK(std::abs(cube[0].value - 1.0) < 1e-12);

    CHECK_THROWS_AS(roots(Polynomial{3.0}), InvalidInput);
}

TEST_CASE("roots of the path-graph characteristic polynomial") {
    // z^4 - 3 z^2 + 1
    const auto r = roots_flat(Polynomial{1.0, 0.0, -3.0, 0.0, 1.0});
    std::vector<Complex> expected;
    for (int k = 1; k <= 4; ++k) expected.emplace_back(2.0 * std::cos(k * std::numbers::pi / 5.0));
    CHECK(multiset_gap(r, expected) < 1e-14);
}

TEST_CASE("roots: Vieta identities and affine covariance") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 1 + static_cast<std::size_t>(trial % 12);
        const Vector c = gaussian_vector(d + 1, rng);
        const Polynomial p(c);
        const auto r = roots_flat(p);
        REQUIRE(r.size() == d);
        Complex sum{}, prod = 1.0;
        for (const auto& z : r) {
            sum += z;
            prod *= z;
        }
        const double scale = std::pow(1.0 + std::abs(sum), 1.0) * 1e-9;
        CHECK(std::abs(sum + c[d - 1] / c[d]) <= scale * (1.0 + std::abs(c[d - 1] / c[d])));
        CHECK(std::abs(prod - std::pow(-1.0, static_cast<double>(d)) * c[0] / c[d]) <=
              1e-8 * (1.0 + std::abs(c[0] / c[d])));
        for (const auto& z : r) CHECK(std::abs(p(z)) <= 1e-9 * p.max_abs_coeff() * std::pow(1.0 + std::abs(z), d));

        // roots w of q(z) = p(a z + b) map to roots a w + b of p, measured on the scale of q
        const Complex a = gaussian_vector(1, rng)[0], b = gaussian_vector(1, rng)[0];
        const Polynomial q = Polynomial::interpolate([&](Complex z) { return p(a * z + b); }, d, 1.0);
        const auto rq = roots_flat(q);
        REQUIRE(rq.size() == d);
        for (const auto& w : rq) {
            const Complex z = a * w + b;
            CHECK(std::abs(p(z)) <= 1e-10 * q.max_abs_coeff() * std::pow(1.0 + std::abs(w), d));
        }
    }
}

TEST_CASE("roots: clusters of known multiplicity") {
    const auto r = roots(from_roots({2.0, 2.0, -1.0, I, I}));
    std::size_t total = 0;
    for (const auto& x : r) {
        total += x.multiplicity;
        if (std::abs(x.value - 2.0) < 1e-6) CHECK(x.multiplicity == 2);
        if (std::abs(x.value - I) < 1e-6) CHECK(x.multiplicity == 2);
    }
    CHECK(total == 5);
    CHECK(r.size() == 3);

    const auto z4 = roots(Polynomial{0.0, 0.0, 0.0, 0.0, 1.0});
    REQUIRE(z4.size() == 1);
    CHECK(z4[0].multiplicity == 4);
    CHECK(z4[0].value == Complex(0.0));
}

TEST_CASE("ternary form interpolation is exact") {
    TernaryForm f(3);
    f.set_coeff(1, 1, 1, 2.0 - I);
    f.set_coeff(0, 3, 0, 0.5);
    f.set_coeff(3, 0, 0, -1.0);
    const TernaryForm g = TernaryForm::interpolate([&](std::span<const Complex> t) { return f(t); }, 3);
    for (int b = 0; b <= 3; ++b)
        for (int c = 0; b + c <= 3; ++c) CHECK(std::abs(g.coeff(3 - b - c, b, c) - f.coeff(3 - b - c, b, c)) < 1e-14);
}

TEST_CASE("resultant of monomials") {
    TernaryForm p(3), q(3);
    p.set_coeff(3, 0, 0, 1.0); // t0^3
    q.set_coeff(0, 3, 0, 1.0); // t1^3
    // chart t2 = 1, eliminate t0: Res = t1^9 up to sign
    const Polynomial r = resultant(p, q, 2, 0);
    REQUIRE(r.degree() == 9);
    for (int k = 0; k < 9; ++k) CHECK(std::abs(r.coeffs()[k]) < 1e-12);
    CHECK(std::abs(std::abs(r.coeffs()[9]) - 1.0) < 1e-12);
    const auto rt = roots(r);
    REQUIRE(rt.size() == 1);
    CHECK(rt[0].multiplicity == 9);

    CHECK_THROWS_AS(resultant(p, p, 2, 0), DegenerateResultant);
    CHECK_THROWS_AS(resultant(p, q, 1, 1), InvalidInput);
}

TEST_CASE("resultant vanishes where two forms share a linear factor") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        // p = L * P2, q = L * Q2 with a shared linear factor L vanishing at a known point
        const Vector l = gaussian_vector(3, rng);
        const Vector pc = gaussian_vector(6, rng), qc = gaussian_vector(6, rng);
        const auto quad = [](const Vector& c, std::span<const Complex> t) {
            return c[0] * t[0] * t[0] + c[1] * t[1] * t[1] + c[2] * t[2] * t[2] + c[3] * t[0] * t[1] +
                   c[4] * t[0] * t[2] + c[5] * t[1] * t[2];
        };
        const auto lin = [&](std::span<const Complex> t) { return l[0] * t[0] + l[1] * t[1] + l[2] * t[2]; };
        const TernaryForm p = TernaryForm::interpolate([&](auto t) { return lin(t) * quad(pc, t); }, 3);
        const TernaryForm q = TernaryForm::interpolate([&](auto t) { return lin(t) * quad(qc, t) + 0.0; }, 3);
        CHECK_THROWS_AS(resultant(p, q, 2, 0), DegenerateResultant);

        // perturb q off the shared component; the resultant must still vanish at
        // the t1 of a point where p and the unperturbed-shared part meet
        const Complex s = gaussian_vector(1, rng)[0];
        const Complex t0 = -(l[1] * s + l[2]) / l[0]; // L(t0, s, 1) = 0
        const TernaryForm q2 = TernaryForm::interpolate(
            [&](auto t) { return lin(t) * quad(qc, t) + (t[1] - s * t[2]) * t[2] * t[2] * 0.3; }, 3);
        const Polynomial r = resultant(p, q2, 2, 0);
        CHECK(std::abs(r(s)) <= 1e-9 * r.max_abs_coeff() * std::pow(1.0 + std::abs(s), 9));
        (void)t0;
    }
}

TEST_CASE("newton_system examples") {
    const HolomorphicSystem lin = [](std::span<const Complex> x, Vector& f, ComplexMatrix& j) {
        f = {x[0] - 1.0, x[1] - 2.0};
        j = ComplexMatrix::identity(2);
    };
    const Vector s0 = {0.0, 0.0};
    auto r = newton_system(lin, s0);
    CHECK(r.converged());
    CHECK(std::abs(r.x[0] - 1.0) < 1e-14);
    CHECK(std::abs(r.x[1] - 2.0) < 1e-14);

    const HolomorphicSystem quad = [](std::span<const Complex> x, Vector& f, ComplexMatrix& j) {
        f = {x[0] * x[0] - 1.0, x[1] - x[0]};
        j = ComplexMatrix::from_rows({{2.0 * x[0], 0.0}, {-1.0, 1.0}});
    };
    const Vector s1 = {0.9, 0.0};
    r = newton_system(quad, s1);
    CHECK(r.converged());
    CHECK(std::abs(r.x[0] - 1.0) < 1e-13);
    CHECK(std::abs(r.x[1] - 1.0) < 1e-13);
    CHECK(r.residual <= NewtonOptions{}.tol);
}

TEST_CASE("newton_system reports a singular Jacobian without a root") {
    // x^2 + 1 = 0 has no real... but over C it does; use |f| bounded away: f = exp-like constant
    const HolomorphicSystem flat = [](std::span<const Complex> x, Vector& f, ComplexMatrix& j) {
        f = {1.0 + 0.0 * x[0]};
        j = ComplexMatrix(1, 1);
    };
    const Vector s = {0.3};
    const auto r = newton_system(flat, s);
    CHECK_FALSE(r.converged());
    CHECK(r.status == NewtonStatus::singular_jacobian);
}
