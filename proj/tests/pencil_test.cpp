#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "unitri/genericity.hpp"
#include "unitri/pencil.hpp"

using namespace unitri;
using namespace unitri::testing;

namespace {

ComplexMatrix unit_gaussian(std::uint64_t seed) {
    ComplexMatrix a = gaussian_matrix(4, 4, seed);
    a *= Complex(1.0 / a.norm_fro());
    return a;
}

double pencil_residual(const Pencil& p, const PencilPoint& pt) {
    const ComplexMatrix m = pencil_matrix(p, pt.t);
    return norm(m * pt.v.coords()) / m.norm_fro();
}

ComplexMatrix random_tridiagonal(std::uint64_t seed) {
    ComplexMatrix a = gaussian_matrix(4, 4, seed);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i > j + 1 || j > i + 1) a(i, j) = 0.0;
    return a;
}

} // namespace

TEST_CASE("pencil_matrix examples") {
    const Pencil g(gaussian_matrix(4, 4, 3));
    CHECK(max_abs_diff(pencil_matrix(g, ProjectivePoint{1.0, 0.0, 0.0}), ComplexMatrix::identity(4)) < 1e-15);
    CHECK(max_abs_diff(pencil_matrix(g, ProjectivePoint{0.0, 1.0, 0.0}), g.A()) < 1e-15);

    // N4: t0 on the diagonal, t1 above it, t2 below it
    const Pencil n4(jordan_nilpotent(4));
    const Vector t = {Complex(0.3, 0.1), Complex(-0.5, 0.2), Complex(0.4, -0.7)};
    const ProjectivePoint tp(t);
    const ComplexMatrix m = pencil_matrix(n4, tp);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Complex expected{};
            if (i == j) expected = tp[0];
            if (j == i + 1) expected = tp[1];
            if (i == j + 1) expected = tp[2];
            CHECK(std::abs(m(i, j) - expected) < 1e-15);
        }
}

TEST_CASE("Pencil caches the adjoint and powers") {
    const ComplexMatrix a = gaussian_matrix(4, 4, 8);
    const Pencil p(a);
    CHECK(p.Astar() == adjoint(a));
    CHECK(max_abs_diff(p.A2(), a * a) < 1e-13);
    CHECK(max_abs_diff(p.Astar2(), adjoint(a) * adjoint(a)) < 1e-13);
    CHECK(p.norm() == doctest::Approx(a.norm_fro()));
}

TEST_CASE("theta fiber of a Hermitian matrix at [1:0] gives its real spectrum") {
    const ComplexMatrix h = hermitian_part(gaussian_matrix(4, 4, 21));
    const Pencil p(h);
    const auto fiber = theta_fiber(p, ProjectivePoint{1.0, 0.0});
    REQUIRE(fiber.size() == 4);
    std::vector<Complex> minus_lambda;
    for (const auto& pt : fiber) {
        const Complex lam = -pt.t[0] / pt.t[1];
        CHECK(std::abs(lam.imag()) < 1e-12);
        minus_lambda.push_back(lam);
    }
    std::vector<Complex> ev;
    for (const auto& pr : eigen(h).pairs) ev.push_back(pr.value);
    CHECK(multiset_gap(minus_lambda, ev) < 1e-10);
}

TEST_CASE("theta fiber of N4 at [1:0] is one point repeated four times") {
    const Pencil p(jordan_nilpotent(4));
    const auto fiber = theta_fiber(p, ProjectivePoint{1.0, 0.0});
    REQUIRE(fiber.size() == 4);
    for (const auto& pt : fiber) {
        CHECK(pt.t.distance(ProjectivePoint{0.0, 1.0, 0.0}) < 1e-12);
        CHECK(pt.near_branch);
    }
}

TEST_CASE("theta fiber points lie on D and carry kernel vectors") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Pencil p(unit_gaussian(seed));
        const auto fiber = theta_fiber(p, ProjectivePoint{1.0, 1.0});
        REQUIRE(fiber.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(det(pencil_matrix(p, fiber[i].t))) < 1e-12);
            CHECK(pencil_residual(p, fiber[i]) < 1e-10);
            CHECK(curve_c_residual(p, fiber[i].v.coords()) < 1e-10);
            for (std::size_t j = i + 1; j < 4; ++j) CHECK(fiber[i].t.distance(fiber[j].t) > 1e-8);
        }
    }
}

TEST_CASE("kernel_vector examples") {
    const Pencil p(jordan_nilpotent(4));
    CHECK(kernel_vector(p, ProjectivePoint{0.0, 1.0, 0.0}).distance(ProjectivePoint{1.0, 0.0, 0.0, 0.0}) < 1e-12);
    CHECK(kernel_vector(p, ProjectivePoint{0.0, 0.0, 1.0}).distance(ProjectivePoint{0.0, 0.0, 0.0, 1.0}) < 1e-12);

    // the identity pencil at [-1:1:0] vanishes: no one-dimensional kernel
    const Pencil id(ComplexMatrix::identity(4));
    CHECK_THROWS_AS(kernel_vector(id, ProjectivePoint{-1.0, 1.0, 0.0}), RankDeficientPencil);
}

TEST_CASE("kernel map followed by the curve map returns t") {
    // for v = K(t), the 4x3 matrix [v, Av, A*v] has a one-dimensional kernel spanned by t
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Pencil p(unit_gaussian(seed + 40));
        std::mt19937_64 rng(seed);
        const Vector base = gaussian_vector(2, rng);
        for (const auto& pt : theta_fiber(p, ProjectivePoint(base))) {
            const Vector& v = pt.v.coords();
            const std::vector<Vector> cols = {v, p.A() * v, p.Astar() * v};
            const ComplexMatrix lam = ComplexMatrix::from_columns(cols);
            const auto s = svd(lam);
            CHECK(s.sigma[2] <= 1e-10 * s.sigma[0]);
            CHECK(s.sigma[1] > 1e-6 * s.sigma[0]);
            const ProjectivePoint back(smallest_right_singular_vector(lam));
            CHECK(back.distance(pt.t) < 1e-8);
            CHECK(curve_point(p, v).t.distance(pt.t) < 1e-8);
        }
    }
}

TEST_CASE("3x3 minors of the pencil are cubic forms") {
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Pencil p(gaussian_matrix(4, 4, seed));
        const Vector t = gaussian_vector(3, rng);
        const Complex lambda(0.7, -1.3);
        const Vector lt = scaled(t, lambda);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                const TernaryForm m = pencil_minor(p, r, c);
                CHECK(m.degree() == 3);
                const Complex lhs = m(lt);
                const Complex rhs = std::pow(lambda, 3) * m(t);
                CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
            }
    }
}

TEST_CASE("curve_c_residual examples") {
    const ComplexMatrix a = unit_gaussian(5);
    const Pencil p(a);
    for (const auto& pr : eigen(a).pairs) CHECK(curve_c_residual(p, pr.vector) < 1e-12);
    for (const auto& pr : eigen(adjoint(a)).pairs) CHECK(curve_c_residual(p, pr.vector) < 1e-12);

    std::mt19937_64 rng(9);
    std::size_t far = 0;
    for (int k = 0; k < 50; ++k)
        if (curve_c_residual(p, gaussian_vector(4, rng)) > 1e-3) ++far;
    CHECK(far >= 48);
}

TEST_CASE("section_residual vanishes at e1 for a tridiagonal matrix") {
    const Pencil p(random_tridiagonal(4));
    const SectionValue s = section_residual(p, unit_vector(4, 0));
    CHECK(std::abs(s.h) < 1e-14);
    CHECK(s.sigma4 < 1e-14);

    // at a random point of C it does not
    const auto fiber = theta_fiber(p, ProjectivePoint{Complex(0.3, 0.2), 1.0});
    const SectionValue r = section_residual(p, fiber[0].v.coords());
    CHECK(r.sigma4 > 1e-6);
}

TEST_CASE("section_residual h vanishes at eigenvectors of A") {
    const ComplexMatrix a = unit_gaussian(12);
    const Pencil p(a);
    for (const auto& pr : eigen(a).pairs) CHECK(section_residual(p, pr.vector).h_normalized < 1e-12);
}

TEST_CASE("section zeros of a tridiagonal matrix include e1") {
    const ComplexMatrix a = random_tridiagonal(6);
    const Pencil p(a);
    const auto zeros = section_zeros(p);
    bool found = false;
    for (const auto& z : zeros) found = found || z.point.v.distance(ProjectivePoint(unit_vector(4, 0))) < 1e-6;
    CHECK(found);
}

TEST_CASE("certified section zeros satisfy every invariant") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ComplexMatrix a = unit_gaussian(seed + 100);
        const Pencil p(a);
        const auto zeros = section_zeros(p);
        CHECK(zeros.size() >= 1);
        CHECK(zeros.size() <= 12);
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            const auto& z = zeros[i];
            CHECK(z.accepted);
            CHECK(z.sigma4 <= 1e-8);
            CHECK(z.curve_residual <= 1e-8);
            CHECK(pencil_residual(p, z.point) < 1e-10);
            const Vector& v = z.point.v.coords();
            const std::vector<Vector> w = {v, a * v, adjoint(a) * v};
            CHECK(relative_sigma(w, 2) > 1e-6); // dim W(v) = 2
            if (i > 0) CHECK(zeros[i - 1].sigma4 <= z.sigma4);
            for (std::size_t j = 0; j < i; ++j) CHECK(zeros[j].point.v.distance(z.point.v) > 1e-6);
        }
    }
}

TEST_CASE("curve zeros of a hyperplane satisfy the hyperplane and the curve") {
    const ComplexMatrix a = unit_gaussian(31);
    const Pencil p(a);
    const Vector c = {1.0, Complex(0.5, -0.2), Complex(-0.3, 0.9), 0.25};
    const auto zeros = curve_zeros(p, linear_function(c), SweepOptions{});
    CHECK(zeros.size() == 6);
    for (const auto& z : zeros) {
        Complex s{};
        for (std::size_t i = 0; i < 4; ++i) s += c[i] * z.point.v[i];
        CHECK(std::abs(s) < 1e-10);
        CHECK(curve_c_residual(p, z.point.v.coords()) < 1e-10);
    }
}

TEST_CASE("the sweep honours the stop callback") {
    const Pencil p(unit_gaussian(2));
    std::size_t calls = 0;
    const auto zeros = section_zeros(p, SweepOptions{}, [&](const SectionCandidate&) { return ++calls == 1; });
    CHECK(calls == 1);
    CHECK(zeros.size() == 1);
}

TEST_CASE("resolve_threads prefers the explicit request") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}
