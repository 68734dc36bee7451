#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "unitri/linalg.hpp"

using namespace unitri;
using namespace unitri::testing;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("adjoint examples") {
    CHECK(adjoint(ComplexMatrix::identity(4)) == ComplexMatrix::identity(4));

    const ComplexMatrix n4 = jordan_nilpotent(4);
    const ComplexMatrix n4t = adjoint(n4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(n4t(i, j) == (i == j + 1 ? Complex(1.0) : Complex(0.0)));

    const ComplexMatrix d = diagonal({I, 0.0, 0.0, 0.0});
    CHECK(adjoint(d) == diagonal({-I, 0.0, 0.0, 0.0}));
}

TEST_CASE("adjoint is an involution and reverses products") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ComplexMatrix m = gaussian_matrix(4, 7, seed);
        const ComplexMatrix n = gaussian_matrix(7, 3, seed + 100);
        CHECK(adjoint(adjoint(m)) == m);
        CHECK(max_abs_diff(adjoint(m * n), adjoint(n) * adjoint(m)) < 1e-13);
    }
}

TEST_CASE("matrix dimensions are capped and checked") {
    CHECK_THROWS_AS(ComplexMatrix(kMaxDim + 1, 2), InvalidInput);
    CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), InvalidInput);
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(NAN, 0.0);
    CHECK_THROWS_AS(require_finite(m, "test"), InvalidInput);
}

TEST_CASE("eigen on a diagonal matrix returns the standard basis") {
    const auto r = eigen(diagonal({1.0, 2.0, 3.0, 4.0}));
    REQUIRE(r.pairs.size() == 4);
    CHECK_FALSE(r.repeated);
    for (const auto& p : r.pairs) {
        const auto k = static_cast<std::size_t>(std::lround(p.value.real())) - 1;
        CHECK(std::abs(p.value - Complex(static_cast<double>(k + 1))) < 1e-12);
        CHECK(std::abs(std::abs(p.vector[k]) - 1.0) < 1e-12);
    }
}

TEST_CASE("eigen on the nilpotent Jordan block reports one eigenvalue of multiplicity 4") {
    const auto r = eigen(jordan_nilpotent(4));
    REQUIRE(r.pairs.size() == 4);
    CHECK(r.repeated);
    for (const auto& p : r.pairs) {
        CHECK(std::abs(p.value) < 1e-12);
        CHECK(p.multiplicity == 4);
    }
}

TEST_CASE("eigen on the path-graph adjacency matches 2cos(k pi / 5)") {
    const ComplexMatrix n4 = jordan_nilpotent(4);
    const auto r = eigen(n4 + adjoint(n4));
    std::vector<Complex> got, expected;
    for (const auto& p : r.pairs) got.push_back(p.value);
    for (int k = 1; k <= 4; ++k) expected.emplace_back(2.0 * std::cos(k * std::numbers::pi / 5.0));
    CHECK(multiset_gap(got, expected) < 1e-13);
}

TEST_CASE("eigen: trace and determinant identities on random matrices") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const std::size_t n = 2 + seed % 3;
        const ComplexMatrix m = gaussian_matrix(n, n, seed);
        const auto r = eigen(m);
        REQUIRE(r.pairs.size() == n);
        Complex sum{}, prod = 1.0, tr{};
        for (const auto& p : r.pairs) {
            sum += p.value;
            prod *= p.value;
            CHECK(p.residual <= 1e-8 * m.norm_fro());
        }
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        const double scale = m.norm_fro();
        CHECK(std::abs(sum - tr) <= 1e-10 * scale);
        CHECK(std::abs(prod - det(m)) <= 1e-10 * std::pow(scale, static_cast<double>(n)));
    }
}

TEST_CASE("rank_svd examples") {
    CHECK(rank_svd(ComplexMatrix(4, 4)).rank == 0);
    const Vector e1 = unit_vector(4, 0), e2 = unit_vector(4, 1);
    const std::vector<Vector> cols = {e1, e2, axpy(1.0, e1, e2)};
    const auto info = rank_svd(ComplexMatrix::from_columns(cols));
    CHECK(info.rank == 2);
    CHECK(info.singular_values.size() == 3);
    CHECK_THROWS_AS(rank_svd(ComplexMatrix(2, 2), 0.0), InvalidInput);
}

TEST_CASE("rank_svd: singular values are nonincreasing and adjoint-invariant") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        ComplexMatrix m = gaussian_matrix(4, 7, seed);
        if (seed % 3 == 0) {
            // force rank 2
            const ComplexMatrix l = gaussian_matrix(4, 2, seed + 7), r = gaussian_matrix(2, 7, seed + 9);
            m = l * r;
        }
        const auto a = rank_svd(m);
        const auto b = rank_svd(adjoint(m));
        CHECK(a.rank == b.rank);
        CHECK(a.rank == (seed % 3 == 0 ? 2u : 4u));
        for (std::size_t k = 0; k + 1 < a.singular_values.size(); ++k)
            CHECK(a.singular_values[k] >= a.singular_values[k + 1]);
        for (std::size_t k = 0; k < a.singular_values.size(); ++k)
            CHECK(std::abs(a.singular_values[k] - b.singular_values[k]) <= 1e-12 * a.singular_values[0]);
    }
}

TEST_CASE("svd reconstructs the matrix and sigma^2 are eigenvalues of M^H M") {
    for (std::uint64_t seed = 3; seed <= 12; ++seed) {
        const ComplexMatrix m = gaussian_matrix(4, 4, seed);
        const auto s = svd(m);
        ComplexMatrix sig(4, 4);
        for (std::size_t k = 0; k < 4; ++k) sig(k, k) = s.sigma[k];
        CHECK(max_abs_diff(s.u * sig * adjoint(s.v), m) < 1e-12);
        // independent route: characteristic polynomial of the Gram matrix
        const auto gram = eigen(adjoint(m) * m);
        std::vector<Complex> lam, sq;
        for (const auto& p : gram.pairs) lam.push_back(p.value);
        for (double x : s.sigma) sq.emplace_back(x * x);
        CHECK(multiset_gap(lam, sq) < 1e-10 * s.sigma[0] * s.sigma[0]);
    }
}

TEST_CASE("real least squares returns the minimum-norm solution") {
    RealMatrix a = RealMatrix::from_rows({{1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    const std::vector<double> b = {2.0, 3.0};
    const auto x = solve_least_squares(a, std::span<const double>(b));
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
    CHECK(x[2] == doctest::Approx(3.0));
}

TEST_CASE("orthonormalize examples") {
    const std::vector<Vector> in = {scaled(unit_vector(4, 0), 2.0), scaled(unit_vector(4, 1), 3.0)};
    const auto out = orthonormalize(in);
    CHECK(max_abs_diff(ComplexMatrix::from_columns(out),
                       ComplexMatrix::from_columns(std::vector<Vector>{unit_vector(4, 0), unit_vector(4, 1)})) < 1e-15);

    const Vector e1 = unit_vector(2, 0), e2 = unit_vector(2, 1);
    const auto f = orthonormalize(std::vector<Vector>{axpy(1.0, e1, e2), e2});
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(f[0][0] - h) < 1e-15);
    CHECK(std::abs(f[0][1] - h) < 1e-15);
    // second vector is -(e1 - e2)/sqrt 2 up to phase
    CHECK(std::abs(std::abs(f[1][0]) - h) < 1e-15);
    CHECK(std::abs(f[1][0] + f[1][1]) < 1e-15);

    CHECK_THROWS_AS(orthonormalize(std::vector<Vector>{e1, scaled(e1, 2.0)}), DependentInput);
}

TEST_CASE("orthonormalize: F^H F = I and prefix spans are preserved") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Vector> in;
        for (int k = 0; k < 4; ++k) in.push_back(gaussian_vector(4, rng));
        const auto f = orthonormalize(in);
        const ComplexMatrix fm = ComplexMatrix::from_columns(f);
        CHECK(max_abs_diff(adjoint(fm) * fm, ComplexMatrix::identity(4)) <= 4 * 1e-14);
        for (std::size_t k = 0; k < 4; ++k) {
            const std::span<const Vector> prefix(f.data(), k + 1);
            CHECK(norm(project_out(prefix, in[k])) <= 1e-12 * norm(in[k]));
        }
    }
}

TEST_CASE("det examples and unitary invariance") {
    CHECK(std::abs(det(ComplexMatrix::identity(4)) - 1.0) < 1e-15);
    ComplexMatrix m = gaussian_matrix(4, 4, 8);
    for (std::size_t i = 0; i < 4; ++i) m(i, 3) = m(i, 1);
    CHECK(std::abs(det(m)) < 1e-13);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ComplexMatrix a = gaussian_matrix(4, 4, seed);
        const ComplexMatrix u = random_unitary(4, seed + 50);
        const Complex d0 = det(a);
        CHECK(std::abs(det(u * a * adjoint(u)) - d0) <= 1e-12 * std::pow(a.norm_fro(), 4));
        // adjugate identity
        CHECK(max_abs_diff(adjugate(a) * a, d0 * ComplexMatrix::identity(4)) <= 1e-11 * std::pow(a.norm_fro(), 4));
    }
}

TEST_CASE("det of the N4 pencil is a quartic in t0 with roots -eig(t1 N4 + t2 N4*)") {
    const ComplexMatrix n4 = jordan_nilpotent(4);
    const Complex t1(0.7, -0.2), t2(-0.3, 1.1);
    const ComplexMatrix b = t1 * n4 + t2 * adjoint(n4);
    const auto ev = eigen(b);
    for (const auto& p : ev.pairs) {
        ComplexMatrix pencil = b;
        for (std::size_t i = 0; i < 4; ++i) pencil(i, i) += -p.value;
        CHECK(std::abs(det(pencil)) < 1e-12);
    }
}

TEST_CASE("projective points are canonical") {
    const ProjectivePoint p{Complex(0.0, 2.0), Complex(1.0, 1.0)};
    CHECK(std::abs(norm(p.coords()) - 1.0) < 1e-15);
    CHECK(p[0].imag() == 0.0);
    CHECK(p[0].real() > 0.0);
    const ProjectivePoint q{Complex(0.0, -4.0), Complex(-2.0, -2.0)};
    CHECK(p.distance(q) < 1e-7);
    CHECK(std::abs(p[1] - q[1]) < 1e-15);
    CHECK_THROWS_AS((ProjectivePoint{0.0, 0.0}), InvalidInput);
}
