#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "unitri/genericity.hpp"

using namespace unitri;
using namespace unitri::testing;

namespace {

// singular values are measured against the pencil's scale (1 + |A|) at a unit t,
// so a pencil matrix that vanishes outright counts as rank 0
std::size_t pencil_rank(const ComplexMatrix& a, const ProjectivePoint& t) {
    const auto s = svd(pencil_matrix(Pencil(a), t));
    const double floor = 1e-8 * (1.0 + a.norm_fro());
    std::size_t rank = 0;
    for (const double x : s.sigma)
        if (x > floor) ++rank;
    return rank;
}

} // namespace

TEST_CASE("check_s1 examples") {
    CHECK(check_s1(ComplexMatrix::identity(4)));
    CHECK_FALSE(check_s1(jordan_nilpotent(4)));
    for (std::uint64_t seed = 1; seed <= 100; ++seed) CHECK(check_s1(gaussian_matrix(4, 4, seed)));
}

TEST_CASE("check_s2 examples") {
    CHECK(check_s2(diagonal({1.0, 2.0, 3.0, 4.0})));
    CHECK_FALSE(check_s2(jordan_nilpotent(4)));
    CHECK_FALSE(check_s2(diagonal({1.0, 1.0, 2.0, 3.0})));
    CHECK_FALSE(check_s2(ComplexMatrix::identity(4)));
}

TEST_CASE("check_s3 on N4 holds and is decided by elimination") {
    const S3Result r = check_s3(jordan_nilpotent(4));
    CHECK(r.ok);
    CHECK_FALSE(r.heuristic);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("the minors of the N4 pencil force t = 0") {
    const Pencil p(jordan_nilpotent(4));
    // deleting row 4 and column 1 leaves an upper triangle with t1 on the diagonal
    const TernaryForm m41 = pencil_minor(p, 3, 0);
    const TernaryForm m14 = pencil_minor(p, 0, 3);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) {
            const int c = 3 - a - b;
            CHECK(std::abs(m41.coeff(a, b, c) - (b == 3 ? Complex(1.0) : Complex(0.0))) < 1e-12);
            CHECK(std::abs(m14.coeff(a, b, c) - (c == 3 ? Complex(1.0) : Complex(0.0))) < 1e-12);
        }
    // with t1 = t2 = 0 every principal minor is t0^3
    for (std::size_t i = 0; i < 4; ++i) {
        const TernaryForm mii = pencil_minor(p, i, i);
        CHECK(std::abs(mii.coeff(3, 0, 0) - 1.0) < 1e-12);
    }
    // the chart t0 = 1 eliminating t1: resultant of t1^3 and t2^3 is t2^9
    const Polynomial r = resultant(m41, m14, 0, 1);
    CHECK(r.degree() == 9);
    for (const auto& root : roots(r)) {
        CHECK(std::abs(root.value) < 1e-8);
        CHECK(root.multiplicity == 9);
    }
}

TEST_CASE("det of the N4 pencil expands as stated") {
    // G = t0^4 - 3 t0^2 t1 t2 + t1^2 t2^2
    const TernaryForm g = pencil_determinant(Pencil(jordan_nilpotent(4)));
    CHECK(g.degree() == 4);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b) {
            const int c = 4 - a - b;
            Complex expected{};
            if (a == 4) expected = 1.0;
            if (a == 2 && b == 1 && c == 1) expected = -3.0;
            if (a == 0 && b == 2 && c == 2) expected = 1.0;
            CHECK(std::abs(g.coeff(a, b, c) - expected) < 1e-12);
        }
}

TEST_CASE("exterior trace is the sum of principal minors") {
    const ComplexMatrix a = gaussian_matrix(4, 4, 17);
    const Pencil p(a);
    const TernaryForm e3 = pencil_exterior_trace(p);
    const Vector t = {Complex(0.2, 0.4), Complex(-1.1, 0.3), Complex(0.5, 0.5)};
    Complex sum{};
    for (std::size_t i = 0; i < 4; ++i) sum += pencil_minor(p, i, i)(t);
    CHECK(std::abs(e3(t) - sum) < 1e-10 * (1.0 + std::abs(sum)));
}

TEST_CASE("check_s3 on the identity fails") {
    const S3Result r = check_s3(ComplexMatrix::identity(4));
    CHECK_FALSE(r.ok);
}

TEST_CASE("check_s3 on diag(1,1,2,3) finds the rank-2 point [-1:1:0]") {
    const ComplexMatrix a = diagonal({1.0, 1.0, 2.0, 3.0});
    const S3Result r = check_s3(a);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    CHECK(pencil_rank(a, *r.witness) <= 2);
    // [-1:1:0] itself: diag(0, 0, 1, 2)
    CHECK(pencil_rank(a, ProjectivePoint{-1.0, 1.0, 0.0}) == 2);
}

TEST_CASE("every check_s3 witness has pencil rank at most n - 2") {
    const std::vector<ComplexMatrix> cases = {
        diagonal({1.0, 2.0, 3.0, 4.0}),
        diagonal({Complex(0.0, 1.0), 1.0, -1.0, 2.0}),
        hermitian_part(gaussian_matrix(4, 4, 5)),
    };
    for (const auto& a : cases) {
        const S3Result r = check_s3(a);
        if (!r.ok) {
            REQUIRE(r.witness.has_value());
            CHECK(pencil_rank(a, *r.witness) <= 2);
        }
    }
}

TEST_CASE("random Gaussian matrices are generic") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ComplexMatrix a = gaussian_matrix(4, 4, seed);
        const GenericityReport g = classify(a);
        CHECK(g.generic());
        CHECK(g.common_eigenvectors.empty());
    }
}

TEST_CASE("check_s3 agrees on A and A*") {
    const std::vector<ComplexMatrix> cases = {
        gaussian_matrix(4, 4, 3), gaussian_matrix(4, 4, 4), jordan_nilpotent(4),
        diagonal({1.0, 1.0, 2.0, 3.0}), ComplexMatrix::identity(4),
    };
    for (const auto& a : cases) CHECK(check_s3(a).ok == check_s3(adjoint(a)).ok);
}

TEST_CASE("check_s1 and check_s2 are unitarily invariant") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ComplexMatrix v = random_unitary(4, seed + 500);
        const std::vector<ComplexMatrix> cases = {gaussian_matrix(4, 4, seed), jordan_nilpotent(4),
                                                  diagonal({1.0, 1.0, 2.0, 3.0})};
        for (const auto& a : cases) {
            const ComplexMatrix b = v * a * adjoint(v);
            CHECK(check_s1(a) == check_s1(b));
            CHECK(check_s2(a) == check_s2(b));
        }
    }
}

TEST_CASE("common eigenvectors examples") {
    const ComplexMatrix h = hermitian_part(gaussian_matrix(4, 4, 2));
    CHECK(common_eigenvectors(h).size() == 4);

    ComplexMatrix block(4, 4);
    block(0, 1) = 1.0;
    block(2, 2) = 2.0;
    block(3, 3) = 3.0;
    const auto ce = common_eigenvectors(block);
    REQUIRE(ce.size() == 2);
    bool e3 = false, e4 = false;
    for (const auto& v : ce) {
        e3 = e3 || v.distance(ProjectivePoint(unit_vector(4, 2))) < 1e-8;
        e4 = e4 || v.distance(ProjectivePoint(unit_vector(4, 3))) < 1e-8;
    }
    CHECK(e3);
    CHECK(e4);

    CHECK(common_eigenvectors(gaussian_matrix(4, 4, 1)).empty());
}

TEST_CASE("classify reports the expected booleans") {
    const GenericityReport n4 = classify(jordan_nilpotent(4));
    CHECK_FALSE(n4.nonsingular);
    CHECK_FALSE(n4.distinct_eigenvalues);
    CHECK(n4.pencil_rank_ok);

    const GenericityReport id = classify(ComplexMatrix::identity(4));
    CHECK(id.nonsingular);
    CHECK_FALSE(id.distinct_eigenvalues);
    CHECK_FALSE(id.pencil_rank_ok);
    CHECK_FALSE(id.generic());
}
