#include <random>
#include <sstream>

#include "doctest.h"
#include "extlab/numkit.hpp"
#include "extlab/shifts.hpp"

using namespace extlab;
using numkit::BandProfile;
using numkit::cplx;
using numkit::ComplexMatrix;
using numkit::Truncation;

namespace {

Truncation random_lower(long n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c <= r; ++c) m(r, c) = cplx(ur(rng), ur(rng));
    return Truncation(std::move(m), 0, BandProfile::lower_triangular());
}

Truncation bilateral_identity_minus_backward(long size) {
    ComplexMatrix t = ComplexMatrix::Identity(size, size);
    for (long i = 0; i + 1 < size; ++i) t(i, i + 1) = -1.0;
    return Truncation(std::move(t), -(size - 1) / 2, BandProfile::banded(0, 1));
}

}  // namespace

TEST_CASE("band profile admits entries inside the declared bands") {
    const BandProfile b = BandProfile::banded(2, 1);
    CHECK(b.admits(3, 1));
    CHECK(b.admits(1, 2));
    CHECK_FALSE(b.admits(4, 1));
    CHECK_FALSE(b.admits(1, 3));
    CHECK(BandProfile::full().admits(100, 0));
    CHECK_FALSE(BandProfile::lower_triangular().admits(0, 1));
}

TEST_CASE("truncation construction validates invariants") {
    CHECK_THROWS_AS(Truncation(ComplexMatrix::Zero(2, 3), 0, BandProfile::full()),
                    std::invalid_argument);
    CHECK_THROWS_AS(Truncation(ComplexMatrix::Zero(2, 2), 1, BandProfile::full()),
                    std::invalid_argument);
    ComplexMatrix bad = ComplexMatrix::Zero(3, 3);
    bad(0, 2) = 1.0;  // outside a lower-triangular band
    CHECK_THROWS_AS(Truncation(std::move(bad), 0, BandProfile::lower_triangular()),
                    std::invalid_argument);
}

TEST_CASE("product of lower-triangular truncations is exact on the full block") {
    const long n = 8;
    const Truncation a = random_lower(n, 11);
    const Truncation b = random_lower(n, 22);
    const auto [prod, win] = numkit::mat_mul(a, b);

    REQUIRE(win.rows.has_value());
    CHECK(win.rows->lo == 0);
    CHECK(win.rows->hi == n - 1);

    // Direct summation oracle: lower-triangular sums never leave the block.
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) {
            cplx s(0.0, 0.0);
            for (long j = 0; j < n; ++j) s += a.mat(r, j) * b.mat(j, c);
            CHECK(std::abs(prod.mat(r, c) - s) <= 1e-14);
        }
}

TEST_CASE("one superdiagonal on the left factor consumes one boundary row") {
    const long n = 8;
    ComplexMatrix t = ComplexMatrix::Identity(n, n);
    for (long i = 0; i + 1 < n; ++i) t(i, i + 1) = -1.0;
    const Truncation left(std::move(t), 0, BandProfile::banded(0, 1));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    ComplexMatrix x(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) x(r, c) = cplx(ur(rng), ur(rng));
    const Truncation full(std::move(x), 0, BandProfile::full());

    const auto [prod, win] = numkit::mat_mul(left, full);
    (void)prod;
    REQUIRE(win.rows.has_value());
    CHECK(win.rows->lo == 0);
    CHECK(win.rows->hi == 6);
    CHECK_FALSE(win.cols.has_value());
}

TEST_CASE("squared backward shift: ones on the second superdiagonal, window rows 0..1") {
    const Truncation bs = shifts::unilateral_backward(3);  // 4x4
    const auto [prod, win] = numkit::mat_mul(bs, bs);
    for (long r = 0; r < 4; ++r)
        for (long c = 0; c < 4; ++c) {
            const cplx want = (c == r + 2) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            CHECK(prod.mat(r, c) == want);
        }
    REQUIRE(win.rows.has_value());
    CHECK(win.rows->lo == 0);
    CHECK(win.rows->hi == 1);
}

TEST_CASE("mat_mul rejects size and offset mismatches") {
    const Truncation a = random_lower(4, 1);
    const Truncation b = random_lower(5, 2);
    CHECK_THROWS_AS(numkit::mat_mul(a, b), std::invalid_argument);
    const Truncation c = bilateral_identity_minus_backward(5);
    const Truncation d = random_lower(5, 3);
    CHECK_THROWS_AS(numkit::mat_mul(c, d), std::invalid_argument);
}

TEST_CASE("op_norm: identity and diagonal") {
    Truncation id(ComplexMatrix::Identity(16, 16), 0, BandProfile::diagonal());
    CHECK(numkit::op_norm(id) == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    d(2, 2) = 3.0;
    Truncation diag(std::move(d), 0, BandProfile::diagonal());
    CHECK(numkit::op_norm(diag) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("op_norm is invariant under a unimodular scalar") {
    const Truncation a = random_lower(24, 77);
    const double base = numkit::op_norm(a, 1e-11);
    const cplx phase = std::polar(1.0, 1.234);
    Truncation b(ComplexMatrix(phase * a.mat), 0, a.band);
    CHECK(numkit::op_norm(b, 1e-11) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("op_norm rejects bad tolerance and reports non-convergence") {
    const Truncation a = random_lower(8, 3);
    CHECK_THROWS_AS(numkit::op_norm(a, 0.0), std::invalid_argument);
    try {
        numkit::op_norm(a, 1e-14, 2);
        FAIL("expected NonConvergenceError");
    } catch (const numkit::NonConvergenceError& e) {
        CHECK(e.last_estimate > 0.0);
    }
}

TEST_CASE("sylvester probe: commuting cases hit zero") {
    const Truncation t = bilateral_identity_minus_backward(11);
    CHECK(numkit::sylvester_min_sv(t, t, cplx(1.0, 0.0)) <= 1e-12);

    // the identity commutes with any nonzero A
    const Truncation a = random_lower(6, 4);
    CHECK(numkit::sylvester_min_sv(a, a, cplx(1.0, 0.0)) <= 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    Truncation diag(std::move(d), 0, BandProfile::diagonal());
    // eigenvalue ratio 2 exists, so a rank-one solution does
    CHECK(numkit::sylvester_min_sv(diag, diag, cplx(2.0, 0.0)) <= 1e-12);
}

TEST_CASE("sylvester probe matches the brute-force Kronecker SVD oracle") {
    const Truncation t = bilateral_identity_minus_backward(11);
    for (cplx lam : {cplx(2.0, 0.0), cplx(0.5, 0.0), cplx(0.0, 1.0)}) {
        const ComplexMatrix k = numkit::sylvester_kronecker(t, t, lam);
        Eigen::JacobiSVD<ComplexMatrix> svd(k);
        const double oracle = svd.singularValues()(k.rows() - 1);
        const double impl = numkit::sylvester_min_sv(t, t, lam);
        CHECK(std::abs(impl - oracle) <= 1e-12 * std::max(1.0, oracle));
        CHECK(impl > 0.0);
    }
    // frozen regression value, N = 11, lambda = 2
    CHECK(numkit::sylvester_min_sv(t, t, cplx(2.0, 0.0)) ==
          doctest::Approx(3.7608732725e-9).epsilon(1e-4));
}

TEST_CASE("sylvester probe is Lipschitz in lambda") {
    const Truncation t = bilateral_identity_minus_backward(7);
    const double tnorm = numkit::op_norm(t, 1e-10);
    const std::pair<cplx, cplx> pairs[] = {
        {cplx(2.0, 0.0), cplx(2.05, 0.0)},
        {cplx(0.0, 1.0), cplx(0.02, 1.0)},
        {cplx(1.5, 0.0), cplx(1.5, 0.03)},
    };
    for (const auto& [l1, l2] : pairs) {
        const double s1 = numkit::sylvester_min_sv(t, t, l1);
        const double s2 = numkit::sylvester_min_sv(t, t, l2);
        CHECK(std::abs(s1 - s2) <= tnorm * std::abs(l1 - l2) + 1e-12);
    }
}

TEST_CASE("sylvester probe rejects oversized dense work") {
    const Truncation big = random_lower(65, 9);
    CHECK_THROWS_AS(numkit::sylvester_min_sv(big, big, cplx(1.0, 0.0)), numkit::ResourceError);
}

TEST_CASE("csv dump and load round-trip, including bilateral offsets") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    ComplexMatrix m = ComplexMatrix::Zero(7, 7);
    for (long r = 0; r < 7; ++r)
        for (long c = std::max(0l, r - 2); c <= std::min(6l, r + 1); ++c)
            m(r, c) = cplx(ur(rng), ur(rng));
    const Truncation a(std::move(m), -3, BandProfile::banded(2, 1));

    std::stringstream ss;
    numkit::dump_csv(a, ss);
    const Truncation b = numkit::load_csv(ss);
    REQUIRE(b.size() == a.size());
    CHECK(b.offset == a.offset);
    CHECK((a.mat - b.mat).cwiseAbs().maxCoeff() <= 1e-15);
}
