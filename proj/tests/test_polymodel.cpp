#include "doctest.h"
#include "extlab/polymodel.hpp"

using namespace extlab;
using numkit::cplx;
using polymodel::Poly;

TEST_CASE("multiplication by z shifts coefficients") {
    const Poly one{{cplx(1.0, 0.0)}};
    const Poly z = polymodel::mz_apply(one);
    CHECK(z.degree() == 1);
    CHECK(z.at(1) == cplx(1.0, 0.0));

    const Poly z2{{cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0)}};
    CHECK(polymodel::mz_apply(z2).degree() == 3);

    const Poly p{{cplx(1.0, 0.0), cplx(1.0, 0.0)}};  // 1 + z
    const Poly q = polymodel::mz_apply(p);
    CHECK(q.at(0) == cplx(0.0, 0.0));
    CHECK(q.at(1) == cplx(1.0, 0.0));
    CHECK(q.at(2) == cplx(1.0, 0.0));
}

TEST_CASE("composition operator columns") {
    const auto id = polymodel::kt_composition(1.0, 8);
    CHECK((id.mat - numkit::ComplexMatrix::Identity(9, 9)).cwiseAbs().maxCoeff() == 0.0);

    const auto x2 = polymodel::kt_composition(2.0, 4);
    CHECK(x2.mat(0, 1).real() == doctest::Approx(0.5));
    CHECK(x2.mat(1, 1).real() == doctest::Approx(0.5));
    CHECK(x2.mat(2, 1) == cplx(0.0, 0.0));

    CHECK_THROWS_AS(polymodel::kt_composition(0.9, 4), std::invalid_argument);
}

TEST_CASE("hand expansion at lambda = 2, n = 1") {
    // (I - M_z) X z = 1/2 - z^2/2 = lambda X (I - M_z) z
    const auto x = polymodel::kt_composition(2.0, 4);
    Poly xz{{x.mat(0, 1), x.mat(1, 1)}};
    const Poly mzxz = polymodel::mz_apply(xz);
    CHECK((xz.at(0) - mzxz.at(0)).real() == doctest::Approx(0.5));
    CHECK((xz.at(1) - mzxz.at(1)).real() == doctest::Approx(0.0));
    CHECK((xz.at(2) - mzxz.at(2)).real() == doctest::Approx(-0.5));
    CHECK(polymodel::verify_kt(2.0, 4) <= 1e-15);
}

TEST_CASE("composition intertwining residual stays at rounding level") {
    CHECK(polymodel::verify_kt(1.0, 64) == 0.0);
    for (double lam : {1.5, 2.0, 3.0, 10.0}) CHECK(polymodel::verify_kt(lam, 64) <= 1e-12);
}

TEST_CASE("composition columns sum to one") {
    const auto x = polymodel::kt_composition(3.5, 32);
    for (long j = 0; j <= 32; ++j)
        CHECK(std::abs(x.mat.col(j).sum() - cplx(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("stirling binomial ratio, exact arithmetic") {
    CHECK(polymodel::stirling_ratio(1) == mpq_class(10));
    CHECK(polymodel::stirling_ratio(2) == mpq_class(42));
    CHECK(polymodel::stirling_ratio(3) == mpq_class(858, 5));  // 171.6
    CHECK_THROWS_AS(polymodel::stirling_ratio(0), std::invalid_argument);

    // ratio / 4^n strictly increasing and >= 2, all in exact arithmetic
    mpq_class prev = 0;
    mpz_class four_n = 1;
    for (long n = 1; n <= 20; ++n) {
        four_n *= 4;
        const mpq_class scaled = polymodel::stirling_ratio(n) / mpq_class(four_n);
        CHECK(scaled > prev);
        CHECK(scaled > 2);
        prev = scaled;
    }
}
