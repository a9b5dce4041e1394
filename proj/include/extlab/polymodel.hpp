#pragma once

#include <gmpxx.h>

#include <vector>

#include "extlab/numkit.hpp"

namespace extlab::polymodel {

using numkit::cplx;
using numkit::Truncation;

/// Polynomial in the z^n coefficient basis.
struct Poly {
    std::vector<cplx> c;  // c[k] multiplies z^k

    long degree() const;
    cplx at(long k) const { return (k >= 0 && k < long(c.size())) ? c[k] : cplx(0.0, 0.0); }
    void trim();
};

/// (M_z f)(z) = z f(z): coefficient shift up by one.
Poly mz_apply(const Poly& p);

/// Kriete-Trutt affine composition on monomials:
/// X z^n = ((lambda-1)/lambda + z/lambda)^n.  Column n carries the binomial
/// coefficients; requires lambda >= 1 (the affine map fixes the disc).
Truncation kt_composition(double lambda, long n);

/// max over monomials z^n, n <= N-1, of the coefficientwise residual of
/// (I - M_z) X z^n - lambda X (I - M_z) z^n, compared on degrees <= N.
double verify_kt(double lambda, long n);

/// Exact quotient C(4n+2, 2n+1) / C(2n, n) in big-integer arithmetic.
mpq_class stirling_ratio(long n);

}  // namespace extlab::polymodel
