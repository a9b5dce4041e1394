#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace extlab::powerbasis {

using cplx = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<cplx> {
    static double real(const cplx& v) { return v.real(); }
    static bool is_real(const cplx& v) { return v.imag() == 0.0; }
    static cplx conjugate(const cplx& v) { return std::conj(v); }
};

template <>
struct ScalarTraits<mpq_class> {
    static double real(const mpq_class& v) { return v.get_d(); }
    static bool is_real(const mpq_class&) { return true; }
    static mpq_class conjugate(const mpq_class& v) { return v; }
};

/// Finite combination sum_i c_i x^{r_i} on (0,1].  Every exponent must have
/// real part > -1/p (membership in L^p[0,1]); exponents are pairwise distinct
/// after canonicalization.
template <class S>
struct BasicPowerSum {
    struct Term {
        S coeff;
        S exponent;
    };
    std::vector<Term> terms;
    double p = 2.0;

    BasicPowerSum() = default;
    explicit BasicPowerSum(std::vector<Term> t, double p_ctx = 2.0) : terms(std::move(t)), p(p_ctx) {
        if (p <= 1.0) throw std::invalid_argument("PowerSum: p must be > 1");
        canonicalize();
    }

    static BasicPowerSum monomial(S coeff, S exponent, double p_ctx = 2.0) {
        return BasicPowerSum({Term{coeff, exponent}}, p_ctx);
    }

    void canonicalize() {
        for (const Term& t : terms)
            if (!(ScalarTraits<S>::real(t.exponent) > -1.0 / p))
                throw std::invalid_argument("PowerSum: exponent real part must exceed -1/p");
        std::vector<Term> merged;
        for (const Term& t : terms) {
            bool found = false;
            for (Term& m : merged)
                if (m.exponent == t.exponent) {
                    m.coeff = m.coeff + t.coeff;
                    found = true;
                    break;
                }
            if (!found) merged.push_back(t);
        }
        std::erase_if(merged, [](const Term& t) { return t.coeff == S(0); });
        terms = std::move(merged);
    }
};

using PowerSum = BasicPowerSum<cplx>;
using RationalPowerSum = BasicPowerSum<mpq_class>;

/// C_1 acts diagonally on powers: (c, r) -> (c / (r+1), r).
template <class S>
BasicPowerSum<S> c1_apply(const BasicPowerSum<S>& f) {
    BasicPowerSum<S> out = f;
    for (auto& t : out.terms) {
        const S denom = t.exponent + S(1);
        if (denom == S(0)) throw std::domain_error("c1_apply: exponent -1 is not integrable");
        t.coeff = t.coeff / denom;
    }
    return out;
}

/// Weighted composition (X_0 f)(x) = x^{(1-lambda)/lambda} f(x^{1/lambda}):
/// (c, r) -> (c, (r + 1 - lambda) / lambda).  Requires lambda real in (0,1].
template <class S>
BasicPowerSum<S> x0_apply(const S& lambda, const BasicPowerSum<S>& f) {
    const double lam = ScalarTraits<S>::real(lambda);
    if (!ScalarTraits<S>::is_real(lambda) || !(lam > 0.0) || lam > 1.0)
        throw std::invalid_argument("x0_apply: lambda must be real in (0,1]");
    BasicPowerSum<S> out;
    out.p = f.p;
    out.terms = f.terms;
    for (auto& t : out.terms) t.exponent = (t.exponent + S(1) - lambda) / lambda;
    out.canonicalize();
    return out;
}

/// Closed-form L2 pairing <f,g> = sum c_i conj(d_j) / (r_i + conj(s_j) + 1).
/// Only defined in the p = 2 context.
template <class S>
S l2_inner(const BasicPowerSum<S>& f, const BasicPowerSum<S>& g) {
    if (f.p != 2.0 || g.p != 2.0) throw std::invalid_argument("l2_inner: requires p = 2 context");
    S acc(0);
    for (const auto& tf : f.terms)
        for (const auto& tg : g.terms) {
            const S sc = ScalarTraits<S>::conjugate(tg.exponent);
            if (!(ScalarTraits<S>::real(tf.exponent) + ScalarTraits<S>::real(sc) > -1.0))
                throw std::domain_error("l2_inner: divergent exponent pair");
            acc = acc + tf.coeff * ScalarTraits<S>::conjugate(tg.coeff) / (tf.exponent + sc + S(1));
        }
    return acc;
}

template <class S>
double l2_norm(const BasicPowerSum<S>& f) {
    return std::sqrt(ScalarTraits<S>::real(l2_inner(f, f)));
}

/// |z - q/2| < q/2 (point spectrum disc membership).
bool disc_contains(cplx z, double q);

/// Running partial sums of sum (r_n + 1/p) / ((r_n + 1/p)^2 + 1).  Returns
/// data only: a finite prefix cannot witness divergence, so classification is
/// the caller's.
std::vector<double> muntz_partial_sums(const std::vector<double>& exponents, double p,
                                       std::size_t upto);

/// ||h(z)||^2 / ||h(lambda z)||^2 in closed form, the displayed quotient
/// that diverges as z -> q.  lambda real in (0,1], q/2 < z < q, lambda z in (0,q).
double bounded_below_ratio(double lambda, double z, double q);

nlohmann::json to_json(const PowerSum& f);
PowerSum powersum_from_json(const nlohmann::json& j);

}  // namespace extlab::powerbasis
