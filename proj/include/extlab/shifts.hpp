#pragma once

#include <functional>
#include <vector>

#include "extlab/numkit.hpp"

namespace extlab::shifts {

using numkit::cplx;
using numkit::Truncation;

/// Nonzero bounded weights over a symmetric window [-N, N).
struct WeightSequence {
    std::vector<cplx> w;
    long first = 0;  // index of w[0]

    static WeightSequence constant(cplx value, long n);
    /// fwd for indices >= 0, bwd for indices < 0.
    static WeightSequence two_sided(cplx fwd, cplx bwd, long n);
    static WeightSequence from(const std::function<cplx(long)>& f, long n);

    long last() const { return first + long(w.size()) - 1; }
    cplx at(long n) const;
};

Truncation unilateral_shift(long n);
Truncation unilateral_backward(long n);

/// Coefficient window of an eigenvector together with an l2 bound on the
/// discarded tail.  `offset` is the absolute index of coeffs[0].
struct TailVector {
    Eigen::VectorXcd coeffs;
    long offset = 0;
    double tail_bound = 0.0;
};

/// Geometric eigenvector of S^*: coefficients lambda^n, tail
/// |lambda|^{N+1}/sqrt(1-|lambda|^2).  Requires |lambda| < 1.
TailVector geometric_eigvec(cplx lambda, long n);

/// Eigenvector of C_0^* at z in D(q/2,q/2): h_0 = 1,
/// h_n = prod_{k=1}^n (1 - 1/(k z)).  tail_bound dominates
/// sum_{m>N} |h_m|/(m+1), the row defect of the truncated identity
/// (finite when N >= ceil(1/Re z), else +inf).
TailVector cesaro_adjoint_eigvec(cplx z, double q, long n);

/// max over rows 0..N of |sum_{m>=n} h_m/(m+1) - z h_n|, the truncated
/// eigen-identity residual; compare against the declared tail bound.
double cesaro_adjoint_residual(const TailVector& h, cplx z);

/// Residual vs. declared tolerance: the analytic tail plus an explicit
/// rounding envelope for the suffix sums (the tail alone can sit far below
/// machine noise when h nearly vanishes).
struct EigvecCheck {
    double residual = 0.0;
    double tail_bound = 0.0;
    double fp_envelope = 0.0;
    bool within_tail() const { return residual <= tail_bound + fp_envelope; }
};
EigvecCheck cesaro_adjoint_check(const TailVector& h, cplx z);

/// (2N+1)-window of W e_n = w_n e_{n+1}, offset -N.
Truncation bilateral_shift(const WeightSequence& w, long n);

/// Finite-window proxies for the spectral radii limits: these are
/// window estimates, not limits.
struct RadiiEstimate {
    double r3_plus;
    double r2_minus;
};
RadiiEstimate radii_estimates(const WeightSequence& w, long window);

/// Two-sided eigenvector of W at z inside the estimated annulus.
TailVector bilateral_eigvec(cplx z, const WeightSequence& w, long n);

/// diag(lambda^{-n}), n = -N..N, offset -N.  Requires lambda != 0.
Truncation diag_power(cplx lambda, long n);

enum class SymbolKind { analytic, coanalytic, general };

/// Two-sided Toeplitz coefficients alpha_n with an analyticity tag that must
/// match the zero pattern (analytic: alpha_n = 0 for n < 0; co-analytic:
/// alpha_n = 0 for n > 0).
struct ToeplitzCoeffs {
    std::vector<cplx> alpha;
    long first = 0;  // index of alpha[0]
    SymbolKind kind = SymbolKind::general;

    static ToeplitzCoeffs analytic(std::vector<cplx> poly);     // alpha_j = poly[j]
    static ToeplitzCoeffs coanalytic(std::vector<cplx> coef);   // alpha_{-j} = coef[j]
    static ToeplitzCoeffs general(std::vector<cplx> alpha, long first);

    long last() const { return first + long(alpha.size()) - 1; }
    cplx at(long n) const;
    cplx symbol_at(cplx z) const;  // sum alpha_n z^n (needs z != 0 if negative support)
};

/// Constant-diagonal truncation a(n,k) = alpha_{n-k}.
Truncation toeplitz_matrix(const ToeplitzCoeffs& c, long n);

/// Szego kernel window: coefficients conj(z)^n, tail |z|^{N+1}/sqrt(1-|z|^2).
TailVector szego_kernel(cplx z, long n);

/// || T_phi^* K_z - conj(phi(z)) K_z || over the exact rows; must stay below
/// the kernel tail bound scaled by the symbol.  phi must be analytic.
double kernel_check(const ToeplitzCoeffs& phi, cplx z, long n);

}  // namespace extlab::shifts
