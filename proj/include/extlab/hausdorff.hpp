#pragma once

#include <gmpxx.h>

#include <vector>

#include "extlab/numkit.hpp"

namespace extlab::hausdorff {

using numkit::cplx;
using numkit::Truncation;

enum class SeqTag { cesaro, euler, custom };

/// The mu-sequence generating a Hausdorff matrix; the matrix diagonal
/// equals the sequence.
struct GeneratingSequence {
    std::vector<cplx> values;
    SeqTag tag = SeqTag::custom;
    cplx lambda{};  // meaningful for tag euler

    static GeneratingSequence cesaro(std::size_t len);
    static GeneratingSequence euler(cplx lambda, std::size_t len);
    static GeneratingSequence custom(std::vector<cplx> values);

    std::size_t length() const { return values.size(); }
};

/// Iterated forward difference Delta^order mu_k with Delta mu_k = mu_k - mu_{k+1}.
cplx forward_diff(const GeneratingSequence& mu, int order, int k);

/// Lower-triangular (N+1)x(N+1) truncation with entries C(n,k) Delta^{n-k} mu_k.
/// Tagged sequences dispatch to closed forms; custom sequences go through the
/// difference table and are intended for moderate N.
Truncation hausdorff_matrix(const GeneratingSequence& mu, long n);

Truncation cesaro_discrete(long n);

/// Binomial-mean matrix, entry (n,k) = C(n,k) lambda^k (1-lambda)^{n-k}.
/// lambda = 1 gives the identity; lambda = 0 the first-column-of-ones matrix.
Truncation euler_matrix(cplx lambda, long n);

struct SchurCertificate {
    Eigen::VectorXd p;
    double alpha;
    double beta;
    double bound;  // sqrt(alpha * beta)
};

/// Schur test on |entries| with the given positive weights; alpha and beta are
/// the attained row/column maxima, so the certificate is tight for this p.
SchurCertificate schur_bound(const Truncation& a, const Eigen::VectorXd& p);

/// Lower bound (|lambda| + |1-lambda|)^n / sqrt(n+1) for the n-th adjoint
/// column norm, evaluated in log space and exponentiated (inf when it
/// overflows; use the _log variant past n ~ 700).
double euler_tail_lower(cplx lambda, long n);
double euler_tail_lower_log(cplx lambda, long n);

/// Exact 2-norm of E_lambda^* e_n, i.e. of row n of the Euler matrix.
double euler_adjoint_col_norm(cplx lambda, long n);

/// Exact big-rational path for rational real lambda: returns the squared
/// norm of E_lambda^* e_n as an exact rational.
mpq_class euler_adjoint_col_norm_sq_exact(const mpq_class& lambda, long n);

/// Exact squared lower bound (|lambda|+|1-lambda|)^{2n} / (n+1), rational lambda.
mpq_class euler_tail_lower_sq_exact(const mpq_class& lambda, long n);

/// |lambda| + |lambda - 1| <= 1, which holds iff lambda is real in (0,1].
/// lambda = 0 is excluded (returns false).
bool lens_test(cplx lambda);

}  // namespace extlab::hausdorff
