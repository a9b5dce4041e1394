#include "extlab/hausdorff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace extlab::hausdorff {

using numkit::BandProfile;
using numkit::ComplexMatrix;

GeneratingSequence GeneratingSequence::cesaro(std::size_t len) {
    if (len == 0) throw std::invalid_argument("GeneratingSequence: length must be >= 1");
    GeneratingSequence s;
    s.tag = SeqTag::cesaro;
    s.values.resize(len);
    for (std::size_t n = 0; n < len; ++n) s.values[n] = cplx(1.0 / double(n + 1), 0.0);
    return s;
}

GeneratingSequence GeneratingSequence::euler(cplx lambda, std::size_t len) {
    if (len == 0) throw std::invalid_argument("GeneratingSequence: length must be >= 1");
    GeneratingSequence s;
    s.tag = SeqTag::euler;
    s.lambda = lambda;
    s.values.resize(len);
    cplx p(1.0, 0.0);
    for (std::size_t n = 0; n < len; ++n, p *= lambda) s.values[n] = p;
    return s;
}

GeneratingSequence GeneratingSequence::custom(std::vector<cplx> values) {
    if (values.empty()) throw std::invalid_argument("GeneratingSequence: length must be >= 1");
    GeneratingSequence s;
    s.tag = SeqTag::custom;
    s.values = std::move(values);
    return s;
}

cplx forward_diff(const GeneratingSequence& mu, int order, int k) {
    if (order < 0 || k < 0 || std::size_t(k) + std::size_t(order) >= mu.length())
        throw std::out_of_range("forward_diff: k + order must be < length(mu)");
    std::vector<cplx> t(mu.values.begin() + k, mu.values.begin() + k + order + 1);
    for (int m = 0; m < order; ++m)
        for (int i = 0; i + m < order; ++i) t[i] = t[i] - t[i + 1];
    return t[0];
}

Truncation cesaro_discrete(long n) {
    if (n < 0) throw std::invalid_argument("cesaro_discrete: N must be >= 0");
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long r = 0; r <= n; ++r)
        for (long c = 0; c <= r; ++c) m(r, c) = cplx(1.0 / double(r + 1), 0.0);
    return Truncation(std::move(m), 0, BandProfile::lower_triangular());
}

Truncation euler_matrix(cplx lambda, long n) {
    if (n < 0) throw std::invalid_argument("euler_matrix: N must be >= 0");
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    if (lambda == cplx(1.0, 0.0)) {
        m.setIdentity();
        return Truncation(std::move(m), 0, BandProfile::lower_triangular());
    }
    if (lambda == cplx(0.0, 0.0)) {
        m.col(0).setOnes();
        return Truncation(std::move(m), 0, BandProfile::lower_triangular());
    }
    const double row_mass = std::abs(lambda) + std::abs(1.0 - lambda);
    if (double(n) * std::log(row_mass) > 700.0)
        throw std::overflow_error("euler_matrix: entries overflow double range at this N");

    // Pascal recurrence a(n,k) = (1-lambda) a(n-1,k) + lambda a(n-1,k-1);
    // a convex combination for real lambda in (0,1), so stable there.
    const cplx one_minus = cplx(1.0, 0.0) - lambda;
    m(0, 0) = cplx(1.0, 0.0);
    for (long r = 1; r <= n; ++r) {
        m(r, 0) = one_minus * m(r - 1, 0);
        for (long c = 1; c < r; ++c) m(r, c) = one_minus * m(r - 1, c) + lambda * m(r - 1, c - 1);
        m(r, r) = lambda * m(r - 1, r - 1);
    }
    return Truncation(std::move(m), 0, BandProfile::lower_triangular());
}

Truncation hausdorff_matrix(const GeneratingSequence& mu, long n) {
    if (n < 0) throw std::invalid_argument("hausdorff_matrix: N must be >= 0");
    if (mu.length() <= std::size_t(n))
        throw std::invalid_argument("hausdorff_matrix: mu prefix too short (need length > N)");
    if (mu.tag == SeqTag::cesaro) return cesaro_discrete(n);
    if (mu.tag == SeqTag::euler) return euler_matrix(mu.lambda, n);

    // Difference table, filled one antidiagonal per pass: after m in-place
    // difference steps t[k] = Delta^m mu_k.
    std::vector<cplx> t(mu.values.begin(), mu.values.begin() + n + 1);
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long d = 0; d <= n; ++d) {
        double binom = 1.0;
        for (long k = 0; k + d <= n; ++k) {
            m(k + d, k) = binom * t[k];
            binom *= double(k + d + 1) / double(k + 1);  // C(k+d+1, k+1)
        }
        for (long k = 0; k + d < n; ++k) t[k] = t[k] - t[k + 1];
    }
    return Truncation(std::move(m), 0, BandProfile::lower_triangular());
}

SchurCertificate schur_bound(const Truncation& a, const Eigen::VectorXd& p) {
    const long n = a.size();
    if (p.size() != n) throw std::invalid_argument("schur_bound: weight size mismatch");
    if ((p.array() <= 0.0).any()) throw std::invalid_argument("schur_bound: weights must be positive");

    const Eigen::MatrixXd abs = a.mat.cwiseAbs();
    const Eigen::VectorXd row_sums = abs * p;
    const Eigen::VectorXd col_sums = abs.transpose() * p;
    SchurCertificate cert;
    cert.p = p;
    cert.alpha = (row_sums.array() / p.array()).maxCoeff();
    cert.beta = (col_sums.array() / p.array()).maxCoeff();
    cert.bound = std::sqrt(cert.alpha * cert.beta);
    return cert;
}

double euler_tail_lower_log(cplx lambda, long n) {
    if (n < 0) throw std::invalid_argument("euler_tail_lower: n must be >= 0");
    return double(n) * std::log(std::abs(lambda) + std::abs(cplx(1.0, 0.0) - lambda)) -
           0.5 * std::log(double(n + 1));
}

double euler_tail_lower(cplx lambda, long n) {
    return std::exp(euler_tail_lower_log(lambda, n));
}

double euler_adjoint_col_norm(cplx lambda, long n) {
    if (n < 0) throw std::invalid_argument("euler_adjoint_col_norm: n must be >= 0");
    // log-space accumulation of sum_k C(n,k)^2 |lambda|^{2k} |1-lambda|^{2(n-k)}
    const double la = std::abs(lambda), lb = std::abs(cplx(1.0, 0.0) - lambda);
    if (la == 0.0) return std::pow(lb, double(n));
    if (lb == 0.0) return std::pow(la, double(n));
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(n + 1);
    double log_binom = 0.0;
    for (long k = 0; k <= n; ++k) {
        logs[k] = 2.0 * (log_binom + double(k) * std::log(la) + double(n - k) * std::log(lb));
        max_log = std::max(max_log, logs[k]);
        if (k < n) log_binom += std::log(double(n - k)) - std::log(double(k + 1));
    }
    double acc = 0.0;
    for (long k = 0; k <= n; ++k) acc += std::exp(logs[k] - max_log);
    return std::exp(0.5 * (max_log + std::log(acc)));
}

mpq_class euler_adjoint_col_norm_sq_exact(const mpq_class& lambda, long n) {
    if (n < 0) throw std::invalid_argument("euler_adjoint_col_norm_sq_exact: n must be >= 0");
    const mpq_class one_minus = 1 - lambda;
    mpq_class acc = 0;
    mpz_class binom = 1;
    mpq_class la_pow = 1;
    for (long k = 0; k <= n; ++k) {
        mpq_class lb_pow = 1;
        for (long j = 0; j < n - k; ++j) lb_pow *= one_minus;
        const mpq_class term = mpq_class(binom * binom) * la_pow * la_pow * lb_pow * lb_pow;
        acc += term;
        if (k < n) {
            binom = binom * (n - k) / (k + 1);
            la_pow *= lambda;
        }
    }
    return acc;
}

mpq_class euler_tail_lower_sq_exact(const mpq_class& lambda, long n) {
    if (n < 0) throw std::invalid_argument("euler_tail_lower_sq_exact: n must be >= 0");
    const mpq_class mass = abs(lambda) + abs(mpq_class(1) - lambda);
    mpq_class p = 1;
    for (long j = 0; j < 2 * n; ++j) p *= mass;
    return p / mpq_class(n + 1);
}

bool lens_test(cplx lambda) {
    if (lambda == cplx(0.0, 0.0)) return false;  // excluded by the nonzero hypothesis
    return std::abs(lambda) + std::abs(lambda - cplx(1.0, 0.0)) <= 1.0;
}

}  // namespace extlab::hausdorff
