#include "extlab/shifts.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace extlab::shifts {

using numkit::BandProfile;
using numkit::ComplexMatrix;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_weights(const std::vector<cplx>& w) {
    for (const cplx& v : w)
        if (v == cplx(0.0, 0.0)) throw std::invalid_argument("WeightSequence: zero weight");
}
}  // namespace

WeightSequence WeightSequence::constant(cplx value, long n) {
    return from([value](long) { return value; }, n);
}

WeightSequence WeightSequence::two_sided(cplx fwd, cplx bwd, long n) {
    return from([fwd, bwd](long i) { return i >= 0 ? fwd : bwd; }, n);
}

WeightSequence WeightSequence::from(const std::function<cplx(long)>& f, long n) {
    if (n < 1) throw std::invalid_argument("WeightSequence: window must be >= 1");
    WeightSequence s;
    s.first = -n;
    s.w.resize(2 * n);
    for (long i = -n; i < n; ++i) s.w[i + n] = f(i);
    check_weights(s.w);
    return s;
}

cplx WeightSequence::at(long n) const {
    if (n < first || n > last()) throw std::out_of_range("WeightSequence: index outside window");
    return w[n - first];
}

Truncation unilateral_shift(long n) {
    if (n < 1) throw std::invalid_argument("unilateral_shift: N must be >= 1");
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long i = 0; i < n; ++i) m(i + 1, i) = 1.0;
    return Truncation(std::move(m), 0, BandProfile::banded(1, 0));
}

Truncation unilateral_backward(long n) {
    if (n < 1) throw std::invalid_argument("unilateral_backward: N must be >= 1");
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long i = 0; i < n; ++i) m(i, i + 1) = 1.0;
    return Truncation(std::move(m), 0, BandProfile::banded(0, 1));
}

TailVector geometric_eigvec(cplx lambda, long n) {
    if (std::abs(lambda) >= 1.0)
        throw std::invalid_argument("geometric_eigvec: |lambda| must be < 1");
    TailVector v;
    v.offset = 0;
    v.coeffs.resize(n + 1);
    cplx p(1.0, 0.0);
    for (long i = 0; i <= n; ++i, p *= lambda) v.coeffs[i] = p;
    const double r = std::abs(lambda);
    v.tail_bound = std::pow(r, double(n + 1)) / std::sqrt(1.0 - r * r);
    return v;
}

TailVector cesaro_adjoint_eigvec(cplx z, double q, long n) {
    if (q <= 1.0) throw std::invalid_argument("cesaro_adjoint_eigvec: q must be > 1");
    if (z == cplx(0.0, 0.0) || std::abs(z - q / 2.0) >= q / 2.0)
        throw std::invalid_argument("cesaro_adjoint_eigvec: z must lie in D(q/2, q/2)");
    if (1.0 / std::abs(z) > 600.0)
        throw std::overflow_error("cesaro_adjoint_eigvec: coefficients overflow for |z| this small");
    TailVector v;
    v.offset = 0;
    v.coeffs.resize(n + 1);
    cplx h(1.0, 0.0);
    v.coeffs[0] = h;
    for (long k = 1; k <= n; ++k) {
        h *= cplx(1.0, 0.0) - 1.0 / (double(k) * z);
        v.coeffs[k] = h;
    }
    // For k >= ceil(1/Re z) the factor moduli are <= (1 - a/k)^{1/2} with
    // a = Re(1/z) > 0, which dominates the defect sum_{m>N} |h_m|/(m+1)
    // by (2/a) |h_N|.
    const double a = (1.0 / z).real();
    const long k_star = long(std::ceil(1.0 / z.real()));
    v.tail_bound = (n >= k_star) ? (2.0 / a) * std::abs(v.coeffs[n]) : kInf;
    return v;
}

double cesaro_adjoint_residual(const TailVector& h, cplx z) {
    return cesaro_adjoint_check(h, z).residual;
}

EigvecCheck cesaro_adjoint_check(const TailVector& h, cplx z) {
    const long n = h.coeffs.size() - 1;
    EigvecCheck out;
    out.tail_bound = h.tail_bound;
    cplx suffix(0.0, 0.0);
    double abs_mass = 0.0;
    for (long m = n; m >= 0; --m) {
        const cplx term = h.coeffs[m] / double(m + 1);
        suffix += term;
        abs_mass += std::abs(term);
        out.residual = std::max(out.residual, std::abs(suffix - z * h.coeffs[m]));
    }
    const double scale = std::max(abs_mass, std::abs(z) * h.coeffs.cwiseAbs().maxCoeff());
    out.fp_envelope = 4.0 * std::numeric_limits<double>::epsilon() * double(n + 1) * scale;
    return out;
}

Truncation bilateral_shift(const WeightSequence& w, long n) {
    if (n < 1) throw std::invalid_argument("bilateral_shift: N must be >= 1");
    if (w.first > -n || w.last() < n - 1)
        throw std::invalid_argument("bilateral_shift: weight window too small");
    const long size = 2 * n + 1;
    ComplexMatrix m = ComplexMatrix::Zero(size, size);
    for (long i = 0; i < size - 1; ++i) m(i + 1, i) = w.at(i - n);
    return Truncation(std::move(m), -n, BandProfile::banded(1, 0));
}

RadiiEstimate radii_estimates(const WeightSequence& w, long window) {
    if (window < 1) throw std::invalid_argument("radii_estimates: window must be >= 1");
    if (w.last() < window - 1 || w.first > -window)
        throw std::invalid_argument("radii_estimates: window exceeds weight data");
    double log_prod = 0.0;
    double r3 = -kInf;
    for (long n = 1; n <= window; ++n) {
        log_prod += std::log(std::abs(w.at(n - 1)));
        r3 = std::max(r3, std::exp(log_prod / double(n)));
    }
    log_prod = 0.0;
    double r2 = kInf;
    for (long n = 1; n <= window; ++n) {
        log_prod += std::log(std::abs(w.at(-n)));
        r2 = std::min(r2, std::exp(log_prod / double(n)));
    }
    return {r3, r2};
}

TailVector bilateral_eigvec(cplx z, const WeightSequence& w, long n) {
    if (n < 1) throw std::invalid_argument("bilateral_eigvec: N must be >= 1");
    const RadiiEstimate r = radii_estimates(w, n);
    const double az = std::abs(z);
    if (!(r.r3_plus < az && az < r.r2_minus))
        throw std::invalid_argument("bilateral_eigvec: z outside the estimated annulus");

    TailVector v;
    v.offset = -n;
    v.coeffs.resize(2 * n + 1);
    v.coeffs[n] = cplx(1.0, 0.0);
    for (long k = 1; k <= n; ++k)
        v.coeffs[n + k] = v.coeffs[n + k - 1] * w.at(k - 1) / z;
    for (long k = 1; k <= n; ++k)
        v.coeffs[n - k] = v.coeffs[n - k + 1] * z / w.at(-k);

    // Geometric tails from the worst single weight on each side of the window.
    double wf = 0.0, wb = kInf;
    for (long i = 0; i < n; ++i) wf = std::max(wf, std::abs(w.at(i)));
    for (long i = 1; i <= n; ++i) wb = std::min(wb, std::abs(w.at(-i)));
    const double rho_f = wf / az, rho_b = az / wb;
    double tail = 0.0;
    if (rho_f < 1.0 && rho_b < 1.0) {
        const double f = std::abs(v.coeffs[2 * n]) * rho_f / std::sqrt(1.0 - rho_f * rho_f);
        const double b = std::abs(v.coeffs[0]) * rho_b / std::sqrt(1.0 - rho_b * rho_b);
        tail = std::sqrt(f * f + b * b);
    } else {
        tail = kInf;
    }
    v.tail_bound = tail;
    return v;
}

Truncation diag_power(cplx lambda, long n) {
    if (lambda == cplx(0.0, 0.0)) throw std::invalid_argument("diag_power: lambda must be nonzero");
    const long size = 2 * n + 1;
    ComplexMatrix m = ComplexMatrix::Zero(size, size);
    for (long i = 0; i < size; ++i) m(i, i) = std::pow(lambda, cplx(double(-(i - n)), 0.0));
    return Truncation(std::move(m), -n, BandProfile::diagonal());
}

ToeplitzCoeffs ToeplitzCoeffs::analytic(std::vector<cplx> poly) {
    ToeplitzCoeffs c;
    c.alpha = std::move(poly);
    c.first = 0;
    c.kind = SymbolKind::analytic;
    return c;
}

ToeplitzCoeffs ToeplitzCoeffs::coanalytic(std::vector<cplx> coef) {
    ToeplitzCoeffs c;
    c.first = -(long(coef.size()) - 1);
    c.alpha.assign(coef.rbegin(), coef.rend());
    c.kind = SymbolKind::coanalytic;
    return c;
}

ToeplitzCoeffs ToeplitzCoeffs::general(std::vector<cplx> alpha, long first) {
    ToeplitzCoeffs c;
    c.alpha = std::move(alpha);
    c.first = first;
    c.kind = SymbolKind::general;
    if (first >= 0) c.kind = SymbolKind::analytic;
    if (c.last() <= 0) c.kind = SymbolKind::coanalytic;
    return c;
}

cplx ToeplitzCoeffs::at(long n) const {
    if (n < first || n > last()) return cplx(0.0, 0.0);
    return alpha[n - first];
}

cplx ToeplitzCoeffs::symbol_at(cplx z) const {
    cplx acc(0.0, 0.0);
    for (long n = first; n <= last(); ++n) {
        cplx zn;
        if (n == 0)
            zn = cplx(1.0, 0.0);
        else if (z == cplx(0.0, 0.0)) {
            if (n < 0) throw std::domain_error("symbol_at: negative power at z = 0");
            zn = cplx(0.0, 0.0);
        } else
            zn = std::pow(z, cplx(double(n), 0.0));
        acc += at(n) * zn;
    }
    return acc;
}

Truncation toeplitz_matrix(const ToeplitzCoeffs& c, long n) {
    if (n < 0) throw std::invalid_argument("toeplitz_matrix: N must be >= 0");
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long r = 0; r <= n; ++r)
        for (long k = 0; k <= n; ++k) m(r, k) = c.at(r - k);
    const long lo = std::max(c.last(), 0l);
    const long up = std::max(-c.first, 0l);
    return Truncation(std::move(m), 0, BandProfile::banded(lo, up));
}

TailVector szego_kernel(cplx z, long n) {
    if (std::abs(z) >= 1.0) throw std::invalid_argument("szego_kernel: |z| must be < 1");
    TailVector v;
    v.offset = 0;
    v.coeffs.resize(n + 1);
    const cplx zc = std::conj(z);
    cplx p(1.0, 0.0);
    for (long i = 0; i <= n; ++i, p *= zc) v.coeffs[i] = p;
    const double r = std::abs(z);
    v.tail_bound = std::pow(r, double(n + 1)) / std::sqrt(1.0 - r * r);
    return v;
}

double kernel_check(const ToeplitzCoeffs& phi, cplx z, long n) {
    if (phi.kind != SymbolKind::analytic)
        throw std::invalid_argument("kernel_check: phi must be an analytic symbol");
    const TailVector k = szego_kernel(z, n);
    const long d = std::max(phi.last(), 0l);
    const cplx target = std::conj(phi.symbol_at(z));
    // (T_phi^* v)(r) = sum_j conj(alpha_j) v_{r+j}; rows r <= N-d are exact.
    double acc = 0.0;
    for (long r = 0; r + d <= n; ++r) {
        cplx s(0.0, 0.0);
        for (long j = 0; j <= d; ++j) s += std::conj(phi.at(j)) * k.coeffs[r + j];
        const cplx res = s - target * k.coeffs[r];
        acc += std::norm(res);
    }
    return std::sqrt(acc);
}

}  // namespace extlab::shifts
