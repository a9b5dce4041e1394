#include "extlab/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace extlab::numkit {

namespace {

long fin_or(const std::optional<long>& b, long fallback) {
    return b ? *b : fallback;
}

bool is_lower_tri(const BandProfile& b) { return b.upper && *b.upper == 0; }
bool is_upper_tri(const BandProfile& b) { return b.lower && *b.lower == 0; }

Eigen::VectorXcd apply(const ComplexMatrix& m, const BandProfile& band,
                       const Eigen::VectorXcd& v, bool adjoint) {
    if (is_lower_tri(band)) {
        auto t = m.triangularView<Eigen::Lower>();
        return adjoint ? Eigen::VectorXcd(t.adjoint() * v) : Eigen::VectorXcd(t * v);
    }
    if (is_upper_tri(band)) {
        auto t = m.triangularView<Eigen::Upper>();
        return adjoint ? Eigen::VectorXcd(t.adjoint() * v) : Eigen::VectorXcd(t * v);
    }
    return adjoint ? Eigen::VectorXcd(m.adjoint() * v) : Eigen::VectorXcd(m * v);
}

}  // namespace

BandProfile product_band(const BandProfile& a, const BandProfile& b) {
    BandProfile out;
    if (a.lower && b.lower) out.lower = *a.lower + *b.lower;
    if (a.upper && b.upper) out.upper = *a.upper + *b.upper;
    return out;
}

Truncation::Truncation(ComplexMatrix m, long off, BandProfile b)
    : mat(std::move(m)), offset(off), band(b) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("Truncation: matrix must be square");
    if (offset > 0)
        throw std::invalid_argument("Truncation: offset must be <= 0");
    if (!mat.allFinite())
        throw std::invalid_argument("Truncation: entries must be finite");
    for (long r = 0; r < mat.rows(); ++r)
        for (long c = 0; c < mat.cols(); ++c)
            if (!band.admits(r, c) && mat(r, c) != cplx(0.0, 0.0))
                throw std::invalid_argument("Truncation: nonzero entry outside declared band");
}

std::pair<Truncation, ExactWindow> mat_mul(const Truncation& a, const Truncation& b) {
    if (a.size() != b.size() || a.offset != b.offset)
        throw std::invalid_argument("mat_mul: size/offset mismatch");

    const long first = a.first();
    const long last = a.last();
    const bool unilateral = (a.offset == 0);

    ExactWindow win;
    // Row strip: every intermediate index reachable from these rows through
    // the factors' bands stays inside the truncation.
    if (a.band.upper && (unilateral || a.band.lower)) {
        const long hi = last - *a.band.upper - fin_or(b.band.upper, 0);
        const long lo = unilateral ? first : first + *a.band.lower + fin_or(b.band.lower, 0);
        if (lo <= hi) win.rows = IndexRange{lo, hi};
    }
    // Column strip, mirror image.
    if (b.band.lower && (unilateral || b.band.upper)) {
        const long hi = last - *b.band.lower - fin_or(a.band.lower, 0);
        const long lo = unilateral ? first : first + *b.band.upper + fin_or(a.band.upper, 0);
        if (lo <= hi) win.cols = IndexRange{lo, hi};
    }

    Truncation prod(ComplexMatrix(a.mat * b.mat), a.offset, product_band(a.band, b.band));
    return {std::move(prod), win};
}

double frobenius(const Truncation& a) { return a.mat.norm(); }

double op_norm(const Truncation& a, double tol, long max_iter) {
    if (tol <= 0) throw std::invalid_argument("op_norm: tol must be positive");
    const long n = a.size();
    if (n == 0) return 0.0;

    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(double(n));
    double sigma_prev = -1.0;
    for (long it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd w = apply(a.mat, a.band, v, false);
        const double sigma = w.norm();
        if (sigma == 0.0) return 0.0;
        if (it > 0 && std::abs(sigma - sigma_prev) <= tol * sigma) return sigma;
        sigma_prev = sigma;
        Eigen::VectorXcd u = apply(a.mat, a.band, w, true);
        const double nu = u.norm();
        if (nu == 0.0) return sigma;
        v = u / nu;
    }
    throw NonConvergenceError("op_norm: power iteration did not converge", sigma_prev);
}

ComplexMatrix sylvester_kronecker(const Truncation& a, const Truncation& b, cplx lambda) {
    if (a.size() != b.size() || a.offset != b.offset)
        throw std::invalid_argument("sylvester: size/offset mismatch");
    const long n = a.size();
    const long dim = n * n;
    ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
    // Column-stacked coordinates: vec(AX) = (I (x) A) vec(X),
    // vec(XB) = (B^T (x) I) vec(X).
    for (long j = 0; j < n; ++j)
        k.block(j * n, j * n, n, n) = a.mat;
    for (long p = 0; p < n; ++p)
        for (long q = 0; q < n; ++q) {
            const cplx bt = b.mat(q, p);  // (B^T)(p,q)
            if (bt == cplx(0.0, 0.0)) continue;
            for (long i = 0; i < n; ++i)
                k(p * n + i, q * n + i) -= lambda * bt;
        }
    return k;
}

double sylvester_min_sv(const Truncation& a, const Truncation& b, cplx lambda) {
    const long n = a.size();
    constexpr long kMaxKronDim = 4096;
    if (n * n > kMaxKronDim)
        throw ResourceError("sylvester_min_sv: N^2 = " + std::to_string(n * n) +
                            " exceeds dense budget " + std::to_string(kMaxKronDim));

    const ComplexMatrix k = sylvester_kronecker(a, b, lambda);
    const long dim = k.rows();

    // Inverse iteration on K^H K through a Householder QR of K.  Tiny R
    // diagonals are clamped so an exactly singular K amplifies its null
    // direction instead of producing NaNs.
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(k);
    ComplexMatrix r = qr.matrixQR().topRows(dim).triangularView<Eigen::Upper>();
    const double rmax = r.diagonal().cwiseAbs().maxCoeff();
    const double clamp = std::max(rmax, 1.0) * 1e-150;
    for (long i = 0; i < dim; ++i) {
        cplx d = r(i, i);
        if (std::abs(d) < clamp) r(i, i) = (d == cplx(0.0) ? cplx(clamp) : d / std::abs(d) * clamp);
    }
    const auto& perm = qr.colsPermutation();
    const auto solve_k = [&](const Eigen::VectorXcd& rhs) {
        // K = Q R P^T  =>  x = P R^{-1} Q^H rhs
        Eigen::VectorXcd y = qr.householderQ().adjoint() * rhs;
        y = r.triangularView<Eigen::Upper>().solve(y);
        return Eigen::VectorXcd(perm * y);
    };
    const auto solve_kh = [&](const Eigen::VectorXcd& rhs) {
        // K^H = P R^H Q^H  =>  x = Q R^{-H} P^T rhs
        Eigen::VectorXcd y = perm.transpose() * rhs;
        y = r.adjoint().triangularView<Eigen::Lower>().solve(y);
        return Eigen::VectorXcd(qr.householderQ() * y);
    };

    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(dim) / std::sqrt(double(dim));
    double sigma_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXcd z = solve_kh(v);
        const double nz = z.stableNorm();
        if (!std::isfinite(nz) || nz == 0.0) break;
        z /= nz;
        Eigen::VectorXcd y = solve_k(z);
        const double ny = y.stableNorm();
        if (!std::isfinite(ny) || ny == 0.0) break;
        v = y / ny;
        // |(K^H K)^{-1} v| ~ nz * ny; track the magnitude in log space.
        const double sigma = std::exp(-0.5 * (std::log(nz) + std::log(ny)));
        if (std::abs(sigma - sigma_prev) <= 1e-13 * std::max(sigma, 1e-300)) break;
        sigma_prev = sigma;
    }
    return (k * v).norm();
}

void dump_csv(const Truncation& a, std::ostream& os) {
    os << "row,col,re,im\n";
    for (long r = 0; r < a.size(); ++r)
        for (long c = 0; c < a.size(); ++c) {
            const cplx e = a.mat(r, c);
            if (e == cplx(0.0, 0.0)) continue;
            std::ostringstream line;
            line.precision(17);
            line << (r + a.offset) << ',' << (c + a.offset) << ',' << e.real() << ',' << e.imag();
            os << line.str() << '\n';
        }
}

Truncation load_csv(std::istream& is, long size_hint) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("load_csv: empty input");
    std::map<std::pair<long, long>, cplx> entries;
    long min_idx = 0, max_idx = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        long r, c;
        double re, im;
        char comma;
        if (!(ss >> r >> comma >> c >> comma >> re >> comma >> im))
            throw std::invalid_argument("load_csv: malformed line: " + line);
        entries[{r, c}] = cplx(re, im);
        min_idx = std::min({min_idx, r, c});
        max_idx = std::max({max_idx, r, c});
    }
    const long offset = std::min(min_idx, 0l);
    long size = max_idx - offset + 1;
    if (size_hint > 0) size = std::max(size, size_hint);
    if (size <= 0) size = size_hint > 0 ? size_hint : 1;

    ComplexMatrix m = ComplexMatrix::Zero(size, size);
    long lo_bw = 0, up_bw = 0;
    for (const auto& [idx, val] : entries) {
        m(idx.first - offset, idx.second - offset) = val;
        lo_bw = std::max(lo_bw, idx.first - idx.second);
        up_bw = std::max(up_bw, idx.second - idx.first);
    }
    return Truncation(std::move(m), offset, BandProfile::banded(lo_bw, up_bw));
}

}  // namespace extlab::numkit
