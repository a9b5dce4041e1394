#include "extlab/intertwine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "extlab/hausdorff.hpp"

namespace extlab::intertwine {

using numkit::BandProfile;
using numkit::ComplexMatrix;
using numkit::mat_mul;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::optional<IndexRange> intersect(const std::optional<IndexRange>& a,
                                    const std::optional<IndexRange>& b) {
    if (!a || !b) return std::nullopt;
    const long lo = std::max(a->lo, b->lo);
    const long hi = std::min(a->hi, b->hi);
    if (lo > hi) return std::nullopt;
    return IndexRange{lo, hi};
}

Truncation identity_minus_backward(long n) {
    Truncation s = shifts::unilateral_backward(n);
    Truncation t(ComplexMatrix(ComplexMatrix::Identity(n + 1, n + 1) - s.mat), 0,
                 BandProfile::banded(0, 1));
    return t;
}

Truncation backward_power(long n, long k) {
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long i = 0; i + k <= n; ++i) m(i, i + k) = 1.0;
    return Truncation(std::move(m), 0, BandProfile::banded(0, k));
}

}  // namespace

SpectrumRegion SpectrumRegion::disc(double center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("SpectrumRegion: radius must be positive");
    SpectrumRegion r;
    r.kind = Kind::disc;
    r.center = center;
    r.radius = radius;
    return r;
}

SpectrumRegion SpectrumRegion::annulus(double inner, double outer) {
    if (!(0.0 < inner && inner < outer))
        throw std::invalid_argument("SpectrumRegion: need 0 < inner < outer");
    SpectrumRegion r;
    r.kind = Kind::annulus;
    r.inner = inner;
    r.outer = outer;
    return r;
}

std::string ResidualReport::window_desc() const {
    if (!exact) return "full-block (contaminated)";
    std::ostringstream os;
    if (rows) os << "rows " << rows->lo << ".." << rows->hi;
    if (rows && cols) os << " | ";
    if (cols) os << "cols " << cols->lo << ".." << cols->hi;
    if (!rows && !cols) os << "empty";
    return os.str();
}

ResidualReport residual(const Truncation& t, const Truncation& x, cplx lambda,
                        bool allow_contaminated) {
    auto [tx, wtx] = mat_mul(t, x);
    auto [xt, wxt] = mat_mul(x, t);

    ResidualReport rep;
    rep.rows = intersect(wtx.rows, wxt.rows);
    rep.cols = intersect(wtx.cols, wxt.cols);

    const long n = tx.size();
    const long off = tx.offset;
    double acc = 0.0;
    long entries = 0;
    const bool have_window = !(wtx.empty() || wxt.empty());
    if (!have_window) {
        if (!allow_contaminated)
            throw numkit::NoExactWindowError(
                "residual: no exact window; boundary-only comparison requires "
                "allow_contaminated");
        acc = (tx.mat - lambda * xt.mat).squaredNorm();
        entries = n * n;
        rep.exact = false;
    } else {
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) {
                const long rn = r + off, cn = c + off;
                if (!(wtx.covers(rn, cn) && wxt.covers(rn, cn))) continue;
                acc += std::norm(tx.mat(r, c) - lambda * xt.mat(r, c));
                ++entries;
            }
        if (entries == 0) {
            if (!allow_contaminated)
                throw numkit::NoExactWindowError("residual: exact windows do not overlap");
            acc = (tx.mat - lambda * xt.mat).squaredNorm();
            entries = n * n;
            rep.exact = false;
        }
    }
    const double denom = frobenius(t) * frobenius(x);
    rep.value = denom > 0.0 ? std::sqrt(acc) / denom : 0.0;
    rep.entries = entries;
    return rep;
}

bool admissible(const SpectrumRegion& region, cplx lambda, int samples) {
    if (lambda == cplx(0.0, 0.0)) throw std::invalid_argument("admissible: lambda must be nonzero");
    if (samples < 8) samples = 8;
    const double mag = std::abs(lambda);
    const bool is_real = std::abs(lambda.imag()) <= 1e-12 * std::max(1.0, mag);

    if (region.kind == SpectrumRegion::Kind::disc) {
        if (std::abs(region.center - region.radius) > 1e-12 * region.radius)
            throw std::invalid_argument("admissible: disc regions must be of the form D(r,r)");
        const double r = region.radius;
        const bool verdict = is_real && lambda.real() > 0.0 && lambda.real() <= 1.0;

        // Cross-validation: lambda * D must stay inside clos D when the
        // verdict is positive.
        if (verdict) {
            const int rings = std::max(2, samples / 8);
            const double geo_tol = 1e-9 * r * std::max(1.0, mag);
            for (int i = 1; i <= rings; ++i)
                for (int j = 0; j < 8; ++j) {
                    const double rho = double(i) / double(rings + 1);
                    const cplx z = cplx(r, 0.0) +
                                   rho * r * std::polar(1.0, kTwoPi * double(j) / 8.0);
                    if (std::abs(lambda * z - cplx(r, 0.0)) > r + geo_tol)
                        throw std::logic_error("admissible: sampling contradicts disc verdict");
                }
        }
        return verdict;
    }

    const bool verdict = std::abs(mag - 1.0) <= 1e-12;
    if (verdict) {
        const double geo_tol = 1e-9 * region.outer;
        for (int i = 0; i < samples; ++i) {
            const double rho = region.inner + (region.outer - region.inner) *
                                                  (double(i) + 0.5) / double(samples);
            if (mag * rho > region.outer + geo_tol || mag * rho < region.inner - geo_tol)
                throw std::logic_error("admissible: sampling contradicts annulus verdict");
        }
    }
    return verdict;
}

FactorizationResult factor_recover(const Truncation& x, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("factor_recover: lambda must lie in (0,1]");
    if (x.offset != 0) throw std::invalid_argument("factor_recover: unilateral truncation expected");
    const long n = x.size() - 1;

    constexpr double kColTol = 1e-12;
    long n0 = -1;
    for (long c = 0; c <= n; ++c)
        if (x.mat.col(c).norm() > kColTol) {
            n0 = c;
            break;
        }
    if (n0 < 0) throw std::invalid_argument("factor_recover: operator is numerically zero");

    const Truncation t = identity_minus_backward(n);
    const ResidualReport pre = residual(t, x, cplx(lambda, 0.0));
    if (pre.value > 1e-8)
        throw std::invalid_argument("factor_recover: X is not an eigenoperator (residual " +
                                    std::to_string(pre.value) + ")");

    // Y = X S^{n0}: columns shift left by n0.
    ComplexMatrix y = ComplexMatrix::Zero(n + 1, n + 1);
    for (long c = 0; c + n0 <= n; ++c) y.col(c) = x.mat.col(c + n0);

    const Truncation e = hausdorff::euler_matrix(cplx(lambda, 0.0), n);

    // beta_n = coordinate 0 of (Y e_n - sum_{k<n} beta_{n-1-k} E e_{k+1});
    // the subtracted columns vanish at coordinate 0 since E is unit lower
    // triangular, so this reads off row zero of Y.
    std::vector<cplx> beta(n + 1);
    for (long j = 0; j <= n; ++j) {
        cplx s(0.0, 0.0);
        for (long k = 0; k + 1 <= j; ++k) s += beta[j - 1 - k] * e.mat(0, k + 1);
        beta[j] = y(0, j) - s;
    }
    double beta_max = 0.0;
    for (const cplx& b : beta) beta_max = std::max(beta_max, std::abs(b));
    while (beta.size() > 1 && std::abs(beta.back()) <= 1e-11 * beta_max) beta.pop_back();
    if (std::abs(beta[0]) <= kColTol)
        throw std::invalid_argument("factor_recover: beta_0 vanishes");

    const Truncation a = shifts::toeplitz_matrix(
        shifts::ToeplitzCoeffs::coanalytic(beta), n);
    auto [ea, w1] = mat_mul(e, a);
    auto [xhat, w2] = mat_mul(ea, backward_power(n, n0));

    double acc = 0.0;
    long covered = 0;
    for (long r = 0; r <= n; ++r)
        for (long c = 0; c <= n; ++c) {
            if (!(w1.covers(r, c) && w2.covers(r, c))) continue;
            acc += std::norm(x.mat(r, c) - xhat.mat(r, c));
            ++covered;
        }
    if (covered == 0) throw numkit::NoExactWindowError("factor_recover: no exact window");

    FactorizationResult out;
    out.n0 = n0;
    out.beta = std::move(beta);
    out.reconstruction_residual = std::sqrt(acc) / x.mat.norm();
    return out;
}

Truncation similarity_transfer(const Truncation& x, const Truncation& s, cplx lambda, cplx alpha) {
    if (lambda == cplx(0.0, 0.0) || alpha == cplx(0.0, 0.0))
        throw std::invalid_argument("similarity_transfer: lambda and alpha must be nonzero");
    Eigen::JacobiSVD<ComplexMatrix> svd(s.mat);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0))
        throw std::invalid_argument("similarity_transfer: S is singular on the window");
    return mat_mul(x, s).first;
}

std::pair<Truncation, double> commutant_factor_bilateral(const Truncation& x, cplx lambda,
                                                         const shifts::WeightSequence& w) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw std::invalid_argument("commutant_factor_bilateral: lambda must be unimodular");
    const long m = -x.offset;
    const long size = x.size();
    ComplexMatrix d = ComplexMatrix::Zero(size, size);
    for (long i = 0; i < size; ++i) d(i, i) = std::pow(lambda, cplx(double(i - m), 0.0));
    const Truncation dt(std::move(d), x.offset, BandProfile::diagonal());
    Truncation r = mat_mul(dt, x).first;
    const Truncation wsh = shifts::bilateral_shift(w, m);
    const double res = residual(wsh, r, cplx(1.0, 0.0), true).value;
    return {std::move(r), res};
}

std::vector<cplx> commutant_symbol(const Truncation& r, const shifts::WeightSequence& w,
                                   const std::vector<cplx>& z_samples) {
    const long m = -r.offset;
    const Truncation wsh = shifts::bilateral_shift(w, m);
    const double comm = residual(wsh, r, cplx(1.0, 0.0), true).value;
    if (comm > 1e-6)
        throw std::invalid_argument("commutant_symbol: R does not commute with W (residual " +
                                    std::to_string(comm) + ")");
    std::vector<cplx> out;
    out.reserve(z_samples.size());
    for (const cplx& z : z_samples) {
        const shifts::TailVector h = shifts::bilateral_eigvec(z, w, m);
        const Eigen::VectorXcd rh = r.mat * h.coeffs;
        // Test functionals e_0 and e_1 (coordinates at absolute indices 0, 1).
        const cplx den0 = h.coeffs[m], den1 = h.coeffs[m + 1];
        if (std::abs(den0) < 1e-10 || std::abs(den1) < 1e-10)
            throw std::domain_error("commutant_symbol: test functional denominator below 1e-10");
        const cplx phi0 = rh[m] / den0;
        const cplx phi1 = rh[m + 1] / den1;
        if (std::abs(phi0 - phi1) > 1e-6 * (1.0 + std::abs(phi0)))
            throw std::domain_error("commutant_symbol: test functionals disagree");
        out.push_back(phi0);
    }
    return out;
}

DeddensReport deddens_containment(const polymodel::Poly& phi, cplx lambda, int boundary_samples,
                                  int interior_samples) {
    if (phi.degree() < 1)
        throw std::invalid_argument("deddens_containment: phi must be nonconstant");
    if (lambda == cplx(0.0, 0.0))
        throw std::invalid_argument("deddens_containment: lambda must be nonzero");
    boundary_samples = std::max(boundary_samples, 16);
    interior_samples = std::max(interior_samples, 16);

    const auto eval = [&phi](cplx z) {
        cplx acc(0.0, 0.0);
        for (long k = phi.degree(); k >= 0; --k) acc = acc * z + phi.at(k);
        return acc;
    };
    double lipschitz = 0.0;
    for (long k = 1; k <= phi.degree(); ++k) lipschitz += double(k) * std::abs(phi.at(k));

    // Sampled image of clos D: rings 0..nr (outermost on the boundary).
    const int nr = std::max(4, boundary_samples / 8);
    std::vector<cplx> image;
    image.reserve(std::size_t(nr + 1) * boundary_samples);
    for (int i = 0; i <= nr; ++i) {
        const double rho = double(i) / double(nr);
        for (int j = 0; j < boundary_samples; ++j)
            image.push_back(eval(std::polar(rho, kTwoPi * double(j) / boundary_samples)));
    }
    const double spacing = std::max(kTwoPi / boundary_samples, 1.0 / nr);
    const double tol = 2.0 * lipschitz * spacing;

    const int tr = std::max(3, int(std::sqrt(double(interior_samples) / 6.0)));
    const int ta = std::max(6, interior_samples / tr);
    double margin = 0.0;
    for (int i = 1; i <= tr; ++i)
        for (int j = 0; j < ta; ++j) {
            const double rho = double(i) / double(tr + 1);
            const cplx target =
                eval(std::polar(rho, kTwoPi * double(j) / ta)) / lambda;
            double best = std::numeric_limits<double>::infinity();
            for (const cplx& p : image) best = std::min(best, std::abs(target - p));
            margin = std::max(margin, best);
        }
    return {margin <= tol, margin, tol};
}

CirclePartition circle_partition(cplx lambda, int grid) {
    if (lambda == cplx(0.0, 0.0)) throw std::invalid_argument("circle_partition: lambda must be nonzero");
    CirclePartition out;
    if (lambda == cplx(1.0, 0.0)) {
        out.degenerate = true;  // |e^{it}| = 1 identically: the two circles coincide
        return out;
    }
    const cplx c = lambda * std::conj(cplx(1.0, 0.0) - lambda);
    const double rho = std::abs(c);
    const double psi = std::arg(c);
    const double u = (1.0 - std::norm(lambda) - std::norm(cplx(1.0, 0.0) - lambda)) / (2.0 * rho);
    if (std::abs(u) <= 1.0) {
        const double d = std::acos(std::clamp(u, -1.0, 1.0));
        auto norm_angle = [](double t) {
            t = std::fmod(t, kTwoPi);
            if (t < 0) t += kTwoPi;
            if (t > kTwoPi - 1e-12) t = 0.0;
            return t;
        };
        const double t1 = norm_angle(-psi + d);
        const double t2 = norm_angle(-psi - d);
        out.exceptional.push_back(t1);
        if (std::abs(t1 - t2) > 1e-12) out.exceptional.push_back(t2);
    }
    for (int j = 0; j < grid; ++j) {
        const double t = kTwoPi * double(j) / grid;
        const double f = std::abs(lambda * std::polar(1.0, t) + cplx(1.0, 0.0) - lambda) - 1.0;
        if (f > 1e-12)
            out.a_set.push_back(t);
        else if (f < -1e-12)
            out.b_set.push_back(t);
    }
    return out;
}

double row_growth(cplx lambda, const std::vector<cplx>& row0, long n, int grid) {
    if (row0.empty()) throw std::invalid_argument("row_growth: row0 must be nonempty");
    if (n >= 0) {
        std::vector<cplx> c = row0;
        const cplx a = cplx(1.0, 0.0) - lambda;
        for (long step = 0; step < n; ++step) {
            std::vector<cplx> next(c.size() + 1, cplx(0.0, 0.0));
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k] += a * c[k];
                next[k + 1] += lambda * c[k];
            }
            c = std::move(next);
        }
        double acc = 0.0;
        for (const cplx& v : c) acc += std::norm(v);
        return std::sqrt(acc);
    }
    // Negative powers act on a circle grid.
    if (grid < 16) grid = 16;
    double acc = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double t = kTwoPi * double(j) / grid;
        const cplx s = lambda * std::polar(1.0, t) + cplx(1.0, 0.0) - lambda;
        if (std::abs(s) < 1e-12)
            throw std::domain_error("row_growth: symbol vanishes on the grid");
        cplx f(0.0, 0.0);
        for (std::size_t k = 0; k < row0.size(); ++k)
            f += row0[k] * std::polar(1.0, t * double(k));
        acc += std::norm(f * std::pow(s, cplx(double(n), 0.0)));
    }
    return std::sqrt(acc / double(grid));
}

double only_trivial_probe(cplx lambda, long n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("only_trivial_probe: N must be an odd window size >= 3");
    const long m = (n - 1) / 2;
    ComplexMatrix t = ComplexMatrix::Identity(n, n);
    for (long i = 0; i + 1 < n; ++i) t(i, i + 1) = -1.0;
    const Truncation trunc(std::move(t), -m, BandProfile::banded(0, 1));
    return numkit::sylvester_min_sv(trunc, trunc, lambda);
}

}  // namespace extlab::intertwine
