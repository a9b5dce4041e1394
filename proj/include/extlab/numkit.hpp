#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace extlab::numkit {

using cplx = std::complex<double>;

/// Dense complex matrix backing a finite operator truncation.
using ComplexMatrix = Eigen::MatrixXcd;

/// Thrown when an iterative estimate fails to settle; carries the last value.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double last)
        : std::runtime_error(what), last_estimate(last) {}
    double last_estimate;
};

/// Thrown when a dense probe would exceed the size budget.
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a comparison has no truncation-exact region to work on.
class NoExactWindowError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Band structure declaration: entry (n,k) may be nonzero only when
/// -upper <= n-k <= lower.  nullopt means unbounded on that side.
struct BandProfile {
    std::optional<long> lower;
    std::optional<long> upper;

    static BandProfile full() { return {std::nullopt, std::nullopt}; }
    static BandProfile banded(long lo, long up) { return {lo, up}; }
    static BandProfile lower_triangular() { return {std::nullopt, 0}; }
    static BandProfile upper_triangular() { return {0, std::nullopt}; }
    static BandProfile diagonal() { return {0, 0}; }

    bool admits(long row, long col) const {
        const long d = row - col;
        if (upper && d < -*upper) return false;
        if (lower && d > *lower) return false;
        return true;
    }
};

/// Combined band of a product: bandwidths add, full absorbs.
BandProfile product_band(const BandProfile& a, const BandProfile& b);

/// Finite square window of an infinite operator.  `offset` is the absolute
/// index of the first basis vector (0 unilateral, -N for a bilateral window
/// over e_{-N}..e_{N}).
struct Truncation {
    ComplexMatrix mat;
    long offset = 0;
    BandProfile band = BandProfile::full();

    Truncation() = default;
    Truncation(ComplexMatrix m, long off, BandProfile b);

    long size() const { return mat.rows(); }
    long first() const { return offset; }
    long last() const { return offset + size() - 1; }

    /// Entry access by absolute (operator) index.
    cplx at(long n, long k) const { return mat(n - offset, k - offset); }
    cplx& at(long n, long k) { return mat(n - offset, k - offset); }
};

struct IndexRange {
    long lo;
    long hi;
    bool contains(long i) const { return lo <= i && i <= hi; }
    long count() const { return hi >= lo ? hi - lo + 1 : 0; }
};

/// Region of a truncated product guaranteed to agree with the infinite
/// product.  An entry (n,k) is covered when n lies in `rows` or k lies in
/// `cols`; both computed pessimistically from the factors' band profiles.
struct ExactWindow {
    std::optional<IndexRange> rows;
    std::optional<IndexRange> cols;

    bool covers(long n, long k) const {
        return (rows && rows->contains(n)) || (cols && cols->contains(k));
    }
    bool empty() const { return !rows && !cols; }
};

/// Truncated product together with its exactness guarantee.
std::pair<Truncation, ExactWindow> mat_mul(const Truncation& a, const Truncation& b);

/// Largest singular value via power iteration on the Gram matrix.
/// Start vector is the normalized all-ones vector; no randomness.
double op_norm(const Truncation& a, double tol = 1e-10, long max_iter = 100000);

double frobenius(const Truncation& a);

/// Smallest singular value of X |-> AX - lambda XB on the vectorized
/// N^2-dimensional space (Kronecker construction).  Zero iff a nonzero
/// finite-dimensional solution exists.
double sylvester_min_sv(const Truncation& a, const Truncation& b, cplx lambda);

/// Assembles I (x) A - lambda B^T (x) I, the matrix of the Sylvester map
/// on column-stacked coordinates.  Exposed for oracle-side checks.
ComplexMatrix sylvester_kronecker(const Truncation& a, const Truncation& b, cplx lambda);

/// CSV dump, header "row,col,re,im", nonzero entries only, row-major order.
void dump_csv(const Truncation& a, std::ostream& os);

/// Reads the dump format back; size inferred from the largest index unless
/// `size_hint` is given.  Band is detected from the zero pattern.
Truncation load_csv(std::istream& is, long size_hint = -1);

}  // namespace extlab::numkit
