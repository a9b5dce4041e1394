#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extlab/numkit.hpp"
#include "extlab/polymodel.hpp"
#include "extlab/shifts.hpp"

namespace extlab::intertwine {

using numkit::cplx;
using numkit::ExactWindow;
using numkit::IndexRange;
using numkit::Truncation;

/// Point-spectrum geometry driving the admissibility filters.
struct SpectrumRegion {
    enum class Kind { disc, annulus };
    Kind kind;
    double center = 0.0, radius = 0.0;  // disc D(center, radius)
    double inner = 0.0, outer = 0.0;    // annulus inner < |z| < outer

    static SpectrumRegion disc(double center, double radius);
    static SpectrumRegion annulus(double inner, double outer);
};

struct ResidualReport {
    double value = 0.0;     // ||TX - lambda XT||_F on the window / (||T||_F ||X||_F)
    long entries = 0;       // entries actually compared
    bool exact = true;      // false: no window existed, full block compared
    std::optional<IndexRange> rows;  // row strip common to both products
    std::optional<IndexRange> cols;  // column strip common to both products
    std::string window_desc() const;
};

/// Intertwining residual of TX = lambda XT restricted to the intersection of
/// both products' exact windows.  With no exact window the call throws unless
/// `allow_contaminated` is set, in which case the full block is compared and
/// the report is flagged.
ResidualReport residual(const Truncation& t, const Truncation& x, cplx lambda,
                        bool allow_contaminated = false);

/// Exact geometric verdict for lambda * int(region) subset clos(region),
/// cross-validated on `samples` points.  Disc regions must be of the form
/// D(r,r): verdict is lambda real and 0 < lambda <= 1.  Annulus verdict is
/// |lambda| = 1.
bool admissible(const SpectrumRegion& region, cplx lambda, int samples);

struct FactorizationResult {
    long n0 = 0;
    std::vector<cplx> beta;  // beta[0] != 0
    double reconstruction_residual = 0.0;
};

/// Recovers the factorization X = E_lambda A (S^*)^{n0} of an eigenoperator
/// of I - S^*: n0 is the first nonvanishing column, the beta sequence is
/// extracted coordinate-0-first through the shift recursion, and the result
/// carries the relative reconstruction residual on the exact window.
FactorizationResult factor_recover(const Truncation& x, double lambda);

/// Returns XS (an eigenoperator candidate for lambda*alpha when S conjugates
/// the operator to alpha times itself).  The caller re-verifies with residual.
Truncation similarity_transfer(const Truncation& x, const Truncation& s, cplx lambda, cplx alpha);

/// For |lambda| = 1: strips the diagonal eigenoperator off X, returning
/// R = diag(lambda^n) X together with residual(W, R, 1).
std::pair<Truncation, double> commutant_factor_bilateral(const Truncation& x, cplx lambda,
                                                         const shifts::WeightSequence& w);

/// Commutant symbol samples phi(z) = <R h(z), g> / <h(z), g>, checked across
/// two independent test functionals.
std::vector<cplx> commutant_symbol(const Truncation& r, const shifts::WeightSequence& w,
                                   const std::vector<cplx>& z_samples);

struct DeddensReport {
    bool holds = false;
    double margin = 0.0;     // worst distance from (1/lambda) phi(D) to the sampled image
    double tolerance = 0.0;  // resolution-scaled acceptance threshold
};

/// Sampled containment (1/lambda) phi(D) subset clos phi(D) for a nonconstant
/// polynomial symbol.
DeddensReport deddens_containment(const polymodel::Poly& phi, cplx lambda, int boundary_samples,
                                  int interior_samples);

struct CirclePartition {
    std::vector<double> a_set;        // grid points with |lambda e^{it} + 1 - lambda| > 1
    std::vector<double> b_set;        // grid points with |...| < 1
    std::vector<double> exceptional;  // exact solutions of |...| = 1
    bool degenerate = false;          // lambda = 1: the two circles coincide
};

CirclePartition circle_partition(cplx lambda, int grid);

/// l2 norm of row0 after n multiplications by the symbol
/// lambda e^{it} + 1 - lambda.  Nonnegative n is exact coefficient
/// convolution; negative n divides on a size-`grid` sample of the circle and
/// is rejected if the symbol vanishes there.
double row_growth(cplx lambda, const std::vector<cplx>& row0, long n, int grid = 2048);

/// sigma_min of X -> (I-U^*)X - lambda X(I-U^*) on an odd bilateral window of
/// total size n.  Zero iff lambda = 1 (the truncated spectrum is {1}).
double only_trivial_probe(cplx lambda, long n);

}  // namespace extlab::intertwine
