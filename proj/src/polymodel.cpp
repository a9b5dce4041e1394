#include "extlab/polymodel.hpp"

#include <cmath>
#include <stdexcept>

namespace extlab::polymodel {

using numkit::BandProfile;
using numkit::ComplexMatrix;

long Poly::degree() const {
    for (long k = long(c.size()) - 1; k >= 0; --k)
        if (c[k] != cplx(0.0, 0.0)) return k;
    return -1;
}

void Poly::trim() {
    while (!c.empty() && c.back() == cplx(0.0, 0.0)) c.pop_back();
}

Poly mz_apply(const Poly& p) {
    Poly out;
    out.c.resize(p.c.size() + 1, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < p.c.size(); ++k) out.c[k + 1] = p.c[k];
    return out;
}

namespace {

// Columns of the composition operator: col_{n+1} = (a + b z) * col_n with
// a = (lambda-1)/lambda, b = 1/lambda.  Both are in [0,1] for lambda >= 1,
// so the recurrence stays a convex combination.
std::vector<Poly> kt_columns(double lambda, long n) {
    if (lambda < 1.0) throw std::invalid_argument("kt_composition: lambda must be >= 1");
    const double a = (lambda - 1.0) / lambda;
    const double b = 1.0 / lambda;
    std::vector<Poly> cols(n + 1);
    cols[0].c = {cplx(1.0, 0.0)};
    for (long j = 1; j <= n; ++j) {
        const Poly& prev = cols[j - 1];
        Poly next;
        next.c.assign(j + 1, cplx(0.0, 0.0));
        for (long k = 0; k <= j; ++k)
            next.c[k] = a * prev.at(k) + b * prev.at(k - 1);
        cols[j] = std::move(next);
    }
    return cols;
}

}  // namespace

Truncation kt_composition(double lambda, long n) {
    if (n < 0) throw std::invalid_argument("kt_composition: N must be >= 0");
    const auto cols = kt_columns(lambda, n);
    ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
    for (long j = 0; j <= n; ++j)
        for (long k = 0; k <= j; ++k) m(k, j) = cols[j].at(k);
    return Truncation(std::move(m), 0, BandProfile::upper_triangular());
}

double verify_kt(double lambda, long n) {
    if (n < 1) throw std::invalid_argument("verify_kt: N must be >= 1");
    const auto cols = kt_columns(lambda, n);
    double worst = 0.0;
    for (long j = 0; j + 1 <= n; ++j) {
        // lhs = (I - M_z) X z^j, rhs = lambda X (z^j - z^{j+1}); degrees <= N.
        const Poly shifted = mz_apply(cols[j]);
        for (long k = 0; k <= n; ++k) {
            const cplx lhs = cols[j].at(k) - shifted.at(k);
            const cplx rhs = lambda * (cols[j].at(k) - cols[j + 1].at(k));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

mpq_class stirling_ratio(long n) {
    if (n < 1) throw std::invalid_argument("stirling_ratio: n must be >= 1");
    mpz_class num, den;
    mpz_bin_uiui(num.get_mpz_t(), 4 * n + 2, 2 * n + 1);
    mpz_bin_uiui(den.get_mpz_t(), 2 * n, n);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace extlab::polymodel
