#include "extlab/powerbasis.hpp"

#include <cmath>
#include <set>

namespace extlab::powerbasis {

bool disc_contains(cplx z, double q) {
    if (q <= 1.0) throw std::invalid_argument("disc_contains: q must be > 1");
    return std::abs(z - cplx(q / 2.0, 0.0)) < q / 2.0;
}

std::vector<double> muntz_partial_sums(const std::vector<double>& exponents, double p,
                                       std::size_t upto) {
    if (p <= 1.0) throw std::invalid_argument("muntz_partial_sums: p must be > 1");
    std::set<double> seen;
    for (double r : exponents) {
        if (!(r > -1.0 / p))
            throw std::invalid_argument("muntz_partial_sums: exponent must exceed -1/p");
        if (!seen.insert(r).second)
            throw std::invalid_argument("muntz_partial_sums: exponents must be distinct");
    }
    const std::size_t count = std::min(upto, exponents.size());
    std::vector<double> sums(count);
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double s = exponents[i] + 1.0 / p;
        acc += s / (s * s + 1.0);
        sums[i] = acc;
    }
    return sums;
}

double bounded_below_ratio(double lambda, double z, double q) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("bounded_below_ratio: lambda must lie in (0,1]");
    if (!(q / 2.0 < z && z < q))
        throw std::invalid_argument("bounded_below_ratio: z must lie in (q/2, q)");
    const double lz = lambda * z;
    if (!(lz > 0.0 && lz < q))
        throw std::invalid_argument("bounded_below_ratio: lambda*z must lie in (0,q)");
    const double num = 2.0 * (1.0 - lz) / lz + 1.0;
    const double den = 2.0 * (1.0 - z) / z + 1.0;
    if (!(num > 0.0) || !(den > 0.0))
        throw std::domain_error("bounded_below_ratio: L2 norm undefined at these points");
    return num / den;
}

nlohmann::json to_json(const PowerSum& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : f.terms)
        arr.push_back({{"re_c", t.coeff.real()},
                       {"im_c", t.coeff.imag()},
                       {"re_r", t.exponent.real()},
                       {"im_r", t.exponent.imag()}});
    return arr;
}

PowerSum powersum_from_json(const nlohmann::json& j) {
    std::vector<PowerSum::Term> terms;
    for (const auto& e : j)
        terms.push_back({cplx(e.at("re_c").get<double>(), e.at("im_c").get<double>()),
                         cplx(e.at("re_r").get<double>(), e.at("im_r").get<double>())});
    return PowerSum(std::move(terms));
}

}  // namespace extlab::powerbasis
