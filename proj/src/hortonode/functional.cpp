#include "coaltree/hortonode/functional.hpp"

#include <cmath>
#include <limits>

#include "coaltree/errors.hpp"

namespace coaltree::hortonode {

namespace {

// Integral over [x[i], x[i+1]] of the cubic through four neighbouring points.
double cubic_segment(std::span<const double> x, std::span<const double> v, std::size_t i) {
    const std::size_t n = x.size();
    std::size_t s = i == 0 ? 0 : i - 1;
    if (s + 3 >= n) s = n - 4;
    const double a = x[i], b = x[i + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double offset = half / std::sqrt(3.0);
    double sum = 0.0;
    for (double at : {mid - offset, mid + offset}) {
        double p = 0.0;
        for (std::size_t m = s; m < s + 4; ++m) {
            double basis = 1.0;
            for (std::size_t q = s; q < s + 4; ++q) {
                if (q != m) basis *= (at - x[q]) / (x[m] - x[q]);
            }
            p += basis * v[m];
        }
        sum += p;
    }
    return half * sum;
}

}  // namespace

FunctionalResult iterate_functional(std::span<const double> x, std::span<const double> f, double min_bracket) {
    const std::size_t n = x.size();
    if (n != f.size()) throw DomainError("grid and values differ in size");
    if (n < 4) throw DomainError("functional needs at least 4 grid points");
    if (x[0] != 0.0) throw DomainError("grid must start at 0");
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(x[i] > x[i - 1])) throw DomainError("grid must be strictly increasing");
        if (!(f[i] >= 0.0)) throw DomainError("f must be nonnegative");
    }

    std::vector<double> F(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) F[i + 1] = F[i] + cubic_segment(x, f, i);
    std::vector<double> weight(n);
    for (std::size_t i = 0; i < n; ++i) weight[i] = f[i] * f[i] * std::exp(-2.0 * F[i]);
    FunctionalResult out;
    out.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    double G = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) G += cubic_segment(x, weight, i - 1);
        const double bracket = 1.0 - G;
        const double growth = std::exp(2.0 * F[i]);
        if (!(bracket >= min_bracket) || !std::isfinite(growth)) break;
        out.values[i] = bracket * growth;
        out.usable_count = i + 1;
        out.max_usable_x = x[i];
    }
    return out;
}

}  // namespace coaltree::hortonode
