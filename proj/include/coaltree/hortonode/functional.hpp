#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coaltree::hortonode {

struct FunctionalResult {
    std::vector<double> values;  // Hf on the input grid; NaN past the usable range
    std::size_t usable_count = 0;
    double max_usable_x = 0.0;
};

// Hf(x) = [1 - int_0^x f(y)^2 e^{-2F(y)} dy] e^{2F(x)}, F(x) = int_0^x f, with
// both integrals accumulated by piecewise cubic (4-point Lagrange) quadrature.
// The bracket cancels towards x = 1; a point is usable while the bracket
// keeps at least `min_bracket` and e^{2F} is finite.
// DomainError for a grid that is not increasing from 0, mismatched sizes,
// fewer than 4 points or negative f.
FunctionalResult iterate_functional(std::span<const double> x, std::span<const double> f,
                                    double min_bracket = 1e-6);

}  // namespace coaltree::hortonode
