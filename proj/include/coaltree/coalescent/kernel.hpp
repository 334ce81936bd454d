#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace coaltree::coalescent {

// Symmetric positive collision rate K(i, j) on integer cluster masses.
class Kernel {
public:
    enum class Kind { constant, additive, multiplicative, tabulated };

    static Kernel constant(double value = 1.0);
    static Kernel additive();        // i + j
    static Kernel multiplicative();  // i * j
    // table[i-1][j-1] = K(i, j) for masses up to table.size(). Throws
    // DomainError unless square, symmetric and positive.
    static Kernel tabulated(std::vector<std::vector<double>> table);

    // "constant", "constant:<value>", "additive", "multiplicative".
    static Kernel from_name(std::string_view name);

    // Throws DomainError for masses outside 1..max_mass().
    double operator()(std::int64_t i, std::int64_t j) const;

    // Same kernel multiplied by `factor` > 0.
    Kernel scaled(double factor) const;

    std::int64_t max_mass() const noexcept;
    Kind kind() const noexcept { return kind_; }
    std::string name() const;

private:
    Kernel(Kind kind, double factor) : kind_(kind), factor_(factor) {}

    Kind kind_;
    double factor_;
    std::vector<std::vector<double>> table_;
};

}  // namespace coaltree::coalescent
