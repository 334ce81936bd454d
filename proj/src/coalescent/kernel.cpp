#include "coaltree/coalescent/kernel.hpp"

#include <charconv>
#include <cmath>

#include "coaltree/errors.hpp"

namespace coaltree::coalescent {

Kernel Kernel::constant(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("constant kernel value must be positive");
    return Kernel(Kind::constant, value);
}

Kernel Kernel::additive() { return Kernel(Kind::additive, 1.0); }

Kernel Kernel::multiplicative() { return Kernel(Kind::multiplicative, 1.0); }

Kernel Kernel::tabulated(std::vector<std::vector<double>> table) {
    const std::size_t m = table.size();
    if (m == 0) throw DomainError("tabulated kernel needs at least one mass");
    for (std::size_t i = 0; i < m; ++i) {
        if (table[i].size() != m) throw DomainError("tabulated kernel must be square");
        for (std::size_t j = 0; j < m; ++j) {
            if (!(table[i][j] > 0.0) || !std::isfinite(table[i][j])) {
                throw DomainError("tabulated kernel entries must be positive");
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (table[i][j] != table[j][i]) throw DomainError("tabulated kernel must be symmetric");
        }
    }
    Kernel k(Kind::tabulated, 1.0);
    k.table_ = std::move(table);
    return k;
}

Kernel Kernel::from_name(std::string_view name) {
    if (name == "constant") return constant();
    if (name == "additive") return additive();
    if (name == "multiplicative") return multiplicative();
    constexpr std::string_view prefix = "constant:";
    if (name.substr(0, prefix.size()) == prefix) {
        double value = 0.0;
        const auto rest = name.substr(prefix.size());
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
        if (ec == std::errc() && ptr == rest.data() + rest.size()) return constant(value);
    }
    throw DomainError("unknown kernel '" + std::string(name) + "'");
}

double Kernel::operator()(std::int64_t i, std::int64_t j) const {
    if (i < 1 || j < 1 || i > max_mass() || j > max_mass()) {
        throw DomainError("kernel undefined at masses (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    switch (kind_) {
        case Kind::constant:
            return factor_;
        case Kind::additive:
            return factor_ * static_cast<double>(i + j);
        case Kind::multiplicative:
            return factor_ * static_cast<double>(i) * static_cast<double>(j);
        case Kind::tabulated:
            return factor_ * table_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
    return 0.0;
}

Kernel Kernel::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("kernel scale factor must be positive");
    Kernel k = *this;
    k.factor_ *= factor;
    return k;
}

std::int64_t Kernel::max_mass() const noexcept {
    return kind_ == Kind::tabulated ? static_cast<std::int64_t>(table_.size())
                                    : std::numeric_limits<std::int64_t>::max();
}

std::string Kernel::name() const {
    switch (kind_) {
        case Kind::constant:
            return "constant";
        case Kind::additive:
            return "additive";
        case Kind::multiplicative:
            return "multiplicative";
        case Kind::tabulated:
            return "tabulated";
    }
    return {};
}

}  // namespace coaltree::coalescent
