#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "coaltree/rng.hpp"
#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::levelset {

// X_0..X_n, read as the piecewise-linear function on [0, n].
using Series = std::vector<double>;

struct Extremum {
    std::size_t position = 0;
    double value = 0.0;
};

struct Extrema {
    std::vector<Extremum> maxima;  // strict local maxima, endpoints included
    std::vector<Extremum> minima;  // strict internal local minima only
};

// Throws DomainError for an empty series and DegenerateInputError if two
// consecutive values are equal.
Extrema local_extrema(std::span<const double> series);

// Level-set tree: leaves are the local maxima (marked with their values),
// internal vertices the internal minima; the lowest internal minimum is the
// root and splits the series into the left and right subtrees.
// Throws DegenerateInputError on plateaus or tied internal minima.
treecore::RootedTree level_set_tree(std::span<const double> series);

// From N-1 values w_1..w_{N-1}, the series of length 2N-1 with w at the even
// (1-based) positions and max(clamped neighbours) + 1 at the odd ones, so that
// it has N local maxima and exactly w as internal minima.
// Throws DomainError for empty w and DegenerateInputError for repeated values.
Series extend_white_noise(std::span<const double> w);

enum class NoiseDistribution { uniform01, gaussian, exponential };

Series sample_white_noise(std::size_t n, NoiseDistribution distribution, Rng& rng);
Series sample_white_noise(std::size_t n, NoiseDistribution distribution, std::uint64_t seed);

// d_X(a, b) = (X(a) - m) + (X(b) - m), m = min of X over [min(a,b), max(a,b)].
// Throws DomainError for points outside [0, n].
double path_pseudo_metric(std::span<const double> series, double a, double b);

// One value per line; blank lines and lines starting with '#' are skipped.
// Throws ParseError with the 1-based line number.
Series read_series(std::istream& in);

// Columns: position,value,kind (kind is "max" or "min").
void write_extrema_csv(std::ostream& out, const Extrema& extrema);

}  // namespace coaltree::levelset
