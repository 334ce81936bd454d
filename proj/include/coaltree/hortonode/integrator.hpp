#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace coaltree::hortonode {

// dy/dx = f(x, y), written into the last argument.
using OdeRhs = std::function<void(double, std::span<const double>, std::span<double>)>;

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 picks one from the first derivative
    double min_step = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    // Extra position-dependent cap on the step (e.g. geometric refinement).
    std::function<double(double)> step_cap;
    std::size_t max_steps = 10'000'000;
};

// Accepted steps of an integration with the solution and its derivative at
// every grid point; evaluation in between uses the Dormand-Prince continuous
// extension (fourth order, one extra coefficient vector per step).
class DenseTrajectory {
public:
    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return x_.size(); }
    std::span<const double> grid() const noexcept { return x_; }
    std::span<const double> state(std::size_t point) const { return {y_.data() + point * dim_, dim_}; }
    std::span<const double> slope(std::size_t point) const { return {f_.data() + point * dim_, dim_}; }
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }
    std::size_t rejected_steps() const noexcept { return rejected_; }

    // Index i with grid[i] <= x <= grid[i+1]; DomainError outside the range.
    std::size_t interval_of(double x) const;
    void evaluate(double x, std::span<double> out) const;
    double evaluate(double x, std::size_t component) const;
    // Same, on a known interval (no search).
    void evaluate_in(std::size_t interval, double x, std::span<double> out) const;

private:
    friend DenseTrajectory integrate_dopri5(const OdeRhs&, double, double, std::span<const double>,
                                            const IntegratorOptions&);
    std::size_t dim_ = 0;
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> f_;
    std::vector<double> d_;  // per step: h * sum(d_i k_i)
    std::size_t rejected_ = 0;
};

// Dormand-Prince 5(4) with local extrapolation and max-norm error control
// |err_i| <= atol + rtol * max(|y_i|, |y_i'|). Lands exactly on x1.
// Throws SolverError if the step would have to drop below min_step.
DenseTrajectory integrate_dopri5(const OdeRhs& rhs, double x0, double x1, std::span<const double> y0,
                                 const IntegratorOptions& options);

}  // namespace coaltree::hortonode
