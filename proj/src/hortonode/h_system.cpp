#include "coaltree/hortonode/h_system.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "coaltree/errors.hpp"

namespace coaltree::hortonode {

void SolverConfig::validate() const {
    if (max_order < 2) throw DomainError("max order K must be at least 2");
    if (!(epsilon > 0.0 && epsilon <= 1e-6)) throw DomainError("epsilon must lie in (0, 1e-6]");
    if (!(min_step >= 1e-12)) throw DomainError("minimum step must be at least 1e-12");
    if (!(tolerance > 0.0 && tolerance < 1e-3)) throw DomainError("tolerance must lie in (0, 1e-3)");
    if (!(refinement > 0.0 && refinement <= 1.0)) throw DomainError("refinement must lie in (0, 1]");
    if (!(max_step > 0.0)) throw DomainError("max step must be positive");
}

HSolution::HSolution(SolverConfig config, DenseTrajectory trajectory, std::vector<double> at_one)
    : config_(config), trajectory_(std::move(trajectory)), at_one_(std::move(at_one)) {}

double HSolution::at_one(int k) const {
    if (k < 0 || k > config_.max_order) throw DomainError("order " + std::to_string(k) + " not solved");
    return at_one_[static_cast<std::size_t>(k)];
}

double HSolution::at(int k, std::size_t i) const {
    if (k < 0 || k > config_.max_order) throw DomainError("order " + std::to_string(k) + " not solved");
    if (k == 0) return 0.0;
    if (k == 1) return 1.0;
    return trajectory_.state(i)[static_cast<std::size_t>(k - 2)];
}

double HSolution::operator()(int k, double x) const {
    if (k < 0 || k > config_.max_order) throw DomainError("order " + std::to_string(k) + " not solved");
    if (k == 0) return 0.0;
    if (k == 1) return 1.0;
    return trajectory_.evaluate(x, static_cast<std::size_t>(k - 2));
}

void HSolution::evaluate_all(double x, std::span<double> out) const {
    out[0] = 0.0;
    out[1] = 1.0;
    trajectory_.evaluate(x, out.subspan(2));
}

Quadrature HSolution::integrate(const Integrand& f, double integrand_bound) const {
    // Gauss-Legendre, 5 nodes on [-1, 1].
    static constexpr std::array<double, 5> node = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                   -0.9061798459386640, 0.9061798459386640};
    static constexpr std::array<double, 5> weight = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                     0.2369268850561891, 0.2369268850561891};
    const auto x = trajectory_.grid();
    std::vector<double> h(static_cast<std::size_t>(config_.max_order) + 1);
    auto state = std::span<double>(h).subspan(2);
    h[0] = 0.0;
    h[1] = 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double mid = 0.5 * (x[i] + x[i + 1]);
        const double half = 0.5 * (x[i + 1] - x[i]);
        double part = 0.0;
        for (std::size_t q = 0; q < node.size(); ++q) {
            const double at = mid + half * node[q];
            trajectory_.evaluate_in(i, at, state);
            part += weight[q] * f(at, h);
        }
        sum += half * part;
    }
    Quadrature out;
    evaluate_all(right_end(), h);
    const double f_cut = f(right_end(), h);
    out.tail = 0.5 * config_.epsilon * (f_cut + f(1.0, at_one_));
    out.value = sum + out.tail;
    out.tail_bound = config_.epsilon * integrand_bound;
    return out;
}

HSolution solve_h_system(const SolverConfig& config) {
    config.validate();
    const int K = config.max_order;
    // y[k - 2] = h_k, k = 2..K.
    OdeRhs rhs = [K](double, std::span<const double> y, std::span<double> dy) {
        double lower = 1.0;  // h_1
        for (int k = 2; k <= K; ++k) {
            const double hk = y[static_cast<std::size_t>(k - 2)];
            dy[static_cast<std::size_t>(k - 2)] = 2.0 * lower * hk - lower * lower;
            lower = hk;
        }
    };
    IntegratorOptions opt;
    opt.rtol = config.tolerance;
    opt.atol = config.tolerance;
    opt.min_step = config.min_step;
    opt.max_step = config.max_step;
    const double delta = config.min_step;
    const double rho = config.refinement;
    opt.step_cap = [delta, rho](double x) { return std::max(delta, rho * (1.0 - x)); };
    std::vector<double> y0(static_cast<std::size_t>(K - 1), 1.0);
    DenseTrajectory main = integrate_dopri5(rhs, 0.0, 1.0 - config.epsilon, y0, opt);

    IntegratorOptions last = opt;
    last.step_cap = nullptr;
    last.min_step = std::min(config.min_step, 1e-3 * config.epsilon);
    const auto end_state = main.state(main.size() - 1);
    const DenseTrajectory segment = integrate_dopri5(rhs, 1.0 - config.epsilon, 1.0, end_state, last);
    std::vector<double> at_one{0.0, 1.0};
    const auto one = segment.state(segment.size() - 1);
    at_one.insert(at_one.end(), one.begin(), one.end());
    return HSolution(config, std::move(main), std::move(at_one));
}

}  // namespace coaltree::hortonode
