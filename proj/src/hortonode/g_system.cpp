#include "coaltree/hortonode/g_system.hpp"

#include <string>

#include "coaltree/errors.hpp"

namespace coaltree::hortonode {

// State layout: [g_2..g_K | S_1..S_K | C_1..C_{K-1}] with S_j = int g_j^2/2
// and C_j = int g_j g_{j+1}.
namespace {

std::size_t g_slot(int j) { return static_cast<std::size_t>(j - 2); }
std::size_t s_slot(int K, int j) { return static_cast<std::size_t>(K - 1 + j - 1); }
std::size_t c_slot(int K, int j) { return static_cast<std::size_t>(2 * K - 1 + j - 1); }

double g1(double t) { return 2.0 / (t + 2.0); }

}  // namespace

GSolution::GSolution(int max_order, double t_max, DenseTrajectory trajectory)
    : max_order_(max_order), t_max_(t_max), trajectory_(std::move(trajectory)) {}

double GSolution::raw(std::size_t component, double t) const { return trajectory_.evaluate(t, component); }

double GSolution::end_value(std::size_t component) const {
    return trajectory_.state(trajectory_.size() - 1)[component];
}

double GSolution::g(int j, double t) const {
    if (j < 1 || j > max_order_) throw DomainError("g index out of range: " + std::to_string(j));
    if (!(t >= 0.0 && t <= t_max_)) throw DomainError("t outside [0, t_max]");
    if (j == 1) return g1(t);
    return raw(g_slot(j), t);
}

double GSolution::eta(int j, double t) const {
    if (j < 1 || j >= max_order_) throw DomainError("eta index out of range: " + std::to_string(j));
    return g(j, t) - g(j + 1, t);
}

double GSolution::half_square_tail(int j) const {
    if (j < 1 || j > max_order_) throw DomainError("g index out of range: " + std::to_string(j));
    if (j == 1) return 2.0 / (t_max_ + 2.0);
    const double a = t_max_ * end_value(g_slot(j));
    return a * a / (2.0 * t_max_);
}

double GSolution::half_square_integral(int j) const {
    if (j < 1 || j > max_order_) throw DomainError("g index out of range: " + std::to_string(j));
    return end_value(s_slot(max_order_, j)) + half_square_tail(j);
}

double GSolution::cross_tail(int j) const {
    if (j < 1 || j >= max_order_) throw DomainError("cross integral index out of range: " + std::to_string(j));
    const double a = j == 1 ? t_max_ * g1(t_max_) : t_max_ * end_value(g_slot(j));
    const double b = t_max_ * end_value(g_slot(j + 1));
    return a * b / t_max_;
}

double GSolution::cross_integral(int j) const {
    if (j < 1 || j >= max_order_) throw DomainError("cross integral index out of range: " + std::to_string(j));
    return end_value(c_slot(max_order_, j)) + cross_tail(j);
}

double GSolution::h_from_g(int k, double x) const {
    if (k < 0 || k >= max_order_) throw DomainError("h index out of range: " + std::to_string(k));
    if (!(x >= 0.0 && x <= max_h_argument())) throw DomainError("x beyond the image of t_max");
    const double w = 1.0 - x;
    const double t = std::min(t_max_, 2.0 * x / w);
    return 1.0 / w - g(k + 1, t) / (w * w);
}

GSolution solve_g_system(int K, double t_max, double tolerance) {
    if (K < 2) throw DomainError("g-system needs K >= 2");
    if (!(t_max >= 1e3)) throw DomainError("t_max must be at least 1e3");
    OdeRhs rhs = [K](double t, std::span<const double> y, std::span<double> dy) {
        double lower = g1(t);
        dy[s_slot(K, 1)] = 0.5 * lower * lower;
        for (int j = 2; j <= K; ++j) {
            const double gj = y[g_slot(j)];
            dy[g_slot(j)] = 0.5 * lower * lower - lower * gj;
            dy[s_slot(K, j)] = 0.5 * gj * gj;
            dy[c_slot(K, j - 1)] = lower * gj;
            lower = gj;
        }
    };
    IntegratorOptions opt;
    opt.rtol = tolerance;
    opt.atol = tolerance * 1e-3;
    opt.min_step = 1e-12;
    std::vector<double> y0(static_cast<std::size_t>(3 * K - 2), 0.0);
    return GSolution(K, t_max, integrate_dopri5(rhs, 0.0, t_max, y0, opt));
}

}  // namespace coaltree::hortonode
