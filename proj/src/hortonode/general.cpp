#include "coaltree/hortonode/general.hpp"

#include <cmath>
#include <cstdio>

#include "coaltree/errors.hpp"

namespace coaltree::hortonode {

// State layout: eta[(j-1) * M + (k-1)] for j = 1..J+1, then lost mass, then
// created[j] for j = 2..J+1.

void GeneralConfig::validate() const {
    if (max_order < 1) throw DomainError("general system needs J >= 1");
    if (max_order > 30 || static_cast<long long>(max_mass) < (1LL << max_order)) {
        throw DomainError("general system needs M >= 2^J");
    }
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    if (!(tolerance > 0.0 && tolerance < 1e-3)) throw DomainError("tolerance must lie in (0, 1e-3)");
}

GeneralSolution::GeneralSolution(GeneralConfig config, DenseTrajectory trajectory, std::vector<std::string> warnings)
    : config_(config), trajectory_(std::move(trajectory)), warnings_(std::move(warnings)) {}

std::size_t GeneralSolution::slot(int j, int k) const {
    if (j < 1 || j > config_.max_order + 1) throw DomainError("order class out of range: " + std::to_string(j));
    if (k < 1 || k > config_.max_mass) throw DomainError("mass out of range: " + std::to_string(k));
    return static_cast<std::size_t>((j - 1) * config_.max_mass + (k - 1));
}

double GeneralSolution::eta(int j, int k, double t) const { return trajectory_.evaluate(t, slot(j, k)); }

double GeneralSolution::order_total(int j, double t) const {
    std::vector<double> y(trajectory_.dimension());
    trajectory_.evaluate(t, y);
    double sum = 0.0;
    for (int k = 1; k <= config_.max_mass; ++k) sum += y[slot(j, k)];
    return sum;
}

double GeneralSolution::cluster_total(double t) const {
    double sum = 0.0;
    for (int j = 1; j <= config_.max_order + 1; ++j) sum += order_total(j, t);
    return sum;
}

double GeneralSolution::mass_total(double t) const {
    std::vector<double> y(trajectory_.dimension());
    trajectory_.evaluate(t, y);
    double sum = 0.0;
    for (int j = 1; j <= config_.max_order + 1; ++j) {
        for (int k = 1; k <= config_.max_mass; ++k) sum += k * y[slot(j, k)];
    }
    return sum;
}

double GeneralSolution::lost_mass(double t) const {
    const auto lost = static_cast<std::size_t>((config_.max_order + 1) * config_.max_mass);
    return trajectory_.evaluate(t, lost);
}

double GeneralSolution::horton_estimate(int j) const {
    if (j < 1 || j > config_.max_order + 1) throw DomainError("order out of range: " + std::to_string(j));
    if (j == 1) return 1.0;
    const auto base = static_cast<std::size_t>((config_.max_order + 1) * config_.max_mass + 1);
    return trajectory_.state(trajectory_.size() - 1)[base + static_cast<std::size_t>(j - 2)];
}

GeneralSolution solve_general_smoluchowski_horton(const coalescent::Kernel& kernel, const GeneralConfig& config) {
    config.validate();
    const int J = config.max_order;
    const int M = config.max_mass;
    const int classes = J + 1;
    if (kernel.max_mass() < M) throw DomainError("kernel is not defined up to the mass cutoff");

    std::vector<double> table(static_cast<std::size_t>(M) * M);
    for (int a = 1; a <= M; ++a) {
        for (int b = 1; b <= M; ++b) table[static_cast<std::size_t>((a - 1) * M + (b - 1))] = kernel(a, b);
    }
    // Smallest mass of each class: an order-j cluster has at least 2^(j-1) leaves.
    std::vector<int> first(static_cast<std::size_t>(classes));
    for (int c = 1; c <= classes; ++c) first[static_cast<std::size_t>(c - 1)] = 1 << (c - 1);

    const auto cells = static_cast<std::size_t>(classes * M);
    const std::size_t lost_slot = cells;
    const std::size_t created_base = cells + 1;

    OdeRhs rhs = [=, &table, &first](double, std::span<const double> y, std::span<double> dy) {
        std::fill(dy.begin(), dy.end(), 0.0);
        auto eta = [&](int c, int k) { return y[static_cast<std::size_t>((c - 1) * M + (k - 1))]; };
        auto d = [&](int c, int k) -> double& { return dy[static_cast<std::size_t>((c - 1) * M + (k - 1))]; };

        // Loss: eta_{c,k} * sum_{k'} K(k, k') * (all clusters of mass k').
        std::vector<double> by_mass(static_cast<std::size_t>(M), 0.0);
        for (int c = 1; c <= classes; ++c) {
            for (int k = first[static_cast<std::size_t>(c - 1)]; k <= M; ++k) by_mass[static_cast<std::size_t>(k - 1)] += eta(c, k);
        }
        std::vector<double> encounter(static_cast<std::size_t>(M), 0.0);
        for (int k = 1; k <= M; ++k) {
            const double* row = table.data() + static_cast<std::size_t>(k - 1) * M;
            double s = 0.0;
            for (int q = 0; q < M; ++q) s += row[q] * by_mass[static_cast<std::size_t>(q)];
            encounter[static_cast<std::size_t>(k - 1)] = s;
        }
        double mass_out = 0.0;
        for (int c = 1; c <= classes; ++c) {
            for (int k = first[static_cast<std::size_t>(c - 1)]; k <= M; ++k) {
                const double rate = eta(c, k) * encounter[static_cast<std::size_t>(k - 1)];
                d(c, k) -= rate;
                mass_out += k * rate;
            }
        }

        // Gains and order creation.
        double mass_in = 0.0;
        for (int a = 1; a <= classes; ++a) {
            for (int b = a; b <= classes; ++b) {
                const int target = a == b ? std::min(a + 1, classes) : b;
                const double half = a == b ? 0.5 : 1.0;
                double created = 0.0;
                const int fa = first[static_cast<std::size_t>(a - 1)];
                const int fb = first[static_cast<std::size_t>(b - 1)];
                const double* __restrict eb = y.data() + static_cast<std::size_t>((b - 1) * M);  // eta_{b,k} at k-1
                double* __restrict gain = dy.data() + static_cast<std::size_t>((target - 1) * M);
                for (int k1 = fa; k1 <= M; ++k1) {
                    const double x = half * eta(a, k1);
                    if (x == 0.0) continue;
                    const double* __restrict row = table.data() + static_cast<std::size_t>(k1 - 1) * M;
                    const int top = M - k1;
                    double* __restrict out = gain + k1;  // out[k2 - 1] is mass k1 + k2
                    double sum = 0.0, weighted = 0.0;
                    for (int k2 = fb; k2 <= top; ++k2) {
                        const double rate = x * eb[k2 - 1] * row[k2 - 1];
                        out[k2 - 1] += rate;
                        sum += rate;
                        weighted += k2 * rate;
                    }
                    mass_in += k1 * sum + weighted;
                    created += sum;
                    if (a == b && a <= J) {
                        // Overflowing pairs still create an order-(a+1) cluster.
                        for (int k2 = std::max(fb, top + 1); k2 <= M; ++k2) created += x * eb[k2 - 1] * row[k2 - 1];
                    }
                }
                if (a == b && a <= J) dy[created_base + static_cast<std::size_t>(a - 1)] = created;
            }
        }
        dy[lost_slot] = mass_out - mass_in;
    };

    IntegratorOptions opt;
    opt.rtol = config.tolerance;
    opt.atol = config.tolerance * 1e-3;
    opt.min_step = 1e-12;
    std::vector<double> y0(created_base + static_cast<std::size_t>(J), 0.0);
    y0[0] = 1.0;  // eta_{1,1}(0)
    DenseTrajectory trajectory = integrate_dopri5(rhs, 0.0, config.t_max, y0, opt);

    std::vector<std::string> warnings;
    const double lost = trajectory.state(trajectory.size() - 1)[lost_slot];
    if (lost > 0.5) throw SolverError("more than half of the mass left the truncated mass range", config.t_max);
    if (lost > config.lost_mass_warning) {
        char buffer[160];
        std::snprintf(buffer, sizeof buffer, "lost mass %.3g exceeds the warning level %.3g at t = %g", lost,
                      config.lost_mass_warning, config.t_max);
        warnings.emplace_back(buffer);
    }
    return GeneralSolution(config, std::move(trajectory), std::move(warnings));
}

}  // namespace coaltree::hortonode
