#include "coaltree/hortonode/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "coaltree/errors.hpp"

namespace coaltree::hortonode {

namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output (Hairer, Norsett & Wanner, CONTD5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double initial_step_guess(const OdeRhs& rhs, double x0, std::span<const double> y0, std::span<const double> f0,
                          const IntegratorOptions& opt) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double scale = opt.atol + opt.rtol * std::abs(y0[i]);
        d0 = std::max(d0, std::abs(y0[i]) / scale);
        d1 = std::max(d1, std::abs(f0[i]) / scale);
    }
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    std::vector<double> y1(y0.size()), f1(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + h0 * f0[i];
    rhs(x0 + h0, y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double scale = opt.atol + opt.rtol * std::abs(y0[i]);
        d2 = std::max(d2, std::abs(f1[i] - f0[i]) / scale / h0);
    }
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / std::max(d1, d2), 0.2);
    return std::min(100 * h0, h1);
}

}  // namespace

std::size_t DenseTrajectory::interval_of(double x) const {
    if (x_.size() < 2 || !(x >= x_.front() && x <= x_.back())) {
        throw DomainError("evaluation point outside the integrated range");
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    return std::min(i - 1, x_.size() - 2);
}

void DenseTrajectory::evaluate_in(std::size_t i, double x, std::span<double> out) const {
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    const double r = 1.0 - s;
    const double* ya = y_.data() + i * dim_;
    const double* yb = ya + dim_;
    const double* fa = f_.data() + i * dim_;
    const double* fb = fa + dim_;
    const double* d = d_.data() + i * dim_;
    for (std::size_t c = 0; c < dim_; ++c) {
        const double diff = yb[c] - ya[c];
        const double bspl = h * fa[c] - diff;
        const double third = diff - h * fb[c] - bspl;
        out[c] = ya[c] + s * (diff + r * (bspl + s * (third + r * d[c])));
    }
}

void DenseTrajectory::evaluate(double x, std::span<double> out) const { evaluate_in(interval_of(x), x, out); }

double DenseTrajectory::evaluate(double x, std::size_t component) const {
    std::vector<double> out(dim_);
    evaluate(x, out);
    return out.at(component);
}

DenseTrajectory integrate_dopri5(const OdeRhs& rhs, double x0, double x1, std::span<const double> y0,
                                 const IntegratorOptions& opt) {
    if (!(x1 > x0)) throw DomainError("integration interval must have x1 > x0");
    const std::size_t n = y0.size();
    DenseTrajectory out;
    out.dim_ = n;

    std::vector<double> y(y0.begin(), y0.end()), ynew(n), tmp(n), err(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    double x = x0;
    rhs(x, y, k1);
    out.x_.push_back(x);
    out.y_.insert(out.y_.end(), y.begin(), y.end());
    out.f_.insert(out.f_.end(), k1.begin(), k1.end());

    auto cap = [&](double at) {
        double c = opt.max_step;
        if (opt.step_cap) c = std::min(c, opt.step_cap(at));
        return std::max(c, opt.min_step);
    };

    double h = opt.initial_step > 0 ? opt.initial_step : initial_step_guess(rhs, x, y, k1, opt);
    bool last_rejected = false;
    std::size_t steps = 0;
    while (x < x1) {
        if (++steps > opt.max_steps) throw SolverError("step budget exhausted", x);
        h = std::min(h, cap(x));
        bool clipped = false;
        if (x + h >= x1 || x1 - (x + h) < opt.min_step) {
            h = x1 - x;
            clipped = true;
        }

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(x + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(x + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(x + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(x + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double xnew = clipped ? x1 : x + h;
        rhs(xnew, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(xnew, ynew, k7);

        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            norm = std::max(norm, std::abs(e) / scale);
        }
        if (!std::isfinite(norm)) norm = 1e10;

        if (norm <= 1.0) {
            for (std::size_t i = 0; i < n; ++i) {
                out.d_.push_back(h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]));
            }
            x = xnew;
            y.swap(ynew);
            k1.swap(k7);  // first same as last
            out.x_.push_back(x);
            out.y_.insert(out.y_.end(), y.begin(), y.end());
            out.f_.insert(out.f_.end(), k1.begin(), k1.end());
            double factor = norm == 0.0 ? 5.0 : 0.9 * std::pow(norm, -0.2);
            factor = std::clamp(factor, 0.2, last_rejected ? 1.0 : 5.0);
            h *= factor;
            last_rejected = false;
        } else {
            ++out.rejected_;
            if (h <= opt.min_step) throw SolverError("local tolerance not achieved at the minimum step", x);
            h = std::max(opt.min_step, h * std::max(0.2, 0.9 * std::pow(norm, -0.2)));
            last_rejected = true;
        }
    }
    return out;
}

}  // namespace coaltree::hortonode
