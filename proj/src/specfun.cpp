#include "tfsamp/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "tfsamp/quadrature.hpp"

namespace tfsamp {

namespace {

constexpr double kPi = std::numbers::pi;

// Normalized three-term recurrence:
//   h_{n+1}(t) = 2 t sqrt(pi/(n+1)) h_n(t) - sqrt(n/(n+1)) h_{n-1}(t),
// seeded with h_0(t) = 2^{1/4} e^{-pi t^2}. Keeps unit L2 norm at every
// order, so no factorial normalization constants appear.
double hermite_recurrence(int n, double t) {
    const double h0 = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
    if (n == 0) return h0;
    double prev = h0;
    double cur = 2.0 * t * std::sqrt(kPi) * h0;
    for (int k = 1; k < n; ++k) {
        const double next =
            2.0 * t * std::sqrt(kPi / (k + 1)) * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void check_order(int n) {
    if (n < 0) throw std::domain_error("hermite order must be nonnegative");
    if (n > kHermiteOrderCap)
        throw capability_error("hermite order exceeds validated cap 16");
}

}  // namespace

double hermite_eval(int n, double t) {
    check_order(n);
    return hermite_recurrence(n, t);
}

double hermite_deriv_eval(int n, double t) {
    check_order(n);
    if (n == 0) return -2.0 * kPi * t * hermite_recurrence(0, t);
    return 2.0 * std::sqrt(kPi * n) * hermite_recurrence(n - 1, t) -
           2.0 * kPi * t * hermite_recurrence(n, t);
}

double laguerre_eval(int n, double t) {
    if (n < 0) throw std::domain_error("laguerre order must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - t;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 - t) * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double nu(int n, double R) {
    if (n < 0) throw std::domain_error("nu: order must be nonnegative");
    if (!(R > 0.0)) throw std::domain_error("nu: R must be positive");
    const double upper = kPi * R * R;
    return adaptive_integrate(
        [n](double t) {
            const double l = laguerre_eval(n, t);
            return l * l * std::exp(-t);
        },
        0.0, upper);
}

double hermite_support_halfwidth(int n) {
    return std::sqrt((2.0 * n + 1.0) / (2.0 * kPi)) + 4.0;
}

namespace detail {

double hermite_eval_unchecked(int n, double t) { return hermite_recurrence(n, t); }

// h_0(t) .. h_{n_max}(t) in one recurrence pass.
void hermite_bank(int n_max, double t, double* out) {
    out[0] = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
    if (n_max == 0) return;
    out[1] = 2.0 * t * std::sqrt(kPi) * out[0];
    for (int k = 1; k < n_max; ++k)
        out[k + 1] =
            2.0 * t * std::sqrt(kPi / (k + 1)) * out[k] - std::sqrt(double(k) / (k + 1)) * out[k - 1];
}

}  // namespace detail

WindowSpec WindowSpec::hermite(int n) {
    check_order(n);
    WindowSpec w;
    w.kind_ = Kind::hermite;
    w.n_ = n;
    w.S_ = hermite_support_halfwidth(n);
    w.norms_.l2 = 1.0;
    w.norms_.deriv_l2 = std::sqrt(kPi * (2.0 * n + 1.0));
    w.norms_.t_weighted_l2 = std::sqrt((2.0 * n + 1.0) / (4.0 * kPi));
    w.norms_.t_weighted_deriv_l2 = std::sqrt(adaptive_integrate(
        [n](double t) {
            const double d = (n == 0)
                                 ? -2.0 * kPi * t * hermite_recurrence(0, t)
                                 : 2.0 * std::sqrt(kPi * n) * hermite_recurrence(n - 1, t) -
                                       2.0 * kPi * t * hermite_recurrence(n, t);
            return t * t * d * d;
        },
        -w.S_, w.S_));
    return w;
}

WindowSpec WindowSpec::hat(double S) {
    if (!(S > 0.0)) throw std::domain_error("hat window: S must be positive");
    WindowSpec w;
    w.kind_ = Kind::hat;
    w.S_ = S;
    w.norms_.l2 = std::sqrt(2.0 * S / 3.0);
    w.norms_.deriv_l2 = std::sqrt(2.0 / S);
    w.norms_.t_weighted_l2 = std::sqrt(S * S * S / 15.0);
    w.norms_.t_weighted_deriv_l2 = std::sqrt(2.0 * S / 3.0);
    return w;
}

WindowSpec WindowSpec::sampled_h1(std::vector<double> samples, double S) {
    if (samples.size() < 3)
        throw std::domain_error("sampled window: at least 3 samples required");
    if (!(S > 0.0)) throw std::domain_error("sampled window: S must be positive");
    WindowSpec w;
    w.kind_ = Kind::sampled_h1;
    w.S_ = S;
    w.samples_ = std::move(samples);
    const std::size_t N = w.samples_.size();
    const double h = 2.0 * S / static_cast<double>(N - 1);
    w.step_ = h;

    // Central differences on the grid (one-sided at the ends); both the
    // window and its derivative are then piecewise linear, so per-interval
    // 3-point Gauss is exact for every norm integrand (degree <= 4).
    std::vector<double> deriv(N);
    deriv[0] = (w.samples_[1] - w.samples_[0]) / h;
    deriv[N - 1] = (w.samples_[N - 1] - w.samples_[N - 2]) / h;
    for (std::size_t k = 1; k + 1 < N; ++k)
        deriv[k] = (w.samples_[k + 1] - w.samples_[k - 1]) / (2.0 * h);

    const GaussLegendreRule& rule = gauss_legendre(3);
    double l2 = 0.0, d2 = 0.0, t2 = 0.0, td2 = 0.0;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const double a = -S + h * static_cast<double>(k);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double s = 0.5 * (rule.nodes[i] + 1.0);  // in [0,1]
            const double t = a + s * h;
            const double wgt = 0.5 * h * rule.weights[i];
            const double v = w.samples_[k] + s * (w.samples_[k + 1] - w.samples_[k]);
            const double dv = deriv[k] + s * (deriv[k + 1] - deriv[k]);
            l2 += wgt * v * v;
            d2 += wgt * dv * dv;
            t2 += wgt * t * t * v * v;
            td2 += wgt * t * t * dv * dv;
        }
    }
    w.norms_.l2 = std::sqrt(l2);
    w.norms_.deriv_l2 = std::sqrt(d2);
    w.norms_.t_weighted_l2 = std::sqrt(t2);
    w.norms_.t_weighted_deriv_l2 = std::sqrt(td2);
    if (!(w.norms_.l2 > 0.0)) throw std::domain_error("sampled window: zero L2 norm");
    return w;
}

int WindowSpec::hermite_order() const {
    if (kind_ != Kind::hermite)
        throw std::logic_error("hermite_order: window is not a hermite window");
    return n_;
}

double WindowSpec::eval(double t) const {
    switch (kind_) {
        case Kind::hermite:
            return hermite_recurrence(n_, t);
        case Kind::hat:
            return std::abs(t) >= S_ ? 0.0 : 1.0 - std::abs(t) / S_;
        case Kind::sampled_h1: {
            if (t <= -S_ || t >= S_) {
                // Grid endpoints still count: return the boundary samples there.
                if (t == -S_) return samples_.front();
                if (t == S_) return samples_.back();
                return 0.0;
            }
            const double pos = (t + S_) / step_;
            std::size_t k = static_cast<std::size_t>(pos);
            if (k + 1 >= samples_.size()) k = samples_.size() - 2;
            const double s = pos - static_cast<double>(k);
            return samples_[k] + s * (samples_[k + 1] - samples_[k]);
        }
    }
    return 0.0;
}

std::vector<double> WindowSpec::kinks() const {
    switch (kind_) {
        case Kind::hermite:
            return {};
        case Kind::hat:
            return {-S_, 0.0, S_};
        case Kind::sampled_h1: {
            std::vector<double> ks;
            ks.reserve(samples_.size());
            for (std::size_t k = 0; k < samples_.size(); ++k)
                ks.push_back(-S_ + step_ * static_cast<double>(k));
            return ks;
        }
    }
    return {};
}

}  // namespace tfsamp
