#include "tfsamp/tfcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "tfsamp/quadrature.hpp"

namespace tfsamp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Signal Signal::hermite_expansion(std::vector<std::complex<double>> coeffs) {
    if (coeffs.empty() || coeffs.size() > 33)
        throw std::domain_error("hermite expansion: need 1..33 coefficients");
    bool nonzero = false;
    for (const auto& a : coeffs)
        if (a != std::complex<double>(0.0)) nonzero = true;
    if (!nonzero) throw std::domain_error("hermite expansion: all coefficients zero");
    Signal s;
    s.kind_ = Kind::hermite_expansion;
    s.T_ = hermite_support_halfwidth(static_cast<int>(coeffs.size()) - 1);
    double sq = 0.0;
    for (const auto& a : coeffs) sq += std::norm(a);
    s.l2_ = std::sqrt(sq);
    s.coeffs_ = std::move(coeffs);
    return s;
}

Signal Signal::sampled(std::vector<std::complex<double>> values, double T) {
    if (!(T > 0.0)) throw std::domain_error("sampled signal: support must be positive");
    if (values.size() < 129)
        throw std::domain_error("sampled signal: step must be at most T/64 (need >= 129 samples)");
    bool nonzero = false;
    for (const auto& v : values)
        if (v != std::complex<double>(0.0)) nonzero = true;
    if (!nonzero) throw std::domain_error("sampled signal: all samples zero");
    Signal s;
    s.kind_ = Kind::sampled;
    s.T_ = T;
    s.step_ = 2.0 * T / static_cast<double>(values.size() - 1);
    s.values_ = std::move(values);

    // Exact L2 norm of the linear interpolant: 3-point Gauss per interval.
    const GaussLegendreRule& rule = gauss_legendre(3);
    double sq = 0.0;
    for (std::size_t k = 0; k + 1 < s.values_.size(); ++k) {
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = 0.5 * (rule.nodes[i] + 1.0);
            const std::complex<double> v = s.values_[k] + u * (s.values_[k + 1] - s.values_[k]);
            sq += 0.5 * s.step_ * rule.weights[i] * std::norm(v);
        }
    }
    s.l2_ = std::sqrt(sq);
    return s;
}

const std::vector<std::complex<double>>& Signal::coefficients() const {
    if (kind_ != Kind::hermite_expansion)
        throw std::logic_error("coefficients: signal is not a hermite expansion");
    return coeffs_;
}

std::complex<double> Signal::eval(double t) const {
    if (kind_ == Kind::hermite_expansion) {
        double bank[33];
        const int K = static_cast<int>(coeffs_.size()) - 1;
        detail::hermite_bank(K, t, bank);
        std::complex<double> sum = 0.0;
        for (int k = 0; k <= K; ++k) sum += coeffs_[k] * bank[k];
        return sum;
    }
    if (t <= -T_ || t >= T_) {
        if (t == -T_) return values_.front();
        if (t == T_) return values_.back();
        return 0.0;
    }
    const double pos = (t + T_) / step_;
    std::size_t k = static_cast<std::size_t>(pos);
    if (k + 1 >= values_.size()) k = values_.size() - 2;
    const double u = pos - static_cast<double>(k);
    return values_[k] + u * (values_[k + 1] - values_[k]);
}

std::vector<double> Signal::kinks() const {
    if (kind_ == Kind::hermite_expansion) return {};
    std::vector<double> ks;
    ks.reserve(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k)
        ks.push_back(-T_ + step_ * static_cast<double>(k));
    return ks;
}

namespace {

struct QuadNodes {
    std::vector<double> t;
    std::vector<double> w;
};

// Composite 16-point panels over [lo, hi], split at integrand kinks, panel
// length at most min(1, 4 / max(1, xi_mag)): at most ~4 pi radians of
// oscillation phase per panel.
QuadNodes build_nodes(double lo, double hi, double xi_mag,
                      const std::vector<double>& breakpoints) {
    QuadNodes out;
    if (!(hi > lo)) return out;
    const double max_len = std::min(1.0, 4.0 / std::max(1.0, std::abs(xi_mag)));
    const auto panels = split_panels(lo, hi, max_len, breakpoints);
    const GaussLegendreRule& rule = gauss_legendre(16);
    out.t.reserve(panels.size() * rule.nodes.size());
    out.w.reserve(panels.size() * rule.nodes.size());
    for (const auto& [a, b] : panels) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            out.t.push_back(mid + half * rule.nodes[i]);
            out.w.push_back(half * rule.weights[i]);
        }
    }
    return out;
}

// Effective integration range and kink list for f(t) g(t - x).
struct IntegrandSupport {
    double lo = 0.0, hi = 0.0;
    std::vector<double> breakpoints;
    bool empty = true;
};

IntegrandSupport integrand_support(const Signal& f, const WindowSpec& g, double x) {
    IntegrandSupport s;
    s.lo = std::max(-f.support_halfwidth(), x - g.support_halfwidth());
    s.hi = std::min(f.support_halfwidth(), x + g.support_halfwidth());
    if (!(s.hi > s.lo)) return s;
    s.empty = false;
    for (double k : f.kinks()) s.breakpoints.push_back(k);
    for (double k : g.kinks()) s.breakpoints.push_back(k + x);
    return s;
}

}  // namespace

std::complex<double> stft_eval(const Signal& f, const WindowSpec& g, PhasePoint z) {
    const double x = z.real(), xi = z.imag();
    const IntegrandSupport sup = integrand_support(f, g, x);
    if (sup.empty) return 0.0;
    const QuadNodes nodes = build_nodes(sup.lo, sup.hi, xi, sup.breakpoints);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < nodes.t.size(); ++i) {
        const double t = nodes.t[i];
        const double phase = -kTwoPi * xi * t;
        sum += nodes.w[i] * f.eval(t) * g.eval(t - x) *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

STFTGrid stft_grid(const Signal& f, const WindowSpec& g, double T_z, double step) {
    if (!(T_z > 0.0) || !(step > 0.0))
        throw std::domain_error("stft_grid: T_z and step must be positive");
    const double ratio = 2.0 * T_z / step;
    const long long n = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
        throw std::domain_error("stft_grid: step must divide 2*T_z");
    STFTGrid grid;
    grid.T_z = T_z;
    grid.step = step;
    grid.npts = static_cast<int>(n) + 1;
    grid.values.assign(static_cast<std::size_t>(grid.npts) * grid.npts, 0.0);

    // Column fill at fixed x: shared nodes sized for the worst |xi| in the
    // column, the per-node phase advanced by one multiplication per xi step.
    std::vector<std::complex<double>> base, phase, delta;
    for (int ix = 0; ix < grid.npts; ++ix) {
        const double x = grid.coord(ix);
        const IntegrandSupport sup = integrand_support(f, g, x);
        if (sup.empty) continue;
        const QuadNodes nodes = build_nodes(sup.lo, sup.hi, T_z, sup.breakpoints);
        const std::size_t m = nodes.t.size();
        base.assign(m, 0.0);
        phase.assign(m, 0.0);
        delta.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double t = nodes.t[i];
            base[i] = nodes.w[i] * f.eval(t) * g.eval(t - x);
            const double p0 = kTwoPi * T_z * t;  // xi starts at -T_z
            phase[i] = {std::cos(p0), std::sin(p0)};
            const double dp = -kTwoPi * step * t;
            delta[i] = {std::cos(dp), std::sin(dp)};
        }
        std::complex<double>* column = grid.values.data() +
                                       static_cast<std::size_t>(ix) * grid.npts;
        for (int ixi = 0; ixi < grid.npts; ++ixi) {
            std::complex<double> sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                sum += base[i] * phase[i];
                phase[i] *= delta[i];
            }
            column[ixi] = sum;
        }
    }
    return grid;
}

std::complex<double> reproducing_kernel(int n, PhasePoint z, PhasePoint w) {
    if (n < 0) throw std::domain_error("reproducing_kernel: order must be nonnegative");
    if (n > kHermiteOrderCap)
        throw capability_error("reproducing_kernel: order exceeds validated cap 16");
    const double x = z.real(), xi = z.imag();
    const double u = w.real(), nv = w.imag();
    const double S = hermite_support_halfwidth(n);
    const double lo = std::max(u - S, x - S), hi = std::min(u + S, x + S);
    if (!(hi > lo)) return 0.0;
    const QuadNodes nodes = build_nodes(lo, hi, nv - xi, {});
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < nodes.t.size(); ++i) {
        const double t = nodes.t[i];
        const double phase = kTwoPi * (nv - xi) * t;
        sum += nodes.w[i] * detail::hermite_eval_unchecked(n, t - u) *
               detail::hermite_eval_unchecked(n, t - x) *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

std::complex<double> reproducing_kernel_closed(int n, PhasePoint z, PhasePoint w) {
    if (n < 0) throw std::domain_error("reproducing_kernel: order must be nonnegative");
    if (n > kHermiteOrderCap)
        throw capability_error("reproducing_kernel: order exceeds validated cap 16");
    const double x = z.real(), xi = z.imag();
    const double u = w.real(), nv = w.imag();
    const double d2 = std::norm(z - w);
    const double phase = -kTwoPi * (xi - nv) * u - kPi * (x - u) * (xi - nv);
    const double mag = laguerre_eval(n, kPi * d2) * std::exp(-0.5 * kPi * d2);
    return mag * std::complex<double>(std::cos(phase), std::sin(phase));
}

namespace {

double lp_norm_impl(const STFTGrid& grid, double p, const Region* region) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::domain_error("lp_norm: p must satisfy 1 <= p < infinity");
    const double cell = grid.step * grid.step;
    double sum = 0.0;
    for (int ix = 0; ix < grid.npts; ++ix) {
        const double x = grid.coord(ix);
        for (int ixi = 0; ixi < grid.npts; ++ixi) {
            if (region && !region->contains({x, grid.coord(ixi)})) continue;
            sum += std::pow(std::abs(grid.at(ix, ixi)), p) * cell;
        }
    }
    return std::pow(sum, 1.0 / p);
}

}  // namespace

double lp_norm(const STFTGrid& grid, double p) { return lp_norm_impl(grid, p, nullptr); }

double lp_norm(const STFTGrid& grid, double p, const Region& region) {
    return lp_norm_impl(grid, p, &region);
}

double local_repr_residual(const Signal& f, int n, double R, PhasePoint z,
                           int radial_nodes, int angular_nodes) {
    if (!(R > 0.0)) throw std::domain_error("local_repr_residual: R must be positive");
    if (radial_nodes < 1 || angular_nodes < 1)
        throw std::domain_error("local_repr_residual: node counts must be positive");
    const WindowSpec window = WindowSpec::hermite(n);
    const std::complex<double> at_z = stft_eval(f, window, z);

    const GaussLegendreRule& radial = gauss_legendre(radial_nodes);
    const double dtheta = kTwoPi / angular_nodes;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
        const double r = 0.5 * R * (radial.nodes[i] + 1.0);
        const double wr = 0.5 * R * radial.weights[i] * r * dtheta;
        for (int k = 0; k < angular_nodes; ++k) {
            const double theta = dtheta * k;
            const PhasePoint w = z + std::polar(r, theta);
            acc += wr * stft_eval(f, window, w) * reproducing_kernel_closed(n, z, w);
        }
    }
    return std::abs(at_z - acc / nu(n, R));
}

void write_grid_csv(const STFTGrid& grid, std::ostream& out) {
    out << "x,xi,re,im\n";
    out.precision(17);
    for (int ix = 0; ix < grid.npts; ++ix) {
        for (int ixi = 0; ixi < grid.npts; ++ixi) {
            const std::complex<double> v = grid.at(ix, ixi);
            out << grid.coord(ix) << "," << grid.coord(ixi) << "," << v.real() << ","
                << v.imag() << "\n";
        }
    }
}

}  // namespace tfsamp
