#include "tfsamp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tfsamp {

namespace {
constexpr double kPi = std::numbers::pi;
}

double K_constant(double R, int n, double gamma_local, double m,
                  const CalibrationConstants& cal) {
    if (!(R > 0.0)) throw std::domain_error("K_constant: R must be positive");
    if (n < 0) throw std::domain_error("K_constant: order must be nonnegative");
    if (!(m > 0.0)) throw std::domain_error("K_constant: m must be positive");
    if (!(gamma_local > 0.0)) throw std::domain_error("K_constant: gamma must be positive");
    const double terms = std::log(gamma_local / m) + 8.0 * kPi * R * R -
                         std::log(nu(n, R)) +
                         (n + 2.0) * (n + 2.0) * std::log(4.0 * (n + 2.0));
    return cal.c_brudnyi * terms;
}

MainBound thm_main_bound(int n, double R, double gamma, double p,
                         const CalibrationConstants& cal) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::domain_error("thm_main_bound: gamma must be in (0, 1]");
    if (!(R > 0.0)) throw std::domain_error("thm_main_bound: R must be positive");
    if (n < 0) throw std::domain_error("thm_main_bound: order must be nonnegative");
    if (!(p >= 1.0)) throw std::domain_error("thm_main_bound: p must be >= 1");
    const double C = cal.C_numerical;
    if (!(C > 0.0)) throw std::domain_error("thm_main_bound: C must be positive");
    const double nu_n = nu(n, R);
    const double n2logn = n <= 1 ? 0.0 : n * n * std::log(static_cast<double>(n));
    MainBound out;
    out.sigma = C * (R * R - std::log(nu_n) + n2logn + 1.0);
    out.eta = LogReal::from_log(std::log(R * R / nu_n) + (R * R + 1.0) * std::log(C));
    out.bound =
        LogReal::from_log(out.eta.log_value - out.sigma * (std::log(gamma) - std::log(C)));
    return out;
}

SunZhouResult sunzhou_check(const WindowSpec& g, double R) {
    if (!(R > 0.0)) throw std::domain_error("sunzhou_check: R must be positive");
    const WindowNorms& n = g.norms();
    const double s = 2.0 * R / kPi;
    SunZhouResult out;
    out.Delta = s * (n.deriv_l2 + n.t_weighted_l2 + s * n.t_weighted_deriv_l2);
    out.condition_met = out.Delta < n.l2;
    out.A_lower = out.condition_met ? (n.l2 - out.Delta) * (n.l2 - out.Delta) : 0.0;
    out.B_upper = (n.l2 + out.Delta) * (n.l2 + out.Delta);
    return out;
}

CompactFrameResult compact_frame_bounds(const WindowSpec& g, double R) {
    if (!g.compactly_supported())
        throw capability_error("compact_frame_bounds: window must be compactly supported");
    if (!(R > 0.0)) throw std::domain_error("compact_frame_bounds: R must be positive");
    const WindowNorms& n = g.norms();
    const double S = g.support_halfwidth();
    CompactFrameResult out;
    out.R_g = std::min(kPi * n.l2 / (4.0 * n.deriv_l2), 1.0 / (2.0 * S));
    out.admissible = R < out.R_g;
    const double lower_root = n.l2 - (4.0 * R / kPi) * n.deriv_l2;
    const double upper_root = n.l2 + (2.0 * R / kPi) * n.deriv_l2;
    out.A = out.admissible ? lower_root * lower_root / (3.0 * R * R)
                           : std::numeric_limits<double>::quiet_NaN();
    out.B = 2.0 * upper_root * upper_root / (R * R);
    return out;
}

double planar_sampling_bound(const WindowSpec& g, double R, double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::domain_error("planar_sampling_bound: gamma must be in (0, 1]");
    const CompactFrameResult cf = compact_frame_bounds(g, R);
    if (!cf.admissible)
        throw std::domain_error("planar_sampling_bound: R is not admissible (R >= R_g)");
    const double l2 = g.norms().l2;
    return l2 * l2 / (cf.A * R * R) / gamma;
}

BoundReport heisenberg_bound(const WindowSpec& g, const std::vector<double>& poly_coeffs,
                             double R, const std::vector<double>& eps_grid,
                             double search_halfwidth) {
    bool nonzero = false;
    for (double c : poly_coeffs)
        if (c != 0.0) nonzero = true;
    if (!nonzero) throw std::domain_error("heisenberg_bound: zero polynomial");
    const CompactFrameResult cf = compact_frame_bounds(g, R);
    if (!cf.admissible)
        throw std::domain_error("heisenberg_bound: R is not admissible (R >= R_g)");

    BoundReport rep;
    rep.name = "heisenberg";
    rep.formula = "C = max_eps eps^2 / planar_sampling_bound(g, R, gamma(eps))";
    rep.inputs["R"] = R;
    double best_c = 0.0, best_eps = 0.0, best_gamma = 0.0;
    for (double eps : eps_grid) {
        if (!(eps > 0.0)) continue;
        const Region level = Region::levelset(poly_coeffs, eps);
        DensityQuery q;
        q.R = R;
        q.mode = CellMode::square;
        q.search_halfwidth = search_halfwidth;
        const DensityResult d = density_gamma(level, q);
        if (!(d.gamma > 0.0)) continue;
        const double gamma = std::min(d.gamma, 1.0);
        const double candidate = eps * eps / planar_sampling_bound(g, R, gamma);
        if (candidate > best_c) {
            best_c = candidate;
            best_eps = eps;
            best_gamma = gamma;
        }
    }
    rep.theoretical = LogReal::from_linear(best_c);
    rep.inputs["best_eps"] = best_eps;
    rep.inputs["gamma_at_best_eps"] = best_gamma;
    rep.verdict = BoundReport::Verdict::informational;
    return rep;
}

}  // namespace tfsamp
