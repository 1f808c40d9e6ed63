#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace tfsamp {

// Nodes ascending on [-1, 1]; weights sum to 2.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point rule, computed once per n and cached.
const GaussLegendreRule& gauss_legendre(int n);

namespace detail {

template <class F>
double gl_panel(F&& f, double a, double b, const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

template <class F>
double adaptive_rec(F&& f, double a, double b, double tol, double whole,
                    const GaussLegendreRule& rule, int& panels_left, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(f, a, mid, rule);
    const double right = gl_panel(f, mid, b, rule);
    const double split = left + right;
    if (std::abs(split - whole) <= tol || panels_left <= 0 || depth >= 48)
        return split;
    panels_left -= 2;
    return adaptive_rec(f, a, mid, 0.5 * tol, left, rule, panels_left, depth + 1) +
           adaptive_rec(f, mid, b, 0.5 * tol, right, rule, panels_left, depth + 1);
}

}  // namespace detail

// Fixed n-point Gauss-Legendre integral of f over [a, b].
template <class F>
double gl_integrate(F&& f, double a, double b, int n) {
    return detail::gl_panel(f, a, b, gauss_legendre(n));
}

// Adaptive bisection to absolute tolerance tol, at most max_panels leaf
// panels; each panel uses a 16-point rule.
template <class F>
double adaptive_integrate(F&& f, double a, double b, double tol = 1e-12,
                          int max_panels = 1 << 14) {
    const GaussLegendreRule& rule = gauss_legendre(16);
    int panels_left = max_panels;
    const double whole = detail::gl_panel(f, a, b, rule);
    return detail::adaptive_rec(f, a, b, tol, whole, rule, panels_left, 0);
}

// Panel subdivision of [a, b] into pieces of length at most max_len, with
// mandatory splits at the given interior breakpoints (quadrature must not
// straddle an integrand kink).
std::vector<std::pair<double, double>> split_panels(
    double a, double b, double max_len, const std::vector<double>& breakpoints);

}  // namespace tfsamp
