#pragma once

#include <vector>

#include "tfsamp/errors.hpp"

namespace tfsamp {

// Hermite window orders above this are rejected: the evaluation recurrence
// and the quadrature budget are validated only up to here.
inline constexpr int kHermiteOrderCap = 16;

// n-th Hermite function, unit L2 norm, h_0(t) = 2^{1/4} e^{-pi t^2}.
// Throws capability_error for n > kHermiteOrderCap.
double hermite_eval(int n, double t);

// d/dt of hermite_eval; analytic form 2 sqrt(pi n) h_{n-1}(t) - 2 pi t h_n(t).
double hermite_deriv_eval(int n, double t);

// Laguerre polynomial L_n(t) by the three-term recurrence
// (k+1) L_{k+1} = (2k+1-t) L_k - k L_{k-1}.
double laguerre_eval(int n, double t);

// nu_n(R) = integral_0^{pi R^2} L_n(t)^2 e^{-t} dt, adaptive quadrature with
// absolute tolerance 1e-12. Strictly increasing in R.
double nu(int n, double R);

// Half-width outside which |h_n| < 1e-16; used to clip quadrature ranges.
double hermite_support_halfwidth(int n);

struct WindowNorms {
    double l2 = 0.0;
    double deriv_l2 = 0.0;            // ||g'||_2
    double t_weighted_l2 = 0.0;       // ||t g||_2
    double t_weighted_deriv_l2 = 0.0; // ||t g'||_2
};

// Analysis window: Hermite h_n, the hat window 1 - |t|/S on [-S, S], or a
// sampled H^1 window given on a uniform grid over [-S, S]. All four norms
// are computed at construction (closed forms for hat, quadrature otherwise).
class WindowSpec {
public:
    enum class Kind { hermite, hat, sampled_h1 };

    static WindowSpec hermite(int n);
    static WindowSpec hat(double S);
    static WindowSpec sampled_h1(std::vector<double> samples, double S);

    Kind kind() const { return kind_; }
    int hermite_order() const;
    double support_halfwidth() const { return S_; }
    bool compactly_supported() const { return kind_ != Kind::hermite; }
    const WindowNorms& norms() const { return norms_; }

    double eval(double t) const;
    // Interior points where eval is not smooth (quadrature panel splits).
    std::vector<double> kinks() const;
    // Uniform sample values over [-S, S]; empty unless kind is sampled_h1.
    const std::vector<double>& samples() const { return samples_; }

private:
    WindowSpec() = default;

    Kind kind_ = Kind::hermite;
    int n_ = 0;
    double S_ = 0.0;   // support half-width (effective for hermite)
    std::vector<double> samples_;
    double step_ = 0.0;
    WindowNorms norms_;
};

inline WindowNorms window_norms(const WindowSpec& w) { return w.norms(); }

namespace detail {

// Uncapped evaluation for signal expansions (coefficients may run past the
// window-order cap; the recurrence itself is stable well beyond it).
double hermite_eval_unchecked(int n, double t);

// Fills out[0..n_max] with h_0(t) .. h_{n_max}(t) in one recurrence pass.
void hermite_bank(int n_max, double t, double* out);

}  // namespace detail

}  // namespace tfsamp
