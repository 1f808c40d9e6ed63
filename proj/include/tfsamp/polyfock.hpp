#pragma once

#include <complex>
#include <vector>

#include "tfsamp/bounds.hpp"
#include "tfsamp/geometry.hpp"
#include "tfsamp/tfcore.hpp"

namespace tfsamp {

// Polyanalytic function F(z) = sum_k F_k(z) conj(z)^k with holomorphic
// polynomial components F_k given as ascending-degree coefficient lists.
struct PolyFunction {
    std::vector<std::vector<std::complex<double>>> components;

    // Index of the last nonzero component; -1 when all components vanish.
    int order() const;
};

// Reduced form F(z) = sum_k H_k(z) |z|^{2k}.
struct ReducedPolyFunction {
    std::vector<std::vector<std::complex<double>>> components;
};

struct WeightedNormSpec {
    double p = 2.0;  // weight e^{-pi p |z|^2 / 2} on |F|^p
};

// Weighted, conjugated STFT with window h_n:
//   V_{h_n} f(conj z) e^{pi (z^2 - conj(z)^2)/4} e^{pi |z|^2 / 2}.
// |z| > 8 is rejected (weight range budget).
std::complex<double> bargmann_transform(const Signal& f, int n, std::complex<double> z);

std::complex<double> poly_eval(const PolyFunction& F, std::complex<double> z);
std::complex<double> reduced_poly_eval(const ReducedPolyFunction& F,
                                       std::complex<double> z);

// Holomorphic extension Phi(F)(z1, z2) = sum_k F_k(z1 + i z2)(z1 - i z2)^k;
// restricts to F on real (z1, z2) = (x, y).
std::complex<double> phi_extension_eval(const PolyFunction& F, std::complex<double> z1,
                                        std::complex<double> z2);

// D_n = (2 lambda / (lambda - 1))^{n+2} (n+2)^{(n+2)^2}, lambda > 1.
LogReal balk_Dn(int n, double lambda);

// Checks, on dense polar samples, the component bounds
//   sup_{D(0,R)} |F_k(z) z^k| <= D_n M          for every k, and
//   sup_{D(0,(1+lambda)R/2)} |z^n F_n(z)| <= M (2 lambda (n+2)/(lambda-1))^{n+2},
// with M = sup_{D(0, lambda R)} |F|. Log-domain comparison.
BoundReport component_bound_check(const PolyFunction& F, double R, double lambda,
                                  int radial_samples = 256, int angular_samples = 256);

// Evaluates the circle-family Cauchy formula
//   (1/2 pi i) sum_k P_k(|z|^2) contour_int_{|t|=R_k} F(t)/(t - z) dt,
//   P_k(t) = prod_{j != k} (R_j^2 - t)/(R_j^2 - R_k^2),
// with trapezoidal contour quadrature; reproduces F(z) for |z| < R_0.
std::complex<double> reduced_cauchy_eval(const ReducedPolyFunction& F,
                                         const std::vector<double>& radii,
                                         std::complex<double> z, int contour_nodes = 2048);

// (integral over region ∩ D(0,trunc) of |F|^p e^{-pi p |z|^2/2})^{1/p},
// midpoint grid quadrature at the given step (default trunc/256).
double weighted_lp_norm(const PolyFunction& F, const WeightedNormSpec& spec,
                        double trunc, double grid_step = 0.0);
double weighted_lp_norm(const PolyFunction& F, const WeightedNormSpec& spec,
                        const Region& region, double trunc, double grid_step = 0.0);

// Remez ratio report: with m = |F(0)|, M = inflated sampled sup over D(0,4R),
// checks sup_{D(0,rho)} |F| against
//   (kappa |D(0,rho)| / |Omega|)^{c [ln(M/m) + (n+2)^2 ln 4(n+2)]} sup_Omega |F|
// and reports the effective exponent
//   c_hat = ln(sup_{D(0,rho)}|F| / sup_Omega|F|) / ln(kappa |D(0,rho)| / |Omega|)
// when the denominator is positive. Region must lie inside D(0,R), rho <= R.
BoundReport remez_ratio(const PolyFunction& F, const Region& region, double rho,
                        double R, double kappa = 1.0, double c = 1.0);

}  // namespace tfsamp
