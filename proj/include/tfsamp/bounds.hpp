#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfsamp/geometry.hpp"
#include "tfsamp/specfun.hpp"

namespace tfsamp {

// Nonnegative quantity carried by its natural log so that constants like
// (n+2)^{(n+2)^2} never overflow; the linear value is emitted only when it
// fits in a double.
struct LogReal {
    double log_value = 0.0;

    static LogReal from_log(double l) { return {l}; }
    static LogReal from_linear(double v) {
        if (v < 0.0) throw std::domain_error("LogReal: negative value");
        return {std::log(v)};
    }
    bool linear_representable() const { return log_value < 709.0; }
    double linear() const { return std::exp(log_value); }
    double log10_value() const { return log_value / std::numbers::ln10; }
};

// Runtime calibration parameters: the main-theorem numerical constant C and
// the two Remez machine constants (none has a published numeric value).
struct CalibrationConstants {
    double C_numerical = 1.0;
    double kappa = 1.0;
    double c_brudnyi = 1.0;
};

struct BoundReport {
    enum class Verdict { pass, fail, informational };

    std::string name;
    LogReal theoretical;
    std::optional<double> empirical;
    std::map<std::string, double> inputs;
    Verdict verdict = Verdict::informational;
    std::string formula;
};

// K(R, n, gamma, m) = c [ ln(gamma/m) + 8 pi R^2 + ln(nu_n(R)^{-1})
//                       + (n+2)^2 ln 4(n+2) ],  c = cal.c_brudnyi.
// Increasing in R once the 8 pi R^2 term dominates (R >~ 0.2); the
// ln(nu^{-1}) term decreases in R.
double K_constant(double R, int n, double gamma_local, double m,
                  const CalibrationConstants& cal);

struct MainBound {
    double sigma = 0.0;  // C (R^2 + ln(nu_n(R)^{-1}) + n^2 ln n + 1)
    LogReal eta;         // (R^2 / nu_n(R)) C^{R^2+1}
    LogReal bound;       // eta (gamma / C)^{-sigma}: ratio bound for every p
};

// n^2 ln n is read as 0 for n in {0, 1}.
MainBound thm_main_bound(int n, double R, double gamma, double p,
                         const CalibrationConstants& cal);

struct SunZhouResult {
    double Delta = 0.0;  // (2R/pi)(||g'|| + ||tg|| + (2R/pi)||tg'||)
    bool condition_met = false;  // Delta < ||g||
    double A_lower = 0.0;        // (||g|| - Delta)^2 when the condition holds
    double B_upper = 0.0;        // (||g|| + Delta)^2
};

SunZhouResult sunzhou_check(const WindowSpec& g, double R);

struct CompactFrameResult {
    double R_g = 0.0;  // min(pi ||g|| / (4 ||g'||), 1/(2S))
    bool admissible = false;  // R < R_g
    double A = 0.0;           // (1/(3R^2)) (||g|| - (4R/pi)||g'||)^2
    double B = 0.0;           // (2/R^2)  (||g|| + (2R/pi)||g'||)^2
};

// Requires a compactly supported window; capability error for Hermite.
CompactFrameResult compact_frame_bounds(const WindowSpec& g, double R);

// Sampling-constant bound ||g||^2 / (A R^2) * gamma^{-1}; for compactly
// supported g this equals (3/gamma)(1 - 4||g'||R/(pi||g||))^{-2}.
double planar_sampling_bound(const WindowSpec& g, double R, double gamma);

// Scans eps over eps_grid, takes gamma(eps) as the square-mode density of
// the level set {|p| >= eps} at scale R, and maximizes
// C(eps) = eps^2 / planar_sampling_bound(g, R, gamma(eps)).
BoundReport heisenberg_bound(const WindowSpec& g, const std::vector<double>& poly_coeffs,
                             double R, const std::vector<double>& eps_grid,
                             double search_halfwidth = 8.0);

}  // namespace tfsamp
