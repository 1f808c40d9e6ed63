#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfsamp/bounds.hpp"
#include "tfsamp/geometry.hpp"
#include "tfsamp/specfun.hpp"
#include "tfsamp/tfcore.hpp"

namespace tfsamp {

// Signal source for sampling-ratio experiments: either `count` random Hermite
// expansions (K standard complex-normal coefficients each, drawn in index
// order from the seeded stream) or a single signal loaded from a JSON file.
struct SignalFamily {
    enum class Kind { random_hermite, file };

    Kind kind = Kind::random_hermite;
    int K = 8;
    int count = 20;
    std::uint64_t seed = 42;
    std::string path;  // file kind only
};

struct QuadratureParams {
    double trunc = 6.0;  // phase-plane truncation half-width T_z
    double step = 1.0 / 16.0;
};

struct ExperimentConfig {
    WindowSpec window = WindowSpec::hat(1.0);
    SignalFamily family;
    std::string region_expr = "(all)";
    // Density of the region at scale R. Measured when not declared: disc
    // cells for Hermite windows, square cells for compact ones, reduced by
    // the raster error fraction.
    std::optional<double> declared_gamma;
    double R = 1.0;
    double p = 2.0;
    QuadratureParams quad;
    CalibrationConstants cal;
    double tol = 0.05;
    std::string output_path;  // optional
};

// One report per signal: empirical = lp_norm(grid, p) / lp_norm(grid, p, region),
// theoretical = the applicable ratio bound (Hermite window: main-theorem bound
// with cfg.cal; compact window: planar sampling bound, p = 2 only). A zero
// region norm against a nonzero total is reported as an infinite ratio and
// flagged in inputs.
std::vector<BoundReport> run_sampling_experiment(const ExperimentConfig& cfg);

// Jittered-lattice frame experiment on the Hermite subspace span{h_0..h_{K-1}}.
struct FrameExperiment {
    WindowSpec window = WindowSpec::hat(1.0);
    double base_step = 0.2;
    double jitter = 0.05;  // must stay below base_step / 2
    std::uint64_t seed = 1;
    int K = 8;
    double trunc_x = 7.0;
    double trunc_xi = 40.0;
    double tol = 0.05;
};

struct FrameBoundsResult {
    double A_emp = 0.0;
    double B_emp = 0.0;
    double A_theory = 0.0;  // NaN when no lower bound applies
    double B_theory = 0.0;
    // Estimated Gram mass of the discarded |xi| > trunc_xi points, added to
    // B_emp before the B verdict; extrapolated from the outer frequency ring.
    double tail_correction = 0.0;
    std::size_t points_used = 0;
    bool verdict_A = false;
    bool verdict_B = false;
};

FrameBoundsResult empirical_frame_bounds(const FrameExperiment& exp);

// (V_g h_0(z), ..., V_g h_{K-1}(z)) in one shared quadrature pass.
std::vector<std::complex<double>> stft_hermite_bank(const WindowSpec& g, int K,
                                                    PhasePoint z);

// (lambda_min, lambda_max) of M_{jk} = sum_z V_g h_j(z) conj(V_g h_k(z)),
// by inverse-power and power iteration to 1e-8 relative tolerance.
std::pair<double, double> gram_extreme_eigenvalues(const WindowSpec& g,
                                                   const std::vector<PhasePoint>& points,
                                                   int K);

// Minimal C >= 1 (bisection to 1e-3) making every report's ratio satisfy the
// main-theorem bound re-evaluated at that C; reports must carry Hermite-window
// inputs (n, R, gamma, p). Descriptive: an empirical lower bound on any valid C.
CalibrationConstants calibrate_constants(const std::vector<BoundReport>& reports);

// JSON plumbing. Serialized configs round-trip exactly (shortest
// round-trip double formatting), which is what makes replay bit-exact.
std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_frame_config(const FrameExperiment& exp);
FrameExperiment parse_frame_config(const std::string& json_text);

// {"kind":"hermite","coefficients":[[re,im],...]} or
// {"kind":"sampled","support_halfwidth":T,"values":[[re,im],...]}.
Signal parse_signal_json(const std::string& json_text);

std::vector<Signal> make_family(const SignalFamily& family);

std::string report_to_json(const BoundReport& report);
// Reads back the reports from an experiment_reports_json document (or a bare
// JSON array of report objects).
std::vector<BoundReport> reports_from_json(const std::string& json_text);
// {"config": ..., "reports": [...]} as an indented JSON document.
std::string experiment_reports_json(const ExperimentConfig& cfg,
                                    const std::vector<BoundReport>& reports);
std::string frame_result_json(const FrameExperiment& exp, const FrameBoundsResult& res);
// One row per report: index, empirical, bound log, verdict.
std::string reports_csv(const std::vector<BoundReport>& reports);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tfsamp
