#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "tfsamp/errors.hpp"
#include "tfsamp/harness.hpp"
#include "tfsamp/rng.hpp"

using namespace tfsamp;
using cd = std::complex<double>;

namespace {

std::vector<std::vector<cd>> gram_matrix(const WindowSpec& g,
                                         const std::vector<PhasePoint>& points, int K) {
    std::vector<std::vector<cd>> M(K, std::vector<cd>(K, cd(0.0)));
    for (PhasePoint z : points) {
        const std::vector<cd> v = stft_hermite_bank(g, K, z);
        for (int j = 0; j < K; ++j)
            for (int k = 0; k < K; ++k) M[j][k] += v[j] * std::conj(v[k]);
    }
    return M;
}

// Independent eigenvalue oracle: embed the Hermitian K x K matrix M = X + iY
// into the real symmetric 2K x 2K matrix [[X, -Y], [Y, X]] (same spectrum,
// doubled multiplicity) and diagonalize with cyclic Jacobi sweeps.
std::pair<double, double> jacobi_extreme(const std::vector<std::vector<cd>>& M, int K) {
    const int N = 2 * K;
    std::vector<std::vector<double>> B(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            B[i][j] = M[i][j].real();
            B[i][K + j] = -M[i][j].imag();
            B[K + i][j] = M[i][j].imag();
            B[K + i][K + j] = M[i][j].real();
        }
    }
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            const double sym = 0.5 * (B[i][j] + B[j][i]);
            B[i][j] = B[j][i] = sym;
        }

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int p = 0; p < N; ++p) {
            diag = std::max(diag, std::abs(B[p][p]));
            for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(B[p][q]));
        }
        if (off <= 1e-13 * (1.0 + diag)) break;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = B[p][q];
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (B[q][q] - B[p][p]) / (2.0 * apq);
                const double t = theta >= 0.0
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < N; ++k) {
                    const double bkp = B[k][p], bkq = B[k][q];
                    B[k][p] = c * bkp - s * bkq;
                    B[k][q] = s * bkp + c * bkq;
                }
                for (int k = 0; k < N; ++k) {
                    const double bpk = B[p][k], bqk = B[q][k];
                    B[p][k] = c * bpk - s * bqk;
                    B[q][k] = s * bpk + c * bqk;
                }
            }
        }
    }
    double lo = B[0][0], hi = B[0][0];
    for (int p = 1; p < N; ++p) {
        lo = std::min(lo, B[p][p]);
        hi = std::max(hi, B[p][p]);
    }
    return {lo, hi};
}

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.window = WindowSpec::hermite(0);
    cfg.family.K = 2;
    cfg.family.count = 2;
    cfg.family.seed = 77;
    cfg.region_expr = "(all)";
    cfg.declared_gamma = 1.0;
    cfg.R = 1.0;
    cfg.quad.trunc = 4.0;
    cfg.quad.step = 0.125;
    return cfg;
}

}  // namespace

TEST_CASE("stft_hermite_bank matches per-order stft_eval") {
    for (const WindowSpec& g : {WindowSpec::hat(1.0), WindowSpec::hermite(2)}) {
        for (PhasePoint z : {cd(0.0, 0.0), cd(0.3, -0.7), cd(1.1, 0.4)}) {
            const std::vector<cd> bank = stft_hermite_bank(g, 4, z);
            REQUIRE(bank.size() == 4);
            for (int j = 0; j < 4; ++j) {
                std::vector<cd> e(j + 1, cd(0.0));
                e[j] = 1.0;
                const cd direct = stft_eval(Signal::hermite_expansion(e), g, z);
                CHECK(std::abs(bank[j] - direct) < 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(stft_hermite_bank(WindowSpec::hat(1.0), 0, cd(0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(stft_hermite_bank(WindowSpec::hat(1.0), 34, cd(0.0)),
                    std::domain_error);
}

TEST_CASE("gram_extreme_eigenvalues: single point, additivity, scaling") {
    const auto unit =
        gram_extreme_eigenvalues(WindowSpec::hermite(0), {cd(0.0, 0.0)}, 1);
    CHECK(unit.first == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(unit.second == doctest::Approx(1.0).epsilon(1e-9));

    Rng rng(7);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < 12; ++i) pts.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const WindowSpec hat = WindowSpec::hat(1.0);
    const auto base = gram_extreme_eigenvalues(hat, pts, 2);
    CHECK(base.first > 0.0);

    std::vector<PhasePoint> doubled = pts;
    doubled.insert(doubled.end(), pts.begin(), pts.end());
    const auto twice = gram_extreme_eigenvalues(hat, doubled, 2);
    CHECK(twice.first == doctest::Approx(2.0 * base.first).epsilon(1e-7));
    CHECK(twice.second == doctest::Approx(2.0 * base.second).epsilon(1e-7));

    std::vector<double> samples, scaled;
    for (int i = 0; i <= 128; ++i) {
        const double t = -1.0 + i / 64.0;
        samples.push_back(1.0 - std::abs(t));
        scaled.push_back(2.0 * samples.back());
    }
    const auto s1 = gram_extreme_eigenvalues(WindowSpec::sampled_h1(samples, 1.0), pts, 2);
    const auto s2 = gram_extreme_eigenvalues(WindowSpec::sampled_h1(scaled, 1.0), pts, 2);
    CHECK(s2.first == doctest::Approx(4.0 * s1.first).epsilon(1e-6));
    CHECK(s2.second == doctest::Approx(4.0 * s1.second).epsilon(1e-6));

    CHECK_THROWS_AS(gram_extreme_eigenvalues(hat, pts, 0), std::domain_error);
    CHECK_THROWS_AS(gram_extreme_eigenvalues(hat, pts, 34), std::domain_error);
}

TEST_CASE("gram_extreme_eigenvalues agrees with a Jacobi oracle") {
    Rng rng(7);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < 20; ++i)
        pts.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const WindowSpec hat = WindowSpec::hat(1.0);
    const auto fast = gram_extreme_eigenvalues(hat, pts, 4);
    const auto oracle = jacobi_extreme(gram_matrix(hat, pts, 4), 4);
    CHECK(fast.first == doctest::Approx(oracle.first).epsilon(1e-6));
    CHECK(fast.second == doctest::Approx(oracle.second).epsilon(1e-6));
}

TEST_CASE("gram eigenvalues never shrink when points are added") {
    Rng rng(7);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < 20; ++i)
        pts.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const WindowSpec hat = WindowSpec::hat(1.0);
    const std::vector<PhasePoint> first10(pts.begin(), pts.begin() + 10);
    const std::vector<PhasePoint> first15(pts.begin(), pts.begin() + 15);
    const auto a = gram_extreme_eigenvalues(hat, first10, 3);
    const auto b = gram_extreme_eigenvalues(hat, first15, 3);
    const auto c = gram_extreme_eigenvalues(hat, pts, 3);
    CHECK(b.first >= a.first - 1e-8);
    CHECK(c.first >= b.first - 1e-8);
    CHECK(b.second >= a.second - 1e-8);
    CHECK(c.second >= b.second - 1e-8);
}

TEST_CASE("empirical_frame_bounds on a modest jittered lattice") {
    FrameExperiment exp;
    exp.window = WindowSpec::hat(1.0);
    exp.base_step = 0.4;
    exp.jitter = 0.1;
    exp.seed = 3;
    exp.K = 2;
    exp.trunc_x = 6.0;
    exp.trunc_xi = 6.0;
    const FrameBoundsResult res = empirical_frame_bounds(exp);
    CHECK(res.A_theory == doctest::Approx(0.019297534754749338).epsilon(1e-11));
    CHECK(res.B_theory == doctest::Approx(17.30552421056796).epsilon(1e-12));
    // 31^2 lattice sites; boundary sites jittered past the truncation box
    // are dropped (roughly half of the 120 edge sites).
    CHECK(res.points_used >= 870);
    CHECK(res.points_used <= 961);
    CHECK(res.A_emp > 1.0);
    CHECK(res.B_emp >= res.A_emp);
    CHECK(res.tail_correction >= 0.0);
    CHECK(res.tail_correction < 1.0);
    CHECK(res.verdict_A);
    CHECK(res.verdict_B);
}

TEST_CASE("empirical_frame_bounds validates its configuration") {
    FrameExperiment exp;
    exp.window = WindowSpec::hat(1.0);

    exp.base_step = 0.2;
    exp.jitter = 0.1;  // exactly base_step / 2
    CHECK_THROWS_AS(empirical_frame_bounds(exp), std::domain_error);

    exp.jitter = 0.05;
    exp.base_step = 0.0;
    CHECK_THROWS_AS(empirical_frame_bounds(exp), std::domain_error);

    exp.base_step = 0.2;
    exp.K = 0;
    CHECK_THROWS_AS(empirical_frame_bounds(exp), std::domain_error);

    exp.K = 8;
    exp.trunc_x = 5.0;  // h_7 support plus the window no longer fits
    exp.trunc_xi = 40.0;
    CHECK_THROWS_AS(empirical_frame_bounds(exp), capability_error);

    exp.trunc_x = 7.0;
    exp.trunc_xi = -1.0;
    CHECK_THROWS_AS(empirical_frame_bounds(exp), std::domain_error);
}

TEST_CASE("run_sampling_experiment: full plane gives ratio exactly 1") {
    ExperimentConfig cfg = base_config();
    cfg.family.count = 3;
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    REQUIRE(reports.size() == 3);
    const double expected_bound =
        thm_main_bound(0, 1.0, 1.0, 2.0, CalibrationConstants{}).bound.log_value;
    for (const BoundReport& r : reports) {
        CHECK(r.name == "sampling_ratio");
        REQUIRE(r.empirical.has_value());
        CHECK(*r.empirical == 1.0);
        CHECK(r.verdict == BoundReport::Verdict::pass);
        CHECK(r.theoretical.log_value == doctest::Approx(expected_bound).epsilon(1e-14));
        CHECK(r.inputs.at("n") == 0.0);
        CHECK(r.inputs.at("gamma") == 1.0);
        CHECK(r.inputs.at("gamma_measured") == 0.0);
    }
}

TEST_CASE("run_sampling_experiment measures density when gamma is undeclared") {
    ExperimentConfig cfg = base_config();
    cfg.declared_gamma.reset();
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    REQUIRE(!reports.empty());
    CHECK(reports[0].inputs.at("gamma") == 1.0);
    CHECK(reports[0].inputs.at("gamma_measured") == 1.0);
    CHECK(reports[0].inputs.at("raster_error_fraction") == 0.0);
    CHECK(*reports[0].empirical == 1.0);
}

TEST_CASE("run_sampling_experiment: strips region gives finite ratio above 1") {
    ExperimentConfig cfg = base_config();
    cfg.region_expr = "(strips 0.5 1)";
    cfg.declared_gamma = 0.5;
    for (const BoundReport& r : run_sampling_experiment(cfg)) {
        REQUIRE(r.empirical.has_value());
        CHECK(std::isfinite(*r.empirical));
        CHECK(*r.empirical >= 1.0);
        CHECK(r.verdict == BoundReport::Verdict::pass);
    }
}

TEST_CASE("run_sampling_experiment: empty region norm is flagged as infinite") {
    ExperimentConfig cfg = base_config();
    cfg.region_expr = "(disc 30 0 0.5)";
    cfg.declared_gamma = 0.5;
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    for (const BoundReport& r : reports) {
        REQUIRE(r.empirical.has_value());
        CHECK(std::isinf(*r.empirical));
        CHECK(r.verdict == BoundReport::Verdict::fail);
        CHECK(r.inputs.at("omega_norm_zero") == 1.0);
    }

    cfg.declared_gamma.reset();
    CHECK_THROWS_AS(run_sampling_experiment(cfg), std::domain_error);
}

TEST_CASE("run_sampling_experiment: compact windows cover p = 2 only") {
    ExperimentConfig cfg = base_config();
    cfg.window = WindowSpec::hat(1.0);
    cfg.R = 0.4;
    cfg.declared_gamma = 0.5;
    cfg.p = 3.0;
    CHECK_THROWS_AS(run_sampling_experiment(cfg), capability_error);

    cfg.p = 2.0;
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    for (const BoundReport& r : reports) {
        CHECK(r.inputs.at("S") == 1.0);
        CHECK(r.inputs.count("n") == 0);
        CHECK(r.theoretical.linear() ==
              doctest::Approx(planar_sampling_bound(cfg.window, 0.4, 0.5)).epsilon(1e-12));
        CHECK(r.verdict == BoundReport::Verdict::pass);
    }
}

TEST_CASE("run_sampling_experiment input validation") {
    ExperimentConfig cfg = base_config();
    cfg.R = 0.0;
    CHECK_THROWS_AS(run_sampling_experiment(cfg), std::domain_error);
    cfg = base_config();
    cfg.p = 0.5;
    CHECK_THROWS_AS(run_sampling_experiment(cfg), std::domain_error);
    cfg = base_config();
    cfg.declared_gamma = 1.5;
    CHECK_THROWS_AS(run_sampling_experiment(cfg), std::domain_error);
}

TEST_CASE("calibrate_constants: satisfied reports keep C = 1") {
    ExperimentConfig cfg = base_config();
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    const CalibrationConstants cal = calibrate_constants(reports);
    CHECK(cal.C_numerical == 1.0);
}

TEST_CASE("calibrate_constants grows C until a violated bound is covered") {
    BoundReport viol;
    viol.name = "sampling_ratio";
    const double bound_at_one =
        thm_main_bound(0, 1.0, 0.5, 2.0, CalibrationConstants{}).bound.log_value;
    viol.empirical = 2.0 * std::exp(bound_at_one);
    viol.inputs["n"] = 0.0;
    viol.inputs["R"] = 1.0;
    viol.inputs["gamma"] = 0.5;
    viol.inputs["p"] = 2.0;
    const CalibrationConstants cal = calibrate_constants({viol});
    CHECK(cal.C_numerical > 1.0);
    CHECK(cal.C_numerical < 2.0);
    const CalibrationConstants fitted{cal.C_numerical, 1.0, 1.0};
    CHECK(std::log(*viol.empirical) <=
          thm_main_bound(0, 1.0, 0.5, 2.0, fitted).bound.log_value + 1e-9);
}

TEST_CASE("calibrate_constants rejects unusable reports") {
    CHECK_THROWS_AS(calibrate_constants({}), std::domain_error);

    BoundReport missing;
    missing.empirical = 1.5;
    missing.inputs["R"] = 1.0;
    missing.inputs["gamma"] = 0.5;
    missing.inputs["p"] = 2.0;
    CHECK_THROWS_AS(calibrate_constants({missing}), std::domain_error);

    BoundReport infinite;
    infinite.empirical = std::numeric_limits<double>::infinity();
    infinite.inputs["n"] = 0.0;
    infinite.inputs["R"] = 1.0;
    infinite.inputs["gamma"] = 0.5;
    infinite.inputs["p"] = 2.0;
    CHECK_THROWS_AS(calibrate_constants({infinite}), std::domain_error);
}

TEST_CASE("experiments replay bit-exactly, directly and through JSON") {
    ExperimentConfig cfg = base_config();
    cfg.region_expr = "(strips 0.5 1)";
    cfg.declared_gamma = 0.5;
    const std::vector<BoundReport> a = run_sampling_experiment(cfg);
    const std::vector<BoundReport> b = run_sampling_experiment(cfg);
    const std::vector<BoundReport> c = run_sampling_experiment(parse_config(serialize_config(cfg)));
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(*a[i].empirical == *b[i].empirical);
        CHECK(*a[i].empirical == *c[i].empirical);
        CHECK(a[i].theoretical.log_value == c[i].theoretical.log_value);
    }
}

TEST_CASE("make_family is seed-deterministic") {
    SignalFamily fam;
    fam.K = 3;
    fam.count = 2;
    fam.seed = 9001;
    const std::vector<Signal> a = make_family(fam);
    const std::vector<Signal> b = make_family(fam);
    REQUIRE(a.size() == 2);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k)
            CHECK(a[i].coefficients()[k] == b[i].coefficients()[k]);

    fam.seed = 9002;
    const std::vector<Signal> other = make_family(fam);
    CHECK(a[0].coefficients()[0] != other[0].coefficients()[0]);
}

TEST_CASE("config JSON round-trips for every window kind") {
    ExperimentConfig cfg = base_config();
    cfg.window = WindowSpec::hat(1.5);
    CHECK(serialize_config(parse_config(serialize_config(cfg))) == serialize_config(cfg));

    cfg.window = WindowSpec::hermite(3);
    cfg.declared_gamma.reset();
    cfg.output_path = "reports.json";
    CHECK(serialize_config(parse_config(serialize_config(cfg))) == serialize_config(cfg));

    std::vector<double> samples;
    for (int i = 0; i <= 128; ++i) samples.push_back(1.0 - std::abs(-1.0 + i / 64.0));
    cfg.window = WindowSpec::sampled_h1(samples, 1.0);
    const ExperimentConfig back = parse_config(serialize_config(cfg));
    CHECK(serialize_config(back) == serialize_config(cfg));
    CHECK(back.window.samples().size() == samples.size());
}

TEST_CASE("frame config JSON round-trips and replays identically") {
    FrameExperiment exp;
    exp.window = WindowSpec::hat(1.0);
    exp.base_step = 0.4;
    exp.jitter = 0.1;
    exp.seed = 3;
    exp.K = 2;
    exp.trunc_x = 6.0;
    exp.trunc_xi = 6.0;
    CHECK(serialize_frame_config(parse_frame_config(serialize_frame_config(exp))) ==
          serialize_frame_config(exp));
    const FrameBoundsResult r1 = empirical_frame_bounds(exp);
    const FrameBoundsResult r2 =
        empirical_frame_bounds(parse_frame_config(serialize_frame_config(exp)));
    CHECK(r1.A_emp == r2.A_emp);
    CHECK(r1.B_emp == r2.B_emp);
    CHECK(r1.points_used == r2.points_used);
}

TEST_CASE("parse_signal_json covers both signal kinds and bad input") {
    const Signal h = parse_signal_json(
        R"({"kind":"hermite","coefficients":[[3,0],[0,4]]})");
    CHECK(h.kind() == Signal::Kind::hermite_expansion);
    CHECK(h.l2() == doctest::Approx(5.0).epsilon(1e-12));

    std::ostringstream sampled;
    sampled << R"({"kind":"sampled","support_halfwidth":1.0,"values":[)";
    for (int i = 0; i <= 128; ++i) {
        if (i) sampled << ',';
        sampled << '[' << 1.0 - std::abs(-1.0 + i / 64.0) << ",0]";
    }
    sampled << "]}";
    const Signal s = parse_signal_json(sampled.str());
    CHECK(s.kind() == Signal::Kind::sampled);
    CHECK(s.support_halfwidth() == 1.0);
    CHECK(s.l2() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-3));

    CHECK_THROWS_AS(parse_signal_json(R"({"kind":"mystery","coefficients":[[1,0]]})"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_signal_json(R"({"kind":"hermite","coefficients":[[1,0],[2]]})"),
                    std::runtime_error);
}

TEST_CASE("reports survive the JSON round trip, infinities included") {
    ExperimentConfig cfg = base_config();
    cfg.region_expr = "(disc 30 0 0.5)";
    cfg.declared_gamma = 0.5;
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    REQUIRE(!reports.empty());

    const std::vector<BoundReport> wrapped =
        reports_from_json(experiment_reports_json(cfg, reports));
    REQUIRE(wrapped.size() == reports.size());
    CHECK(wrapped[0].name == reports[0].name);
    CHECK(wrapped[0].verdict == reports[0].verdict);
    CHECK(wrapped[0].theoretical.log_value == reports[0].theoretical.log_value);
    CHECK(std::isinf(*wrapped[0].empirical));
    CHECK(wrapped[0].inputs.at("gamma") == reports[0].inputs.at("gamma"));

    const std::vector<BoundReport> bare =
        reports_from_json("[" + report_to_json(reports[0]) + "]");
    REQUIRE(bare.size() == 1);
    CHECK(bare[0].inputs.size() == reports[0].inputs.size());
}

TEST_CASE("reports_csv emits a header plus one row per report") {
    ExperimentConfig cfg = base_config();
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    const std::string csv = reports_csv(reports);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "index,name,empirical,theoretical_log,verdict");
    std::size_t rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == reports.size());
}

TEST_CASE("file-backed signal families feed the experiment loop") {
    const std::string path = "/tmp/tfsamp_test_signal.json";
    write_text_file(path, R"({"kind":"hermite","coefficients":[[1,0],[0.5,0.5]]})");

    SignalFamily fam;
    fam.kind = SignalFamily::Kind::file;
    fam.path = path;
    const std::vector<Signal> sigs = make_family(fam);
    REQUIRE(sigs.size() == 1);
    CHECK(sigs[0].coefficients().size() == 2);

    ExperimentConfig cfg = base_config();
    cfg.family = fam;
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    REQUIRE(reports.size() == 1);
    CHECK(*reports[0].empirical == 1.0);
    std::remove(path.c_str());
}
