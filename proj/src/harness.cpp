#include "tfsamp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "tfsamp/errors.hpp"
#include "tfsamp/quadrature.hpp"
#include "tfsamp/rng.hpp"

namespace tfsamp {

namespace {

using cd = std::complex<double>;
using json = nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---- small dense Hermitian eigen helpers (K <= 33) ----------------------

void matvec(int K, const std::vector<cd>& M, const std::vector<cd>& v,
            std::vector<cd>& y) {
    for (int j = 0; j < K; ++j) {
        cd acc = 0.0;
        for (int k = 0; k < K; ++k) acc += M[j * K + k] * v[k];
        y[j] = acc;
    }
}

double norm2(const std::vector<cd>& v) {
    double s = 0.0;
    for (const cd& c : v) s += std::norm(c);
    return std::sqrt(s);
}

// Re <v, y>; the Rayleigh quotient of a Hermitian matrix is real.
double rayleigh(const std::vector<cd>& v, const std::vector<cd>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += v[i].real() * y[i].real() + v[i].imag() * y[i].imag();
    return s;
}

std::vector<cd> start_vector(int K) {
    std::vector<cd> v(K);
    for (int j = 0; j < K; ++j) v[j] = 1.0 + 0.01 * (j + 1);
    const double n = norm2(v);
    for (cd& c : v) c /= n;
    return v;
}

// Largest eigenvalue by power iteration; stops when || M v - lambda v ||
// <= 1e-8 max(1, lambda).
double power_max_eig(int K, const std::vector<cd>& M) {
    std::vector<cd> v = start_vector(K), y(K);
    double lam = 0.0;
    for (int it = 0; it < 200000; ++it) {
        matvec(K, M, v, y);
        const double ny = norm2(y);
        if (ny == 0.0) return 0.0;
        lam = rayleigh(v, y);
        const double res2 = ny * ny - lam * lam;
        if (std::sqrt(std::max(0.0, res2)) <= 1e-8 * std::max(1.0, std::abs(lam)))
            break;
        for (int j = 0; j < K; ++j) v[j] = y[j] / ny;
    }
    return lam;
}

struct LuFactors {
    int K = 0;
    std::vector<cd> a;      // packed L\U
    std::vector<int> piv;
    bool singular = false;
};

LuFactors lu_factor(int K, std::vector<cd> a) {
    LuFactors f;
    f.K = K;
    f.piv.resize(K);
    double scale = 0.0;
    for (const cd& c : a) scale = std::max(scale, std::abs(c));
    const double tiny = std::max(scale, 1.0) * 1e-14 * K;
    for (int k = 0; k < K; ++k) {
        int p = k;
        for (int i = k + 1; i < K; ++i)
            if (std::abs(a[i * K + k]) > std::abs(a[p * K + k])) p = i;
        if (std::abs(a[p * K + k]) < tiny) {
            f.singular = true;
            return f;
        }
        f.piv[k] = p;
        if (p != k)
            for (int j = 0; j < K; ++j) std::swap(a[k * K + j], a[p * K + j]);
        for (int i = k + 1; i < K; ++i) {
            const cd l = a[i * K + k] / a[k * K + k];
            a[i * K + k] = l;
            for (int j = k + 1; j < K; ++j) a[i * K + j] -= l * a[k * K + j];
        }
    }
    f.a = std::move(a);
    return f;
}

std::vector<cd> lu_solve(const LuFactors& f, std::vector<cd> b) {
    const int K = f.K;
    for (int k = 0; k < K; ++k) {
        std::swap(b[k], b[f.piv[k]]);
        for (int i = k + 1; i < K; ++i) b[i] -= f.a[i * K + k] * b[k];
    }
    for (int i = K - 1; i >= 0; --i) {
        for (int j = i + 1; j < K; ++j) b[i] -= f.a[i * K + j] * b[j];
        b[i] /= f.a[i * K + i];
    }
    return b;
}

// Smallest eigenvalue by inverse-power iteration; 0 when the matrix is
// numerically singular.
double inverse_power_min_eig(int K, const std::vector<cd>& M) {
    const LuFactors f = lu_factor(K, M);
    if (f.singular) return 0.0;
    std::vector<cd> v = start_vector(K), y(K);
    double lam = 0.0;
    for (int it = 0; it < 200000; ++it) {
        std::vector<cd> w = lu_solve(f, v);
        const double nw = norm2(w);
        if (nw == 0.0) return 0.0;
        for (int j = 0; j < K; ++j) v[j] = w[j] / nw;
        matvec(K, M, v, y);
        lam = rayleigh(v, y);
        const double ny = norm2(y);
        const double res2 = ny * ny - lam * lam;
        if (std::sqrt(std::max(0.0, res2)) <= 1e-8 * std::max(1.0, std::abs(lam)))
            break;
    }
    return lam;
}

// ---- JSON helpers --------------------------------------------------------

json window_to_json(const WindowSpec& w) {
    json j;
    switch (w.kind()) {
        case WindowSpec::Kind::hermite:
            j["kind"] = "hermite";
            j["n"] = w.hermite_order();
            break;
        case WindowSpec::Kind::hat:
            j["kind"] = "hat";
            j["S"] = w.support_halfwidth();
            break;
        case WindowSpec::Kind::sampled_h1:
            j["kind"] = "sampled_h1";
            j["support_halfwidth"] = w.support_halfwidth();
            j["values"] = w.samples();
            break;
    }
    return j;
}

WindowSpec window_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hermite") return WindowSpec::hermite(j.at("n").get<int>());
    if (kind == "hat") return WindowSpec::hat(j.at("S").get<double>());
    if (kind == "sampled_h1")
        return WindowSpec::sampled_h1(j.at("values").get<std::vector<double>>(),
                                      j.at("support_halfwidth").get<double>());
    throw std::runtime_error("window: unknown kind '" + kind + "'");
}

json family_to_json(const SignalFamily& fam) {
    json j;
    if (fam.kind == SignalFamily::Kind::random_hermite) {
        j["kind"] = "random_hermite";
        j["K"] = fam.K;
        j["count"] = fam.count;
        j["seed"] = fam.seed;
    } else {
        j["kind"] = "file";
        j["path"] = fam.path;
    }
    return j;
}

SignalFamily family_from_json(const json& j) {
    SignalFamily fam;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "random_hermite") {
        fam.kind = SignalFamily::Kind::random_hermite;
        fam.K = j.at("K").get<int>();
        fam.count = j.at("count").get<int>();
        fam.seed = j.at("seed").get<std::uint64_t>();
    } else if (kind == "file") {
        fam.kind = SignalFamily::Kind::file;
        fam.path = j.at("path").get<std::string>();
    } else {
        throw std::runtime_error("family: unknown kind '" + kind + "'");
    }
    return fam;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["window"] = window_to_json(cfg.window);
    j["family"] = family_to_json(cfg.family);
    j["region"] = cfg.region_expr;
    if (cfg.declared_gamma) j["declared_gamma"] = *cfg.declared_gamma;
    j["R"] = cfg.R;
    j["p"] = cfg.p;
    j["quad"] = {{"trunc", cfg.quad.trunc}, {"step", cfg.quad.step}};
    j["calibration"] = {{"C", cfg.cal.C_numerical},
                        {"kappa", cfg.cal.kappa},
                        {"c", cfg.cal.c_brudnyi}};
    j["tol"] = cfg.tol;
    if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.window = window_from_json(j.at("window"));
    cfg.family = family_from_json(j.at("family"));
    cfg.region_expr = j.at("region").get<std::string>();
    if (j.contains("declared_gamma"))
        cfg.declared_gamma = j.at("declared_gamma").get<double>();
    cfg.R = j.at("R").get<double>();
    cfg.p = j.value("p", 2.0);
    if (j.contains("quad")) {
        cfg.quad.trunc = j.at("quad").at("trunc").get<double>();
        cfg.quad.step = j.at("quad").at("step").get<double>();
    }
    if (j.contains("calibration")) {
        const json& c = j.at("calibration");
        cfg.cal.C_numerical = c.value("C", 1.0);
        cfg.cal.kappa = c.value("kappa", 1.0);
        cfg.cal.c_brudnyi = c.value("c", 1.0);
    }
    cfg.tol = j.value("tol", 0.05);
    cfg.output_path = j.value("output", std::string());
    return cfg;
}

json frame_to_json(const FrameExperiment& exp) {
    json j;
    j["window"] = window_to_json(exp.window);
    j["base_step"] = exp.base_step;
    j["jitter"] = exp.jitter;
    j["seed"] = exp.seed;
    j["K"] = exp.K;
    j["trunc_x"] = exp.trunc_x;
    j["trunc_xi"] = exp.trunc_xi;
    j["tol"] = exp.tol;
    return j;
}

FrameExperiment frame_from_json(const json& j) {
    FrameExperiment exp;
    exp.window = window_from_json(j.at("window"));
    exp.base_step = j.at("base_step").get<double>();
    exp.jitter = j.at("jitter").get<double>();
    exp.seed = j.at("seed").get<std::uint64_t>();
    exp.K = j.at("K").get<int>();
    exp.trunc_x = j.value("trunc_x", 7.0);
    exp.trunc_xi = j.value("trunc_xi", 40.0);
    exp.tol = j.value("tol", 0.05);
    return exp;
}

json report_to_json_obj(const BoundReport& r) {
    json j;
    j["name"] = r.name;
    j["theoretical_log"] = r.theoretical.log_value;
    j["theoretical"] =
        r.theoretical.linear_representable() ? json(r.theoretical.linear()) : json();
    if (r.empirical && std::isfinite(*r.empirical))
        j["empirical"] = *r.empirical;
    else if (r.empirical)
        j["empirical"] = "inf";
    else
        j["empirical"] = nullptr;
    j["inputs"] = r.inputs;
    switch (r.verdict) {
        case BoundReport::Verdict::pass: j["verdict"] = "pass"; break;
        case BoundReport::Verdict::fail: j["verdict"] = "fail"; break;
        case BoundReport::Verdict::informational: j["verdict"] = "informational"; break;
    }
    j["formula"] = r.formula;
    return j;
}

std::vector<cd> complex_list_from_json(const json& arr) {
    std::vector<cd> out;
    out.reserve(arr.size());
    for (const json& e : arr) {
        if (e.is_array()) {
            if (e.size() != 2)
                throw std::runtime_error("signal: complex entries are [re, im] pairs");
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            out.emplace_back(e.get<double>(), 0.0);
        }
    }
    return out;
}

}  // namespace

// ---- STFT rows and Gram eigenvalues --------------------------------------

std::vector<cd> stft_hermite_bank(const WindowSpec& g, int K, PhasePoint z) {
    if (K < 1 || K > 33)
        throw std::domain_error("stft_hermite_bank: K must be in [1, 33]");
    const double x = z.real(), xi = z.imag();
    const double T = hermite_support_halfwidth(K - 1);
    const double lo = std::max(-T, x - g.support_halfwidth());
    const double hi = std::min(T, x + g.support_halfwidth());
    std::vector<cd> out(K, 0.0);
    if (!(hi > lo)) return out;
    std::vector<double> cuts;
    for (double k : g.kinks()) cuts.push_back(x + k);
    const double max_len = std::min(1.0, 4.0 / std::max(1.0, std::abs(xi)));
    const auto panels = split_panels(lo, hi, max_len, cuts);
    const GaussLegendreRule& rule = gauss_legendre(16);
    double bank[33];
    for (const auto& [a, b] : panels) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = mid + half * rule.nodes[i];
            const double w = half * rule.weights[i] * g.eval(t - x);
            detail::hermite_bank(K - 1, t, bank);
            const double ph = -kTwoPi * xi * t;
            const cd e(std::cos(ph), std::sin(ph));
            for (int j = 0; j < K; ++j) out[j] += (w * bank[j]) * e;
        }
    }
    return out;
}

namespace {

// Accumulates the Hermitian Gram matrix and the trace mass of the outer
// frequency ring |xi| > (2/3) ring_cut in point order.
struct GramAccumulator {
    int K;
    std::vector<cd> M;
    double ring_trace = 0.0;
    double ring_cut = 0.0;

    explicit GramAccumulator(int k, double cut)
        : K(k), M(static_cast<std::size_t>(k) * k, 0.0), ring_cut(cut) {}

    void add(const WindowSpec& g, PhasePoint z) {
        const std::vector<cd> row = stft_hermite_bank(g, K, z);
        for (int j = 0; j < K; ++j)
            for (int k = 0; k < K; ++k) M[j * K + k] += row[j] * std::conj(row[k]);
        if (ring_cut > 0.0 && std::abs(z.imag()) > ring_cut) {
            for (int j = 0; j < K; ++j) ring_trace += std::norm(row[j]);
        }
    }

    void hermitize() {
        for (int j = 0; j < K; ++j) {
            M[j * K + j] = M[j * K + j].real();
            for (int k = j + 1; k < K; ++k) {
                const cd avg = 0.5 * (M[j * K + k] + std::conj(M[k * K + j]));
                M[j * K + k] = avg;
                M[k * K + j] = std::conj(avg);
            }
        }
    }
};

}  // namespace

std::pair<double, double> gram_extreme_eigenvalues(const WindowSpec& g,
                                                   const std::vector<PhasePoint>& points,
                                                   int K) {
    if (K < 1 || K > 33)
        throw std::domain_error("gram_extreme_eigenvalues: K must be in [1, 33]");
    GramAccumulator acc(K, 0.0);
    for (PhasePoint z : points) acc.add(g, z);
    acc.hermitize();
    return {inverse_power_min_eig(K, acc.M), power_max_eig(K, acc.M)};
}

FrameBoundsResult empirical_frame_bounds(const FrameExperiment& exp) {
    if (!(exp.base_step > 0.0))
        throw std::domain_error("empirical_frame_bounds: base_step must be positive");
    if (exp.jitter < 0.0 || exp.jitter >= exp.base_step / 2.0)
        throw std::domain_error(
            "empirical_frame_bounds: jitter must be in [0, base_step/2)");
    if (exp.K < 1) throw std::domain_error("empirical_frame_bounds: K must be >= 1");
    if (!(exp.trunc_x > 0.0) || !(exp.trunc_xi > 0.0))
        throw std::domain_error("empirical_frame_bounds: truncation must be positive");
    if (exp.tol < 0.0) throw std::domain_error("empirical_frame_bounds: tol must be >= 0");
    if (exp.K > 33)
        throw capability_error("empirical_frame_bounds: K exceeds the Hermite bank");
    const double T_K = hermite_support_halfwidth(exp.K - 1);
    if (T_K + exp.window.support_halfwidth() > exp.trunc_x || T_K > exp.trunc_xi)
        throw capability_error(
            "empirical_frame_bounds: K too large for the truncation budget");

    const double W = std::max(exp.trunc_x, exp.trunc_xi);
    const PointSet lattice =
        jittered_lattice(exp.base_step, exp.jitter, W, exp.seed);

    GramAccumulator acc(exp.K, 2.0 / 3.0 * exp.trunc_xi);
    std::size_t used = 0;
    for (PhasePoint z : lattice.points) {
        if (std::abs(z.real()) > exp.trunc_x || std::abs(z.imag()) > exp.trunc_xi)
            continue;
        acc.add(exp.window, z);
        ++used;
    }
    acc.hermitize();

    FrameBoundsResult res;
    res.points_used = used;
    res.A_emp = inverse_power_min_eig(exp.K, acc.M);
    res.B_emp = power_max_eig(exp.K, acc.M);

    // Discarded |xi| > trunc_xi mass, extrapolated from the outer third of
    // the frequency range under a |xi|^{-4} spectrogram decay model:
    // tail = ring / ((3/2)^3 - 1) = ring / 2.375.
    res.tail_correction = acc.ring_trace / 2.375;

    if (exp.window.compactly_supported()) {
        const CompactFrameResult cf = compact_frame_bounds(exp.window, exp.base_step);
        res.A_theory =
            cf.admissible ? cf.A : std::numeric_limits<double>::quiet_NaN();
        res.B_theory = cf.B;
    } else {
        const SunZhouResult sz = sunzhou_check(exp.window, exp.base_step);
        res.A_theory = sz.condition_met ? sz.A_lower
                                        : std::numeric_limits<double>::quiet_NaN();
        res.B_theory = sz.B_upper;
    }
    res.verdict_A = !std::isnan(res.A_theory) && res.A_emp >= res.A_theory;
    res.verdict_B = res.B_emp + res.tail_correction <= res.B_theory * (1.0 + exp.tol);
    return res;
}

// ---- sampling-ratio experiments ------------------------------------------

std::vector<Signal> make_family(const SignalFamily& family) {
    std::vector<Signal> out;
    if (family.kind == SignalFamily::Kind::random_hermite) {
        if (family.K < 1 || family.K > 33)
            throw std::domain_error("make_family: K must be in [1, 33]");
        if (family.count < 1)
            throw std::domain_error("make_family: count must be >= 1");
        Rng rng(family.seed);
        out.reserve(family.count);
        for (int i = 0; i < family.count; ++i) {
            std::vector<cd> coeffs(family.K);
            for (int k = 0; k < family.K; ++k) coeffs[k] = rng.normal_complex();
            out.push_back(Signal::hermite_expansion(std::move(coeffs)));
        }
    } else {
        out.push_back(parse_signal_json(read_text_file(family.path)));
    }
    return out;
}

std::vector<BoundReport> run_sampling_experiment(const ExperimentConfig& cfg) {
    if (!(cfg.R > 0.0))
        throw std::domain_error("run_sampling_experiment: R must be positive");
    if (!(cfg.p >= 1.0))
        throw std::domain_error("run_sampling_experiment: p must be >= 1");
    if (cfg.tol < 0.0)
        throw std::domain_error("run_sampling_experiment: tol must be >= 0");
    const Region omega = parse_region(cfg.region_expr);

    double gamma = 0.0;
    bool measured = false;
    double raster_error = 0.0;
    if (cfg.declared_gamma) {
        gamma = *cfg.declared_gamma;
        if (!(gamma > 0.0) || gamma > 1.0)
            throw std::domain_error(
                "run_sampling_experiment: declared gamma must be in (0, 1]");
    } else {
        DensityQuery q;
        q.R = cfg.R;
        q.mode = cfg.window.compactly_supported() ? CellMode::square : CellMode::disc;
        q.search_halfwidth = cfg.quad.trunc;
        const DensityResult d = density_gamma(omega, q);
        measured = true;
        raster_error = d.raster_error;
        gamma = std::clamp(d.gamma * (1.0 - d.raster_error), 0.0, 1.0);
        if (!(gamma > 0.0))
            throw std::domain_error(
                "run_sampling_experiment: measured density is zero at scale R; "
                "declare a gamma or enlarge R");
    }

    const bool hermite_window = !cfg.window.compactly_supported();
    LogReal bound;
    std::string formula;
    int n = 0;
    if (hermite_window) {
        n = cfg.window.hermite_order();
        bound = thm_main_bound(n, cfg.R, gamma, cfg.p, cfg.cal).bound;
        formula =
            "||V_g f||_p / ||V_g f||_{L^p(Omega)} <= (R^2/nu_n(R)) C^{R^2+1} "
            "(gamma/C)^{-C(R^2 + ln nu_n(R)^{-1} + n^2 ln n + 1)}";
    } else {
        if (cfg.p != 2.0)
            throw capability_error(
                "run_sampling_experiment: compact-window ratio bounds cover p = 2 only");
        bound = LogReal::from_linear(planar_sampling_bound(cfg.window, cfg.R, gamma));
        formula =
            "||V_g f||_2 / ||V_g f||_{L^2(Omega)} <= ||g||^2 / (A R^2 gamma), "
            "A = (1/(3R^2)) (||g|| - (4R/pi) ||g'||)^2";
    }

    const std::vector<Signal> signals = make_family(cfg.family);
    std::vector<BoundReport> reports;
    reports.reserve(signals.size());
    for (std::size_t i = 0; i < signals.size(); ++i) {
        const STFTGrid grid =
            stft_grid(signals[i], cfg.window, cfg.quad.trunc, cfg.quad.step);
        const double total = lp_norm(grid, cfg.p);
        const double on_omega = lp_norm(grid, cfg.p, omega);

        BoundReport r;
        r.name = "sampling_ratio";
        r.theoretical = bound;
        double ratio;
        if (on_omega > 0.0) {
            ratio = total / on_omega;
        } else {
            ratio = total > 0.0 ? std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::quiet_NaN();
            r.inputs["omega_norm_zero"] = 1.0;
        }
        r.empirical = ratio;
        r.inputs["signal_index"] = static_cast<double>(i);
        r.inputs["R"] = cfg.R;
        r.inputs["p"] = cfg.p;
        r.inputs["gamma"] = gamma;
        r.inputs["gamma_measured"] = measured ? 1.0 : 0.0;
        if (measured) r.inputs["raster_error_fraction"] = raster_error;
        r.inputs["trunc"] = cfg.quad.trunc;
        r.inputs["step"] = cfg.quad.step;
        r.inputs["tol"] = cfg.tol;
        r.inputs["C"] = cfg.cal.C_numerical;
        r.inputs["kappa"] = cfg.cal.kappa;
        r.inputs["c_brudnyi"] = cfg.cal.c_brudnyi;
        if (cfg.family.kind == SignalFamily::Kind::random_hermite) {
            r.inputs["K"] = static_cast<double>(cfg.family.K);
            r.inputs["count"] = static_cast<double>(cfg.family.count);
            r.inputs["seed"] = static_cast<double>(cfg.family.seed);
        }
        if (hermite_window)
            r.inputs["n"] = static_cast<double>(n);
        else
            r.inputs["S"] = cfg.window.support_halfwidth();
        r.verdict = std::isfinite(ratio) &&
                            std::log(ratio) <= bound.log_value + std::log1p(cfg.tol)
                        ? BoundReport::Verdict::pass
                        : BoundReport::Verdict::fail;
        r.formula = formula;
        reports.push_back(std::move(r));
    }
    return reports;
}

CalibrationConstants calibrate_constants(const std::vector<BoundReport>& reports) {
    if (reports.empty())
        throw std::domain_error("calibrate_constants: no reports given");
    struct Obs {
        int n;
        double R, gamma, p, log_ratio;
    };
    std::vector<Obs> obs;
    obs.reserve(reports.size());
    for (const BoundReport& r : reports) {
        const auto need = [&](const char* key) {
            const auto it = r.inputs.find(key);
            if (it == r.inputs.end())
                throw std::domain_error(
                    std::string("calibrate_constants: report lacks input '") + key +
                    "'");
            return it->second;
        };
        if (!r.empirical || !std::isfinite(*r.empirical) || *r.empirical <= 0.0)
            throw std::domain_error("calibrate_constants: report lacks a finite ratio");
        obs.push_back({static_cast<int>(need("n")), need("R"), need("gamma"),
                       need("p"), std::log(*r.empirical)});
    }

    const auto feasible = [&](double C) {
        const CalibrationConstants cal{C, 1.0, 1.0};
        for (const Obs& o : obs) {
            if (o.log_ratio > thm_main_bound(o.n, o.R, o.gamma, o.p, cal).bound.log_value)
                return false;
        }
        return true;
    };

    if (feasible(1.0)) return {1.0, 1.0, 1.0};
    double lo = 1.0, hi = 2.0;
    while (!feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error("calibrate_constants: no feasible C below 1e12");
    }
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return {hi, 1.0, 1.0};
}

// ---- serialization -------------------------------------------------------

std::string serialize_config(const ExperimentConfig& cfg) {
    return config_to_json(cfg).dump(2);
}

ExperimentConfig parse_config(const std::string& json_text) {
    return config_from_json(json::parse(json_text));
}

std::string serialize_frame_config(const FrameExperiment& exp) {
    return frame_to_json(exp).dump(2);
}

FrameExperiment parse_frame_config(const std::string& json_text) {
    return frame_from_json(json::parse(json_text));
}

Signal parse_signal_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hermite")
        return Signal::hermite_expansion(complex_list_from_json(j.at("coefficients")));
    if (kind == "sampled")
        return Signal::sampled(complex_list_from_json(j.at("values")),
                               j.at("support_halfwidth").get<double>());
    throw std::runtime_error("signal: unknown kind '" + kind + "'");
}

std::string report_to_json(const BoundReport& report) {
    return report_to_json_obj(report).dump(2);
}

namespace {

BoundReport report_from_json_obj(const json& j) {
    BoundReport r;
    r.name = j.value("name", std::string());
    r.theoretical = LogReal::from_log(j.at("theoretical_log").get<double>());
    const json& emp = j.at("empirical");
    if (emp.is_number())
        r.empirical = emp.get<double>();
    else if (emp.is_string() && emp.get<std::string>() == "inf")
        r.empirical = std::numeric_limits<double>::infinity();
    if (j.contains("inputs"))
        r.inputs = j.at("inputs").get<std::map<std::string, double>>();
    const std::string v = j.value("verdict", "informational");
    r.verdict = v == "pass"   ? BoundReport::Verdict::pass
                : v == "fail" ? BoundReport::Verdict::fail
                              : BoundReport::Verdict::informational;
    r.formula = j.value("formula", std::string());
    return r;
}

}  // namespace

std::vector<BoundReport> reports_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    const json& arr = j.is_array() ? j : j.at("reports");
    std::vector<BoundReport> out;
    out.reserve(arr.size());
    for (const json& e : arr) out.push_back(report_from_json_obj(e));
    return out;
}

std::string experiment_reports_json(const ExperimentConfig& cfg,
                                    const std::vector<BoundReport>& reports) {
    json j;
    j["config"] = config_to_json(cfg);
    j["reports"] = json::array();
    for (const BoundReport& r : reports) j["reports"].push_back(report_to_json_obj(r));
    return j.dump(2);
}

std::string frame_result_json(const FrameExperiment& exp, const FrameBoundsResult& res) {
    json j;
    j["config"] = frame_to_json(exp);
    j["A_emp"] = res.A_emp;
    j["B_emp"] = res.B_emp;
    j["A_theory"] = std::isnan(res.A_theory) ? json() : json(res.A_theory);
    j["B_theory"] = res.B_theory;
    j["tail_correction"] = res.tail_correction;
    j["points_used"] = res.points_used;
    j["verdict_A"] = res.verdict_A;
    j["verdict_B"] = res.verdict_B;
    j["verdict"] = res.verdict_A && res.verdict_B ? "pass" : "fail";
    return j.dump(2);
}

std::string reports_csv(const std::vector<BoundReport>& reports) {
    std::ostringstream out;
    out.precision(17);
    out << "index,name,empirical,theoretical_log,verdict\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const BoundReport& r = reports[i];
        out << i << ',' << r.name << ',';
        if (r.empirical)
            out << *r.empirical;
        else
            out << "";
        out << ',' << r.theoretical.log_value << ',';
        switch (r.verdict) {
            case BoundReport::Verdict::pass: out << "pass"; break;
            case BoundReport::Verdict::fail: out << "fail"; break;
            case BoundReport::Verdict::informational: out << "informational"; break;
        }
        out << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace tfsamp
