// Acceptance harness: one line per criterion, exit code = number of failures.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iterator>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tfsamp/bounds.hpp"
#include "tfsamp/errors.hpp"
#include "tfsamp/geometry.hpp"
#include "tfsamp/harness.hpp"
#include "tfsamp/polyfock.hpp"
#include "tfsamp/quadrature.hpp"
#include "tfsamp/rng.hpp"
#include "tfsamp/specfun.hpp"
#include "tfsamp/tfcore.hpp"

using namespace tfsamp;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

PolyFunction random_poly(int order, int degree, Rng& rng) {
    PolyFunction F;
    F.components.resize(order + 1);
    for (auto& comp : F.components) {
        comp.resize(degree + 1);
        for (auto& c : comp) c = rng.unit_disc();
    }
    return F;
}

double sampled_disc_sup(const PolyFunction& F, double radius) {
    double sup = 0.0;
    for (int i = 0; i < 128; ++i) {
        const double r = radius * i / 127.0;
        for (int j = 0; j < 128; ++j) {
            const double theta = 2.0 * kPi * j / 128.0;
            sup = std::max(sup, std::abs(poly_eval(F, std::polar(r, theta))));
            if (r == 0.0) break;
        }
    }
    return sup;
}

// 1. || V_g f ||_{L^2}^2 = ||f||^2 ||g||^2 for Hermite windows (||g|| = 1).
bool criterion_isometry(std::string& detail) {
    SignalFamily fam;
    fam.K = 8;
    fam.count = 20;
    fam.seed = 42;
    const std::vector<Signal> sigs = make_family(fam);
    double worst = 0.0;
    for (int n = 0; n <= 2; ++n) {
        const WindowSpec g = WindowSpec::hermite(n);
        for (const Signal& f : sigs) {
            const STFTGrid grid = stft_grid(f, g, 6.0, 1.0 / 32.0);
            const double v = lp_norm(grid, 2.0);
            const double expect = f.l2() * f.l2();
            worst = std::max(worst, std::abs(v * v - expect) / expect);
        }
    }
    detail = fmt("worst relative deviation %.3e, tolerance 1e-04", worst);
    return worst <= 1e-4;
}

// 2. Disc-local reproducing formula: small residual, halving under refinement.
bool criterion_local_repr(std::string& detail) {
    SignalFamily fam;
    fam.K = 8;
    fam.count = 10;
    fam.seed = 43;
    const std::vector<Signal> sigs = make_family(fam);
    Rng rng(1234);
    double worst = 0.0;
    for (int n = 0; n <= 2; ++n) {
        for (double R : {0.5, 1.0, 2.0}) {
            for (int t = 0; t < 10; ++t) {
                const cd z(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0));
                worst = std::max(worst, local_repr_residual(sigs[t], n, R, z));
            }
        }
    }
    bool halves = true;
    double worst_ratio = 0.0;
    for (int n = 0; n <= 2; ++n) {
        const double coarse = local_repr_residual(sigs[0], n, 2.0, cd(1.0, 0.5), 8, 16);
        const double fine = local_repr_residual(sigs[0], n, 2.0, cd(1.0, 0.5), 16, 32);
        if (fine >= 1e-12) {
            halves = halves && fine <= coarse / 2.0;
            worst_ratio = std::max(worst_ratio, fine / coarse);
        }
    }
    detail = fmt("worst residual %.3e (tolerance 1e-03), worst refinement ratio %.3e "
                 "(threshold 0.5)",
                 worst, worst_ratio);
    return worst < 1e-3 && halves;
}

// 3. nu_n oracle against the closed forms for n = 0, 1.
bool criterion_nu(std::string& detail) {
    double worst = 0.0;
    for (double R : {0.25, 0.5, 1.0, 2.0}) {
        const double t = kPi * R * R;
        const double expect0 = 1.0 - std::exp(-t);
        const double expect1 = 1.0 - std::exp(-t) * (1.0 + t * t);
        worst = std::max(worst, std::abs(nu(0, R) - expect0));
        worst = std::max(worst, std::abs(nu(1, R) - expect1));
    }
    detail = fmt("worst absolute deviation %.3e, tolerance 1e-10", worst);
    return worst <= 1e-10;
}

// 4. Component bounds for 100 random polyanalytic polynomials.
bool criterion_component_bounds(std::string& detail) {
    Rng rng(777);
    int violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const PolyFunction F = random_poly(i % 4, 3, rng);
        const BoundReport rep = component_bound_check(F, 1.0, std::sqrt(2.0));
        const double lead = rep.inputs.at("lead_margin_log");
        min_margin = std::min(min_margin, lead);
        if (rep.verdict != BoundReport::Verdict::pass || lead < -1e-9) ++violations;
    }
    detail = fmt("violations %.0f of 100 (slack 1e-9), min leading margin %.3e",
                 static_cast<double>(violations), min_margin);
    return violations == 0;
}

// 5. Holomorphic extension: restriction identity and the 4D ball bound.
bool criterion_phi(std::string& detail) {
    Rng rng(888);
    double worst_restrict = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PolyFunction F = random_poly(i % 3, 3, rng);
        const double x = rng.uniform(-2.0, 2.0);
        const double y = rng.uniform(-2.0, 2.0);
        const cd direct = poly_eval(F, cd(x, y));
        const cd via_phi = phi_extension_eval(F, cd(x, 0.0), cd(y, 0.0));
        worst_restrict = std::max(
            worst_restrict, std::abs(via_phi - direct) / std::max(1.0, std::abs(direct)));
    }

    int violations = 0;
    const double R = 1.0;
    for (int i = 0; i < 100; ++i) {
        const PolyFunction F = random_poly(i % 3, 3, rng);
        const int n = F.order();
        const double M = sampled_disc_sup(F, 4.0 * R);
        const double bound_log =
            std::log(M) + (n + 2.0) * (n + 2.0) * std::log(4.0 * (n + 2.0));
        for (double a = -2.0 * R; a <= 2.0 * R; a += 0.5)
            for (double b = -2.0 * R; b <= 2.0 * R; b += 0.5)
                for (double c = -2.0 * R; c <= 2.0 * R; c += 0.5)
                    for (double d = -2.0 * R; d <= 2.0 * R; d += 0.5) {
                        if (a * a + b * b + c * c + d * d > 4.0 * R * R) continue;
                        const double v = std::abs(phi_extension_eval(F, cd(a, b), cd(c, d)));
                        if (v > 0.0 && std::log(v) > bound_log + 1e-9) ++violations;
                    }
    }
    detail = fmt("worst restriction error %.3e (tolerance 1e-12), ball-bound violations "
                 "%.0f of 100",
                 worst_restrict, static_cast<double>(violations));
    return worst_restrict <= 1e-12 && violations == 0;
}

// 6. Reduced Cauchy reconstruction at 2048 contour nodes.
bool criterion_reduced_cauchy(std::string& detail) {
    Rng rng(999);
    const std::vector<double> radii = {1.0, 1.5, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        ReducedPolyFunction F;
        F.components.resize(1 + i % 3);
        for (auto& comp : F.components) {
            comp.resize(3);
            for (auto& c : comp) c = rng.unit_disc();
        }
        const cd z = 0.9 * rng.unit_disc();
        const cd exact = reduced_poly_eval(F, z);
        const cd recon = reduced_cauchy_eval(F, radii, z, 2048);
        worst = std::max(worst, std::abs(recon - exact) / std::max(1.0, std::abs(exact)));
    }
    detail = fmt("worst relative error %.3e, tolerance 1e-06", worst);
    return worst < 1e-6;
}

// 7. End-to-end planar sampling ratio on periodic strips, hat window.
bool criterion_strips_ratio(std::string& detail) {
    ExperimentConfig cfg;
    cfg.window = WindowSpec::hat(1.0);
    cfg.R = 0.4;
    cfg.region_expr = "(strips 0.5 1)";
    cfg.declared_gamma = 0.5;
    cfg.family.K = 8;
    cfg.family.count = 20;
    cfg.family.seed = 42;
    cfg.quad.trunc = 6.0;
    cfg.quad.step = 1.0 / 16.0;
    const std::vector<BoundReport> reports = run_sampling_experiment(cfg);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool ok = true;
    for (const BoundReport& r : reports) {
        const double ratio = *r.empirical;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ok = ok && std::isfinite(ratio) && ratio >= 1.0 && ratio <= 431.8 * 1.05 &&
             r.verdict == BoundReport::Verdict::pass;
    }
    detail = fmt("ratios in [%.4f, %.4f], required within [1, 453.39]", lo, hi);
    return ok;
}

// 8. Jittered-lattice frame bounds against Sun-Zhou style constants.
bool criterion_frame_bounds(std::string& detail) {
    double min_A = std::numeric_limits<double>::infinity();
    double worst_B_ratio = 0.0;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        FrameExperiment exp;
        exp.window = WindowSpec::hat(1.0);
        exp.base_step = 0.2;
        exp.jitter = 0.05;
        exp.seed = seed;
        exp.K = 8;
        const FrameBoundsResult res = empirical_frame_bounds(exp);
        min_A = std::min(min_A, res.A_emp);
        const double b_ratio = (res.B_emp + res.tail_correction) / res.B_theory;
        worst_B_ratio = std::max(worst_B_ratio, b_ratio);
        ok = ok && res.A_emp >= 1.7355 && b_ratio <= 1.05;
    }
    detail = fmt("min A_emp %.4f (required >= 1.7355), worst corrected B ratio %.4f "
                 "(required <= 1.05)",
                 min_A, worst_B_ratio);
    return ok;
}

// 9. Lower Beurling density of the R/2 lattice at R = 1.
bool criterion_beurling(std::string& detail) {
    PointSet set;
    set.window_halfwidth = 32.0;
    for (int i = -64; i <= 64; ++i)
        for (int j = -64; j <= 64; ++j)
            set.points.emplace_back(0.5 * i, 0.5 * j);
    const double d = beurling_lower_density(set, 16.0);
    detail = fmt("measured density %.4f, required 4 +- 0.3", d);
    return std::abs(d - 4.0) <= 0.3;
}

// 10. Calibrated ratio bound on a held-out sweep, plus bound monotonicity.
bool criterion_calibrated_bound(std::string& detail) {
    struct Combo {
        int n;
        double R;
        double gamma;
        const char* region;
    };
    std::vector<Combo> combos;
    for (int n = 0; n <= 2; ++n)
        for (double R : {0.5, 1.0})
            for (const auto& [gamma, region] :
                 {std::pair<double, const char*>{0.25, "(strips 0.25 1)"},
                  {0.5, "(strips 0.5 1)"},
                  {1.0, "(all)"}})
                combos.push_back({n, R, gamma, region});

    const auto make_cfg = [&](const Combo& c, std::uint64_t seed, double C) {
        ExperimentConfig cfg;
        cfg.window = WindowSpec::hermite(c.n);
        cfg.region_expr = c.region;
        cfg.declared_gamma = c.gamma;
        cfg.R = c.R;
        cfg.family.K = 8;
        cfg.family.count = 1;
        cfg.family.seed = seed;
        cfg.quad.trunc = 6.0;
        cfg.quad.step = 1.0 / 16.0;
        cfg.cal.C_numerical = C;
        return cfg;
    };

    std::vector<BoundReport> train;
    for (int i = 0; i < 50; ++i) {
        const std::vector<BoundReport> rep =
            run_sampling_experiment(make_cfg(combos[i % combos.size()], 1000 + i, 1.0));
        train.push_back(rep[0]);
    }
    const double C_hat = calibrate_constants(train).C_numerical;
    const double C_test = 2.0 * C_hat;

    bool held_ok = true;
    for (int i = 0; i < 50; ++i) {
        const std::vector<BoundReport> rep =
            run_sampling_experiment(make_cfg(combos[i % combos.size()], 2000 + i, C_test));
        const double ratio = *rep[0].empirical;
        held_ok = held_ok && std::isfinite(ratio) &&
                  std::log(ratio) <= rep[0].theoretical.log_value + 1e-9;
    }

    const CalibrationConstants cal{C_test, 1.0, 1.0};
    bool mono = true;
    for (int n = 0; n <= 2; ++n) {
        for (double R : {0.5, 1.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (double gamma : {0.25, 0.5, 1.0}) {
                const double b = thm_main_bound(n, R, gamma, 2.0, cal).bound.log_value;
                mono = mono && b <= prev + 1e-12;
                prev = b;
            }
        }
        for (double gamma : {0.25, 0.5, 1.0}) {
            const double small = thm_main_bound(n, 0.5, gamma, 2.0, cal).bound.log_value;
            const double large = thm_main_bound(n, 1.0, gamma, 2.0, cal).bound.log_value;
            mono = mono && small <= large + 1e-12;
        }
    }
    detail = fmt("C_hat %.4f, held-out with C = %.4f all within bound, monotone", C_hat,
                 C_test) +
             (held_ok && mono ? "" : " (VIOLATED)");
    return held_ok && mono;
}

// 11. Bit-exact replay of serialized configs.
bool criterion_determinism(std::string& detail) {
    bool ok = true;

    ExperimentConfig cfg;
    cfg.window = WindowSpec::hat(1.0);
    cfg.R = 0.4;
    cfg.region_expr = "(strips 0.5 1)";
    cfg.declared_gamma = 0.5;
    cfg.family.K = 8;
    cfg.family.count = 5;
    cfg.family.seed = 42;
    cfg.quad.trunc = 6.0;
    cfg.quad.step = 1.0 / 16.0;

    ExperimentConfig cfg2;
    cfg2.window = WindowSpec::hermite(1);
    cfg2.region_expr = "(strips 0.5 1)";
    cfg2.declared_gamma = 0.5;
    cfg2.family.K = 8;
    cfg2.family.count = 2;
    cfg2.family.seed = 555;
    cfg2.quad.trunc = 6.0;
    cfg2.quad.step = 1.0 / 16.0;

    for (const ExperimentConfig& c : {cfg, cfg2}) {
        const std::vector<BoundReport> a = run_sampling_experiment(c);
        const std::vector<BoundReport> b =
            run_sampling_experiment(parse_config(serialize_config(c)));
        ok = ok && a.size() == b.size();
        for (std::size_t i = 0; ok && i < a.size(); ++i) {
            ok = ok && *a[i].empirical == *b[i].empirical &&
                 a[i].theoretical.log_value == b[i].theoretical.log_value;
        }
    }

    FrameExperiment fexp;
    fexp.window = WindowSpec::hat(1.0);
    fexp.base_step = 0.4;
    fexp.jitter = 0.1;
    fexp.seed = 3;
    fexp.K = 2;
    fexp.trunc_x = 6.0;
    fexp.trunc_xi = 6.0;
    const FrameBoundsResult f1 = empirical_frame_bounds(fexp);
    const FrameBoundsResult f2 =
        empirical_frame_bounds(parse_frame_config(serialize_frame_config(fexp)));
    ok = ok && f1.A_emp == f2.A_emp && f1.B_emp == f2.B_emp &&
         f1.points_used == f2.points_used;

    detail = ok ? "all replayed report numbers identical"
                : "replay diverged from the original run";
    return ok;
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        bool (*run)(std::string&);
    };
    const Entry entries[] = {
        {"isometry", criterion_isometry},
        {"local reproducing formula", criterion_local_repr},
        {"nu oracle", criterion_nu},
        {"component bounds", criterion_component_bounds},
        {"holomorphic extension", criterion_phi},
        {"reduced Cauchy", criterion_reduced_cauchy},
        {"strips sampling ratio", criterion_strips_ratio},
        {"frame bounds", criterion_frame_bounds},
        {"Beurling density", criterion_beurling},
        {"calibrated bound", criterion_calibrated_bound},
        {"determinism", criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(entries); ++i) {
        std::string detail;
        bool pass = false;
        try {
            pass = entries[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!pass) ++failures;
        std::printf("criterion %2zu [%s]: %s (%s)\n", i + 1, entries[i].label,
                    pass ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
