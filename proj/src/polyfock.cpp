#include "tfsamp/polyfock.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tfsamp/errors.hpp"
#include "tfsamp/specfun.hpp"

namespace tfsamp {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> horner(const std::vector<std::complex<double>>& coeffs,
                            std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

bool all_zero(const std::vector<std::complex<double>>& coeffs) {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](std::complex<double> c) { return c == 0.0; });
}

// Dense polar sample sup of |G| over the closed disc of the given radius.
template <typename G>
double polar_sup(G&& g, double radius, int radial, int angular) {
    double sup = 0.0;
    for (int i = 0; i < radial; ++i) {
        const double r = radial > 1 ? radius * i / (radial - 1) : radius;
        for (int j = 0; j < angular; ++j) {
            const double th = 2.0 * kPi * j / angular;
            sup = std::max(sup, g(std::polar(r, th)));
            if (r == 0.0) break;
        }
    }
    return sup;
}

}  // namespace

int PolyFunction::order() const {
    for (int k = static_cast<int>(components.size()) - 1; k >= 0; --k) {
        if (!all_zero(components[k])) return k;
    }
    return -1;
}

std::complex<double> bargmann_transform(const Signal& f, int n, std::complex<double> z) {
    if (std::abs(z) > 8.0) {
        throw capability_error(
            "bargmann_transform: |z| > 8 exceeds the weighted evaluation range");
    }
    const std::complex<double> V = stft_eval(f, WindowSpec::hermite(n), std::conj(z));
    const double x = z.real();
    const double y = z.imag();
    return V * std::polar(std::exp(kPi * std::norm(z) / 2.0), kPi * x * y);
}

std::complex<double> poly_eval(const PolyFunction& F, std::complex<double> z) {
    const std::complex<double> zc = std::conj(z);
    std::complex<double> zc_pow = 1.0;
    std::complex<double> acc = 0.0;
    for (const auto& comp : F.components) {
        acc += horner(comp, z) * zc_pow;
        zc_pow *= zc;
    }
    return acc;
}

std::complex<double> reduced_poly_eval(const ReducedPolyFunction& F,
                                       std::complex<double> z) {
    const double r2 = std::norm(z);
    double r2_pow = 1.0;
    std::complex<double> acc = 0.0;
    for (const auto& comp : F.components) {
        acc += horner(comp, z) * r2_pow;
        r2_pow *= r2;
    }
    return acc;
}

std::complex<double> phi_extension_eval(const PolyFunction& F, std::complex<double> z1,
                                        std::complex<double> z2) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> u = z1 + i * z2;
    const std::complex<double> v = z1 - i * z2;
    std::complex<double> v_pow = 1.0;
    std::complex<double> acc = 0.0;
    for (const auto& comp : F.components) {
        acc += horner(comp, u) * v_pow;
        v_pow *= v;
    }
    return acc;
}

LogReal balk_Dn(int n, double lambda) {
    if (n < 0) throw std::domain_error("balk_Dn: order must be nonnegative");
    if (lambda <= 1.0) throw std::domain_error("balk_Dn: lambda must exceed 1");
    const double np2 = n + 2.0;
    return LogReal::from_log(np2 * std::log(2.0 * lambda / (lambda - 1.0)) +
                             np2 * np2 * std::log(np2));
}

BoundReport component_bound_check(const PolyFunction& F, double R, double lambda,
                                  int radial_samples, int angular_samples) {
    const int n = F.order();
    if (n < 0) throw std::domain_error("component_bound_check: zero function");
    if (R <= 0.0) throw std::domain_error("component_bound_check: R must be positive");
    if (lambda <= 1.0)
        throw std::domain_error("component_bound_check: lambda must exceed 1");
    if (radial_samples < 2 || angular_samples < 4)
        throw std::domain_error("component_bound_check: sample counts too small");

    const double M = polar_sup([&](std::complex<double> z) { return std::abs(poly_eval(F, z)); },
                               lambda * R, radial_samples, angular_samples);
    if (M <= 0.0)
        throw std::domain_error("component_bound_check: sup on the outer disc vanished");

    double worst_ratio = 0.0;
    int worst_k = 0;
    for (int k = 0; k <= n; ++k) {
        const auto& comp = F.components[k];
        const double sup_k =
            polar_sup([&](std::complex<double> z) {
                return std::abs(horner(comp, z)) * std::pow(std::abs(z), k);
            }, R, radial_samples, angular_samples);
        if (sup_k / M > worst_ratio) {
            worst_ratio = sup_k / M;
            worst_k = k;
        }
    }

    // Leading-component interior estimate on the intermediate disc.
    const double mid_radius = (1.0 + lambda) * R / 2.0;
    const double lead_sup =
        polar_sup([&](std::complex<double> z) {
            return std::abs(horner(F.components[n], z)) * std::pow(std::abs(z), n);
        }, mid_radius, radial_samples, angular_samples);
    const double lead_bound_log =
        std::log(M) + (n + 2.0) * std::log(2.0 * lambda * (n + 2.0) / (lambda - 1.0));

    BoundReport rep;
    rep.name = "balk_component_bound";
    rep.theoretical = balk_Dn(n, lambda);
    rep.empirical = worst_ratio;
    rep.inputs["n"] = n;
    rep.inputs["R"] = R;
    rep.inputs["lambda"] = lambda;
    rep.inputs["M"] = M;
    rep.inputs["worst_component"] = worst_k;
    rep.inputs["lead_margin_log"] =
        lead_sup > 0.0 ? lead_bound_log - std::log(lead_sup)
                       : std::numeric_limits<double>::infinity();
    rep.verdict = std::log(worst_ratio) <= rep.theoretical.log_value + 1e-9
                      ? BoundReport::Verdict::pass
                      : BoundReport::Verdict::fail;
    rep.formula =
        "max_k sup_{|z|<=R} |F_k(z) z^k| <= D_n sup_{|z|<=lambda R} |F|, "
        "D_n = (2 lambda/(lambda-1))^{n+2} (n+2)^{(n+2)^2}";
    return rep;
}

std::complex<double> reduced_cauchy_eval(const ReducedPolyFunction& F,
                                         const std::vector<double>& radii,
                                         std::complex<double> z, int contour_nodes) {
    if (radii.empty())
        throw std::domain_error("reduced_cauchy_eval: at least one radius required");
    for (size_t k = 0; k < radii.size(); ++k) {
        if (radii[k] <= 0.0 || (k > 0 && radii[k] <= radii[k - 1]))
            throw std::domain_error(
                "reduced_cauchy_eval: radii must be positive and strictly increasing");
    }
    if (std::abs(z) >= radii.front())
        throw std::domain_error(
            "reduced_cauchy_eval: point must lie inside the smallest circle");
    if (contour_nodes < 8)
        throw std::domain_error("reduced_cauchy_eval: too few contour nodes");

    const double s = std::norm(z);
    std::complex<double> acc = 0.0;
    for (size_t k = 0; k < radii.size(); ++k) {
        double interp = 1.0;
        for (size_t j = 0; j < radii.size(); ++j) {
            if (j == k) continue;
            interp *= (radii[j] * radii[j] - s) / (radii[j] * radii[j] - radii[k] * radii[k]);
        }
        std::complex<double> contour = 0.0;
        for (int j = 0; j < contour_nodes; ++j) {
            const std::complex<double> t =
                std::polar(radii[k], 2.0 * kPi * j / contour_nodes);
            contour += reduced_poly_eval(F, t) * t / (t - z);
        }
        acc += interp * contour / static_cast<double>(contour_nodes);
    }
    return acc;
}

namespace {

double weighted_lp_norm_impl(const PolyFunction& F, const WeightedNormSpec& spec,
                             const Region* region, double trunc, double grid_step) {
    if (spec.p < 1.0) throw std::domain_error("weighted_lp_norm: p must be >= 1");
    if (trunc <= 0.0) throw std::domain_error("weighted_lp_norm: trunc must be positive");
    const double step0 = grid_step > 0.0 ? grid_step : trunc / 256.0;
    const long long n = std::max<long long>(1, std::llround(2.0 * trunc / step0));
    const double h = 2.0 * trunc / static_cast<double>(n);
    double sum = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double x = -trunc + (i + 0.5) * h;
        for (long long j = 0; j < n; ++j) {
            const double y = -trunc + (j + 0.5) * h;
            const double r2 = x * x + y * y;
            if (r2 > trunc * trunc) continue;
            const std::complex<double> z(x, y);
            if (region != nullptr && !region->contains(z)) continue;
            const double w = std::abs(poly_eval(F, z)) * std::exp(-kPi * r2 / 2.0);
            sum += std::pow(w, spec.p);
        }
    }
    return std::pow(sum * h * h, 1.0 / spec.p);
}

}  // namespace

double weighted_lp_norm(const PolyFunction& F, const WeightedNormSpec& spec,
                        double trunc, double grid_step) {
    return weighted_lp_norm_impl(F, spec, nullptr, trunc, grid_step);
}

double weighted_lp_norm(const PolyFunction& F, const WeightedNormSpec& spec,
                        const Region& region, double trunc, double grid_step) {
    return weighted_lp_norm_impl(F, spec, &region, trunc, grid_step);
}

BoundReport remez_ratio(const PolyFunction& F, const Region& region, double rho,
                        double R, double kappa, double c) {
    const int n = F.order();
    if (n < 0) throw std::domain_error("remez_ratio: zero function");
    if (R <= 0.0 || rho <= 0.0 || rho > R)
        throw std::domain_error("remez_ratio: need 0 < rho <= R");
    if (kappa <= 0.0 || c <= 0.0)
        throw std::domain_error("remez_ratio: kappa and c must be positive");
    const double m = std::abs(poly_eval(F, 0.0));
    if (m <= 0.0)
        throw std::domain_error("remez_ratio: |F(0)| must be positive");

    // Sampled sup over D(0, 4R), pushed up by a Lipschitz mesh correction so
    // the sampled value cannot undercut the true sup.
    const int nr = 512, na = 512;
    const double outer = 4.0 * R;
    double lip = 0.0;
    for (size_t k = 0; k < F.components.size(); ++k) {
        for (size_t j = 0; j < F.components[k].size(); ++j) {
            const double deg = static_cast<double>(j + k);
            if (deg == 0.0) continue;
            lip += std::abs(F.components[k][j]) * deg * std::pow(outer, deg - 1.0);
        }
    }
    const double mesh = outer / (nr - 1) + outer * 2.0 * kPi / na;
    const double M =
        polar_sup([&](std::complex<double> z) { return std::abs(poly_eval(F, z)); },
                  outer, nr, na) +
        lip * mesh;

    const double sup_left =
        polar_sup([&](std::complex<double> z) { return std::abs(poly_eval(F, z)); },
                  rho, 256, 256);

    // Raster the region inside D(0, R): area and sup. The same raster over
    // the 4R box flags any region mass escaping D(0, R). The area counts only
    // cells fully inside (center and all four corners), so it never exceeds
    // |Omega| and the base kappa*pi*rho^2/|Omega| is never understated.
    const int grid = 512;
    const double box = 4.0 * R;
    const double step = 2.0 * box / grid;
    const auto in_domain = [&](double px, double py) {
        const std::complex<double> p(px, py);
        return region.contains(p) && std::norm(p) <= R * R;
    };
    double omega_area = 0.0;
    double sup_omega = 0.0;
    bool escapes = false;
    for (int i = 0; i < grid; ++i) {
        const double x = -box + (i + 0.5) * step;
        for (int j = 0; j < grid; ++j) {
            const double y = -box + (j + 0.5) * step;
            const std::complex<double> z(x, y);
            if (!region.contains(z)) continue;
            if (std::norm(z) > R * R) {
                escapes = true;
                continue;
            }
            const double h = step / 2.0;
            if (in_domain(x - h, y - h) && in_domain(x - h, y + h) &&
                in_domain(x + h, y - h) && in_domain(x + h, y + h)) {
                omega_area += step * step;
            }
            sup_omega = std::max(sup_omega, std::abs(poly_eval(F, z)));
        }
    }
    if (escapes)
        throw std::domain_error("remez_ratio: region is not contained in D(0, R)");
    if (omega_area <= 0.0)
        throw std::domain_error("remez_ratio: region has no area inside D(0, R)");
    if (sup_omega <= 0.0)
        throw std::domain_error("remez_ratio: sup over the region vanished");

    const double base = kappa * kPi * rho * rho / omega_area;
    const double exponent =
        c * (std::log(M / m) + (n + 2.0) * (n + 2.0) * std::log(4.0 * (n + 2.0)));
    const double rhs_log = exponent * std::log(base) + std::log(sup_omega);

    BoundReport rep;
    rep.name = "remez_ratio";
    rep.theoretical = LogReal::from_log(rhs_log);
    rep.empirical = sup_left;
    rep.inputs["n"] = n;
    rep.inputs["rho"] = rho;
    rep.inputs["R"] = R;
    rep.inputs["kappa"] = kappa;
    rep.inputs["c"] = c;
    rep.inputs["m"] = m;
    rep.inputs["M"] = M;
    rep.inputs["sup_omega"] = sup_omega;
    rep.inputs["omega_area"] = omega_area;
    rep.inputs["base"] = base;
    rep.inputs["exponent"] = exponent;
    if (base > 1.0 && sup_left > 0.0) {
        rep.inputs["c_hat"] = std::log(sup_left / sup_omega) / std::log(base);
    }
    rep.verdict = std::log(sup_left) <= rhs_log + 1e-9 ? BoundReport::Verdict::pass
                                                       : BoundReport::Verdict::fail;
    rep.formula =
        "sup_{|z|<=rho} |F| <= (kappa pi rho^2 / |Omega|)^{c [ln(M/m) + "
        "(n+2)^2 ln 4(n+2)]} sup_Omega |F|, M = sup_{|z|<=4R} |F|, m = |F(0)|";
    return rep;
}

}  // namespace tfsamp
