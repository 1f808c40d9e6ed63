#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tfsamp/errors.hpp"

namespace tfsamp {

// Phase-plane point z = x + i*xi (time shift x, frequency shift xi).
using PhasePoint = std::complex<double>;

// Measurable subset of the plane as a constructive-geometry tree.
// Value-semantic handle over an immutable node tree.
class Region {
public:
    static Region all();
    static Region disc(double cx, double cy, double r);
    static Region rect(double x0, double y0, double x1, double y1);
    // Half-plane a*x + b*xi >= c.
    static Region halfplane(double a, double b, double c);
    // |p(z, conj z)| >= eps with real coefficients in graded lex order over
    // (z, conj z): 1; z, conj z; z^2, z conj z, conj z^2; ...
    static Region levelset(std::vector<double> coeffs, double eps);
    // Vertical strips: x mod period in [0, width). Declares period in x.
    static Region strips(double width, double period);
    static Region union_of(std::vector<Region> parts);
    static Region intersect_of(std::vector<Region> parts);
    static Region complement_of(Region r);

    bool contains(PhasePoint z) const;

    // Declared periodicity per axis: 0 means translation-invariant along the
    // axis, positive is a period, nullopt means no declaration (aperiodic).
    std::optional<double> period_x() const;
    std::optional<double> period_y() const;

    std::string describe() const;

    struct Node;  // definition internal to the implementation

private:
    explicit Region(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Parenthesized prefix mini-language, e.g.
//   (union (disc 0 0 1) (complement (halfplane 1 0 0)))
//   (strips 0.5 1)
//   (levelset "1 0 0 1" 0.25)
// Throws region_parse_error with the byte offset of the failure.
Region parse_region(const std::string& text);

// Evaluation of the level-set polynomial term order used by Region::levelset.
std::complex<double> gradedlex_poly_eval(const std::vector<double>& coeffs,
                                         std::complex<double> z);

enum class CellMode { disc, square };

// Disc D(center, R) or axis-aligned square of side R centered at center.
struct Cell {
    PhasePoint center;
    double R = 1.0;
    CellMode mode = CellMode::disc;
};

struct AreaResult {
    double area = 0.0;
    // Raster boundary-band bound: straddling subcells times subcell area,
    // on the order of perimeter * step.
    double error_bound = 0.0;
};

// Midpoint-raster area of region ∩ cell at the given raster step.
AreaResult region_area_in(const Region& region, const Cell& cell, double raster_step);

struct DensityQuery {
    double R = 1.0;
    CellMode mode = CellMode::disc;
    double raster_step = 0.0;       // default R/64; must be <= R/32
    double search_halfwidth = 0.0;  // required for aperiodic regions
};

struct DensityResult {
    double gamma = 0.0;        // minimum cell fraction found (upper bound on the inf)
    double raster_error = 0.0; // raster error bound at the minimizing anchor
    int anchors_scanned = 0;
    PhasePoint argmin{0.0, 0.0};
};

// Scans cell centers on an anchor lattice of step R/8 (one period cell for
// periodic regions, the declared search window otherwise) and returns the
// smallest fraction |region ∩ cell| / |cell|.
DensityResult density_gamma(const Region& region, const DensityQuery& q);

struct PointSet {
    std::vector<PhasePoint> points;
    double window_halfwidth = 0.0;  // declared confinement [-W, W]^2
};

// Jittered lattice base_step * (n, m) + uniform jitter in [-jitter, jitter]^2
// over the window [-W, W]^2; draw order is row-major in (n, m) ascending.
PointSet jittered_lattice(double base_step, double jitter, double window_halfwidth,
                          std::uint64_t seed);

// min over square anchors of #(points in z + [0, R_max)^2) / R_max^2: a
// finite-scale proxy for the lower Beurling density, reported at R_max.
// Requires R_max <= window size / 4 = window_halfwidth / 2.
double beurling_lower_density(const PointSet& pts, double R_max);

struct SeparationReport {
    double min_gap = 0.0;
    bool uniformly_separated = false;
};

SeparationReport separation_check(const PointSet& pts);

}  // namespace tfsamp
