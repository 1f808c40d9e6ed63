#include "tfsamp/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tfsamp/rng.hpp"

namespace tfsamp {

namespace {
constexpr double kPi = std::numbers::pi;
}

struct Region::Node {
    enum class Type {
        all,
        disc,
        rect,
        halfplane,
        levelset,
        strips,
        union_,
        intersect,
        complement
    };
    Type type = Type::all;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
    std::vector<double> coeffs;
    std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using Node = Region::Node;

bool node_contains(const Node& n, PhasePoint z);

bool node_contains(const Node& n, PhasePoint z) {
    const double x = z.real(), y = z.imag();
    switch (n.type) {
        case Node::Type::all:
            return true;
        case Node::Type::disc: {
            const double dx = x - n.p0, dy = y - n.p1;
            return dx * dx + dy * dy <= n.p2 * n.p2;
        }
        case Node::Type::rect:
            return x >= n.p0 && x <= n.p2 && y >= n.p1 && y <= n.p3;
        case Node::Type::halfplane:
            return n.p0 * x + n.p1 * y >= n.p2;
        case Node::Type::levelset:
            return std::abs(gradedlex_poly_eval(n.coeffs, z)) >= n.p0;
        case Node::Type::strips: {
            double m = std::fmod(x, n.p1);
            if (m < 0.0) m += n.p1;
            return m < n.p0;
        }
        case Node::Type::union_:
            for (const auto& c : n.children)
                if (node_contains(*c, z)) return true;
            return false;
        case Node::Type::intersect:
            for (const auto& c : n.children)
                if (!node_contains(*c, z)) return false;
            return true;
        case Node::Type::complement:
            return !node_contains(*n.children[0], z);
    }
    return false;
}

// Per-axis periodicity: 0 = invariant, positive = period, nullopt = none.
std::optional<double> combine_periods(const std::vector<std::optional<double>>& ps) {
    double period = 0.0;
    for (const auto& p : ps) {
        if (!p) return std::nullopt;
        if (*p == 0.0) continue;
        if (period == 0.0) {
            period = *p;
        } else if (std::abs(period - *p) > 1e-12 * period) {
            return std::nullopt;
        }
    }
    return period;
}

std::optional<double> node_period(const Node& n, bool x_axis) {
    switch (n.type) {
        case Node::Type::all:
            return 0.0;
        case Node::Type::disc:
        case Node::Type::rect:
        case Node::Type::levelset:
            return std::nullopt;
        case Node::Type::halfplane:
            // Invariant along the boundary direction when axis-aligned.
            if (x_axis) return n.p0 == 0.0 ? std::optional<double>(0.0) : std::nullopt;
            return n.p1 == 0.0 ? std::optional<double>(0.0) : std::nullopt;
        case Node::Type::strips:
            return x_axis ? std::optional<double>(n.p1) : std::optional<double>(0.0);
        case Node::Type::union_:
        case Node::Type::intersect: {
            std::vector<std::optional<double>> ps;
            ps.reserve(n.children.size());
            for (const auto& c : n.children) ps.push_back(node_period(*c, x_axis));
            return combine_periods(ps);
        }
        case Node::Type::complement:
            return node_period(*n.children[0], x_axis);
    }
    return std::nullopt;
}

void node_describe(const Node& n, std::ostringstream& out) {
    switch (n.type) {
        case Node::Type::all:
            out << "(all)";
            return;
        case Node::Type::disc:
            out << "(disc " << n.p0 << " " << n.p1 << " " << n.p2 << ")";
            return;
        case Node::Type::rect:
            out << "(rect " << n.p0 << " " << n.p1 << " " << n.p2 << " " << n.p3 << ")";
            return;
        case Node::Type::halfplane:
            out << "(halfplane " << n.p0 << " " << n.p1 << " " << n.p2 << ")";
            return;
        case Node::Type::levelset: {
            out << "(levelset \"";
            for (std::size_t i = 0; i < n.coeffs.size(); ++i)
                out << (i ? " " : "") << n.coeffs[i];
            out << "\" " << n.p0 << ")";
            return;
        }
        case Node::Type::strips:
            out << "(strips " << n.p0 << " " << n.p1 << ")";
            return;
        case Node::Type::union_:
        case Node::Type::intersect: {
            out << (n.type == Node::Type::union_ ? "(union" : "(intersect");
            for (const auto& c : n.children) {
                out << " ";
                node_describe(*c, out);
            }
            out << ")";
            return;
        }
        case Node::Type::complement:
            out << "(complement ";
            node_describe(*n.children[0], out);
            out << ")";
            return;
    }
}

std::shared_ptr<const Node> make_node(Node n) {
    return std::make_shared<const Node>(std::move(n));
}

}  // namespace

Region Region::all() {
    Node n;
    n.type = Node::Type::all;
    return Region(make_node(std::move(n)));
}

Region Region::disc(double cx, double cy, double r) {
    if (!(r >= 0.0)) throw std::domain_error("disc: radius must be nonnegative");
    Node n;
    n.type = Node::Type::disc;
    n.p0 = cx;
    n.p1 = cy;
    n.p2 = r;
    return Region(make_node(std::move(n)));
}

Region Region::rect(double x0, double y0, double x1, double y1) {
    if (x1 < x0 || y1 < y0) throw std::domain_error("rect: corners out of order");
    Node n;
    n.type = Node::Type::rect;
    n.p0 = x0;
    n.p1 = y0;
    n.p2 = x1;
    n.p3 = y1;
    return Region(make_node(std::move(n)));
}

Region Region::halfplane(double a, double b, double c) {
    if (a == 0.0 && b == 0.0) throw std::domain_error("halfplane: zero normal");
    Node n;
    n.type = Node::Type::halfplane;
    n.p0 = a;
    n.p1 = b;
    n.p2 = c;
    return Region(make_node(std::move(n)));
}

Region Region::levelset(std::vector<double> coeffs, double eps) {
    if (coeffs.empty()) throw std::domain_error("levelset: empty coefficient list");
    if (!(eps >= 0.0)) throw std::domain_error("levelset: eps must be nonnegative");
    Node n;
    n.type = Node::Type::levelset;
    n.coeffs = std::move(coeffs);
    n.p0 = eps;
    return Region(make_node(std::move(n)));
}

Region Region::strips(double width, double period) {
    if (!(period > 0.0)) throw std::domain_error("strips: period must be positive");
    if (!(width > 0.0) || width > period)
        throw std::domain_error("strips: width must be in (0, period]");
    Node n;
    n.type = Node::Type::strips;
    n.p0 = width;
    n.p1 = period;
    return Region(make_node(std::move(n)));
}

Region Region::union_of(std::vector<Region> parts) {
    if (parts.empty()) throw std::domain_error("union: needs at least one region");
    Node n;
    n.type = Node::Type::union_;
    for (auto& p : parts) n.children.push_back(p.node_);
    return Region(make_node(std::move(n)));
}

Region Region::intersect_of(std::vector<Region> parts) {
    if (parts.empty()) throw std::domain_error("intersect: needs at least one region");
    Node n;
    n.type = Node::Type::intersect;
    for (auto& p : parts) n.children.push_back(p.node_);
    return Region(make_node(std::move(n)));
}

Region Region::complement_of(Region r) {
    Node n;
    n.type = Node::Type::complement;
    n.children.push_back(r.node_);
    return Region(make_node(std::move(n)));
}

bool Region::contains(PhasePoint z) const { return node_contains(*node_, z); }

std::optional<double> Region::period_x() const { return node_period(*node_, true); }

std::optional<double> Region::period_y() const { return node_period(*node_, false); }

std::string Region::describe() const {
    std::ostringstream out;
    out.precision(17);
    node_describe(*node_, out);
    return out.str();
}

std::complex<double> gradedlex_poly_eval(const std::vector<double>& coeffs,
                                         std::complex<double> z) {
    const std::complex<double> zc = std::conj(z);
    std::complex<double> sum = 0.0;
    std::size_t idx = 0;
    for (int d = 0; idx < coeffs.size(); ++d) {
        // Block of degree d: z^d, z^{d-1} conj z, ..., conj z^d.
        for (int j = 0; j <= d && idx < coeffs.size(); ++j, ++idx) {
            if (coeffs[idx] == 0.0) continue;
            std::complex<double> term = coeffs[idx];
            for (int k = 0; k < d - j; ++k) term *= z;
            for (int k = 0; k < j; ++k) term *= zc;
            sum += term;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum class Kind { lparen, rparen, symbol, number, string, end };
    Kind kind = Kind::end;
    std::string text;
    double value = 0.0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        Token t;
        t.pos = pos_;
        if (pos_ >= text_.size()) {
            t.kind = Token::Kind::end;
            return t;
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            t.kind = Token::Kind::lparen;
            return t;
        }
        if (c == ')') {
            ++pos_;
            t.kind = Token::Kind::rparen;
            return t;
        }
        if (c == '"') {
            const std::size_t start = ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
            if (pos_ >= text_.size())
                throw region_parse_error(err("unterminated string", t.pos), t.pos);
            t.kind = Token::Kind::string;
            t.text = text_.substr(start, pos_ - start);
            ++pos_;
            return t;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        t.text = text_.substr(start, pos_ - start);
        char* endp = nullptr;
        const double v = std::strtod(t.text.c_str(), &endp);
        if (endp && *endp == '\0' && endp != t.text.c_str()) {
            t.kind = Token::Kind::number;
            t.value = v;
        } else {
            t.kind = Token::Kind::symbol;
        }
        return t;
    }

    static std::string err(const std::string& what, std::size_t pos) {
        std::ostringstream out;
        out << "region parse error at offset " << pos << ": " << what;
        return out.str();
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { advance(); }

    Region parse() {
        Region r = parse_expr();
        if (cur_.kind != Token::Kind::end)
            fail("trailing input after region expression");
        return r;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw region_parse_error(Lexer::err(what, cur_.pos), cur_.pos);
    }

    double number(const char* what) {
        if (cur_.kind != Token::Kind::number) fail(std::string("expected number (") + what + ")");
        const double v = cur_.value;
        advance();
        return v;
    }

    Region parse_expr() {
        if (cur_.kind != Token::Kind::lparen) fail("expected '('");
        advance();
        if (cur_.kind != Token::Kind::symbol) fail("expected operator symbol");
        const std::string op = cur_.text;
        advance();
        Region result = Region::all();
        if (op == "all") {
            result = Region::all();
        } else if (op == "disc") {
            const double cx = number("disc center x");
            const double cy = number("disc center y");
            const double r = number("disc radius");
            result = Region::disc(cx, cy, r);
        } else if (op == "rect") {
            const double x0 = number("rect x0");
            const double y0 = number("rect y0");
            const double x1 = number("rect x1");
            const double y1 = number("rect y1");
            result = Region::rect(x0, y0, x1, y1);
        } else if (op == "halfplane") {
            const double a = number("halfplane a");
            const double b = number("halfplane b");
            const double c = number("halfplane c");
            result = Region::halfplane(a, b, c);
        } else if (op == "levelset") {
            if (cur_.kind != Token::Kind::string)
                fail("expected quoted coefficient string");
            std::vector<double> coeffs;
            std::istringstream in(cur_.text);
            double v;
            while (in >> v) coeffs.push_back(v);
            if (coeffs.empty()) fail("empty coefficient string");
            advance();
            const double eps = number("levelset eps");
            result = Region::levelset(std::move(coeffs), eps);
        } else if (op == "strips") {
            const double width = number("strips width");
            const double period = number("strips period");
            result = Region::strips(width, period);
        } else if (op == "union" || op == "intersect") {
            std::vector<Region> parts;
            while (cur_.kind == Token::Kind::lparen) parts.push_back(parse_expr());
            if (parts.empty()) fail("expected at least one sub-region");
            result = op == "union" ? Region::union_of(std::move(parts))
                                   : Region::intersect_of(std::move(parts));
        } else if (op == "complement") {
            result = Region::complement_of(parse_expr());
        } else {
            fail("unknown operator '" + op + "'");
        }
        if (cur_.kind != Token::Kind::rparen) fail("expected ')'");
        advance();
        return result;
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace

Region parse_region(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Raster measures

namespace {

struct FractionResult {
    double fraction = 0.0;
    double error = 0.0;
};

// Single raster pass over subcell centers of the cell bounding box; the
// denominator is the rasterized cell itself, so fraction is exactly 1 for
// the full plane regardless of raster step.
FractionResult cell_fraction(const Region& region, const Cell& cell, double step) {
    const double cx = cell.center.real(), cy = cell.center.imag();
    const double half = cell.mode == CellMode::disc ? cell.R : 0.5 * cell.R;
    const int N = std::max(1, static_cast<int>(std::ceil(2.0 * half / step)));
    const double s = 2.0 * half / N;
    const double r2 = cell.R * cell.R;
    long cell_count = 0, hit_count = 0, straddle = 0;
    for (int i = 0; i < N; ++i) {
        const double x = cx - half + (i + 0.5) * s;
        for (int j = 0; j < N; ++j) {
            const double y = cy - half + (j + 0.5) * s;
            if (cell.mode == CellMode::disc) {
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy > r2) continue;
            }
            ++cell_count;
            const bool center_in = region.contains({x, y});
            if (center_in) ++hit_count;
            const double h = 0.5 * s;
            const bool c00 = region.contains({x - h, y - h});
            const bool c01 = region.contains({x - h, y + h});
            const bool c10 = region.contains({x + h, y - h});
            const bool c11 = region.contains({x + h, y + h});
            if (c00 != center_in || c01 != center_in || c10 != center_in || c11 != center_in)
                ++straddle;
        }
    }
    FractionResult out;
    if (cell_count > 0) {
        out.fraction = static_cast<double>(hit_count) / static_cast<double>(cell_count);
        out.error = static_cast<double>(straddle) / static_cast<double>(cell_count);
    }
    return out;
}

}  // namespace

AreaResult region_area_in(const Region& region, const Cell& cell, double raster_step) {
    if (!(raster_step > 0.0)) throw std::domain_error("region_area_in: raster step must be positive");
    const FractionResult f = cell_fraction(region, cell, raster_step);
    const double cell_area =
        cell.mode == CellMode::disc ? kPi * cell.R * cell.R : cell.R * cell.R;
    return {f.fraction * cell_area, f.error * cell_area};
}

DensityResult density_gamma(const Region& region, const DensityQuery& q) {
    if (!(q.R > 0.0)) throw std::domain_error("density_gamma: R must be positive");
    double step = q.raster_step;
    if (step == 0.0) step = q.R / 64.0;
    if (step > q.R / 32.0)
        throw std::domain_error("density_gamma: raster step must be <= R/32");

    const double anchor_step = q.R / 8.0;
    const auto px = region.period_x();
    const auto py = region.period_y();

    auto axis_anchors = [&](const std::optional<double>& p) {
        std::vector<double> anchors;
        if (p) {
            if (*p == 0.0) {
                anchors.push_back(0.0);
            } else {
                for (double a = 0.0; a < *p; a += anchor_step) anchors.push_back(a);
            }
        } else {
            if (!(q.search_halfwidth > 0.0))
                throw capability_error(
                    "density_gamma: aperiodic region requires a search window");
            for (double a = -q.search_halfwidth; a <= q.search_halfwidth; a += anchor_step)
                anchors.push_back(a);
        }
        return anchors;
    };

    const std::vector<double> xs = axis_anchors(px);
    const std::vector<double> ys = axis_anchors(py);

    DensityResult best;
    best.gamma = std::numeric_limits<double>::infinity();
    for (double ax : xs) {
        for (double ay : ys) {
            Cell cell{{ax, ay}, q.R, q.mode};
            const FractionResult f = cell_fraction(region, cell, step);
            ++best.anchors_scanned;
            if (f.fraction < best.gamma) {
                best.gamma = f.fraction;
                best.raster_error = f.error;
                best.argmin = {ax, ay};
            }
        }
    }
    return best;
}

PointSet jittered_lattice(double base_step, double jitter, double window_halfwidth,
                          std::uint64_t seed) {
    if (!(base_step > 0.0)) throw std::domain_error("jittered_lattice: step must be positive");
    if (jitter < 0.0 || jitter >= base_step / 2.0)
        throw std::domain_error("jittered_lattice: jitter must be in [0, step/2)");
    if (!(window_halfwidth > 0.0))
        throw std::domain_error("jittered_lattice: window must be positive");
    PointSet out;
    out.window_halfwidth = window_halfwidth;
    Rng rng(seed);
    const int kmax = static_cast<int>(std::floor(window_halfwidth / base_step));
    for (int n = -kmax; n <= kmax; ++n) {
        for (int m = -kmax; m <= kmax; ++m) {
            const double jx = rng.uniform(-jitter, jitter);
            const double jy = rng.uniform(-jitter, jitter);
            out.points.push_back({base_step * n + jx, base_step * m + jy});
        }
    }
    return out;
}

double beurling_lower_density(const PointSet& pts, double R_max) {
    if (!(R_max > 0.0)) throw std::domain_error("beurling density: R_max must be positive");
    const double W = pts.window_halfwidth;
    if (!(W > 0.0))
        throw std::domain_error("beurling density: point set has no declared window");
    if (R_max > W / 2.0)
        throw std::domain_error("beurling density: R_max exceeds window size / 4");
    if (pts.points.empty()) return 0.0;

    // Corner-anchored squares [z, z + R)^2 inside the window; the anchor
    // lattice carries a 0.37-step offset so square edges do not coincide
    // with lattice-aligned points.
    const double step = R_max / 8.0;
    const double offset = 0.37 * step;
    long best = std::numeric_limits<long>::max();
    for (double ax = -W + offset; ax + R_max <= W; ax += step) {
        for (double ay = -W + offset; ay + R_max <= W; ay += step) {
            long count = 0;
            for (const PhasePoint& p : pts.points) {
                if (p.real() >= ax && p.real() < ax + R_max && p.imag() >= ay &&
                    p.imag() < ay + R_max)
                    ++count;
            }
            best = std::min(best, count);
        }
    }
    if (best == std::numeric_limits<long>::max()) return 0.0;
    return static_cast<double>(best) / (R_max * R_max);
}

SeparationReport separation_check(const PointSet& pts) {
    SeparationReport rep;
    rep.min_gap = std::numeric_limits<double>::infinity();
    const auto& p = pts.points;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            rep.min_gap = std::min(rep.min_gap, std::abs(p[i] - p[j]));
    rep.uniformly_separated = rep.min_gap > 0.0;
    return rep;
}

}  // namespace tfsamp
