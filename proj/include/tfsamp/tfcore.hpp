#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "tfsamp/geometry.hpp"
#include "tfsamp/specfun.hpp"

namespace tfsamp {

// Signal f on the line: finite Hermite expansion sum a_k h_k (K <= 32), or
// uniform complex samples on [-T, T] evaluated by linear interpolation
// (sample step at most T/64). At least one nonzero entry required.
class Signal {
public:
    enum class Kind { hermite_expansion, sampled };

    static Signal hermite_expansion(std::vector<std::complex<double>> coeffs);
    static Signal sampled(std::vector<std::complex<double>> values, double T);

    Kind kind() const { return kind_; }
    // Expansion coefficients a_0..a_K (expansion kind only).
    const std::vector<std::complex<double>>& coefficients() const;
    double support_halfwidth() const { return T_; }
    double l2() const { return l2_; }
    std::complex<double> eval(double t) const;
    // Interior non-smooth points (the sample grid for sampled signals).
    std::vector<double> kinks() const;

private:
    Signal() = default;

    Kind kind_ = Kind::hermite_expansion;
    std::vector<std::complex<double>> coeffs_;
    std::vector<std::complex<double>> values_;
    double T_ = 0.0;  // support half-width (effective for expansions)
    double step_ = 0.0;
    double l2_ = 0.0;
};

// V_g f sampled on the square [-T_z, T_z]^2 with uniform step; step must
// divide 2 T_z. Storage is column-major in x: values[ix * npts + ixi].
struct STFTGrid {
    double T_z = 0.0;
    double step = 0.0;
    int npts = 0;
    std::vector<std::complex<double>> values;

    double coord(int i) const { return -T_z + step * i; }
    std::complex<double> at(int ix, int ixi) const {
        return values[static_cast<std::size_t>(ix) * npts + ixi];
    }
};

// V_g f(z) = integral f(t) conj(g(t - x)) e^{-2 pi i xi t} dt, z = x + i xi,
// by composite Gauss-Legendre with panels split at window/signal kinks and
// panel length at most min(1, 4 / max(1, |xi|)).
std::complex<double> stft_eval(const Signal& f, const WindowSpec& g, PhasePoint z);

STFTGrid stft_grid(const Signal& f, const WindowSpec& g, double T_z, double step);

// <pi(w) h_n, pi(z) h_n> by quadrature (ground truth).
std::complex<double> reproducing_kernel(int n, PhasePoint z, PhasePoint w);

// Closed form e^{-2 pi i (xi - nu) u} e^{-i pi (x - u)(xi - nu)}
//   L_n(pi |z - w|^2) e^{-pi |z - w|^2 / 2};
// cross-checked against the quadrature path in the test suite and used as
// the fast path inside disc integrals.
std::complex<double> reproducing_kernel_closed(int n, PhasePoint z, PhasePoint w);

// (sum |V|^p step^2)^{1/p} over grid points (inside region, if given).
// Requires 1 <= p < infinity.
double lp_norm(const STFTGrid& grid, double p);
double lp_norm(const STFTGrid& grid, double p, const Region& region);

// | V_{h_n} f(z) - nu_n(R)^{-1} * integral_{D(z,R)} V_{h_n} f(w)
//   <pi(w) h_n, pi(z) h_n> dw |  with tensor polar quadrature
// (Gauss-Legendre radial x uniform angular). Pure quadrature error.
double local_repr_residual(const Signal& f, int n, double R, PhasePoint z,
                           int radial_nodes = 64, int angular_nodes = 128);

// CSV rows "x,xi,re,im", x-major.
void write_grid_csv(const STFTGrid& grid, std::ostream& out);

}  // namespace tfsamp
