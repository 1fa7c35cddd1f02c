#pragma once

#include <string>
#include <vector>

#include "wfs/distributions.hpp"
#include "wfs/windows.hpp"

namespace wfs::engine {

// Geometric scale schedule lambda_j = lambda0 * ratio^j.
struct LambdaSchedule {
  double lambda0 = 4.0;
  double ratio = std::sqrt(2.0);
  int count = 21;

  void validate() const {
    if (count < 1)
      throw Error(ErrorCode::invalid_argument, "schedule must be nonempty");
    if (!(lambda0 >= 1.0))
      throw Error(ErrorCode::invalid_argument, "schedule needs lambda0 >= 1");
    if (!(ratio > 1.0))
      throw Error(ErrorCode::invalid_argument, "schedule needs ratio > 1");
  }
  std::vector<double> values() const {
    validate();
    std::vector<double> v(size_t(count));
    double l = lambda0;
    for (int j = 0; j < count; ++j, l *= ratio) v[size_t(j)] = l;
    return v;
  }
  double lambda_max() const { return lambda0 * std::pow(ratio, count - 1); }
};

// Position box K around x0 and frequency box V around xi0, each with a
// uniform probe lattice. The closure of V must exclude the origin.
struct PhaseRegion {
  int dim = 1;
  Pt x0{0.0, 0.0};
  Pt xi0{1.0, 0.0};
  double k_halfwidth = 0.2;
  double v_halfwidth = 0.2;
  int x_probes_per_axis = 21;   // 1-D default; 2-D scenarios use 9
  int xi_probes_per_axis = 9;

  void validate() const;
  std::vector<Pt> x_points() const;
  std::vector<Pt> xi_points() const;
  long n_x() const {
    return dim == 1 ? x_probes_per_axis
                    : long(x_probes_per_axis) * x_probes_per_axis;
  }
  long n_xi() const {
    return dim == 1 ? xi_probes_per_axis
                    : long(xi_probes_per_axis) * xi_probes_per_axis;
  }
  double x_spacing() const {
    return x_probes_per_axis > 1 ? 2.0 * k_halfwidth / (x_probes_per_axis - 1)
                                 : 2.0 * k_halfwidth;
  }
  double xi_spacing() const {
    return xi_probes_per_axis > 1
               ? 2.0 * v_halfwidth / (xi_probes_per_axis - 1)
               : 2.0 * v_halfwidth;
  }
  // Riemann cell weights for the inner double integral.
  double x_cell() const { return std::pow(x_spacing(), dim); }
  double xi_cell() const { return std::pow(xi_spacing(), dim); }
  double max_abs_xi() const;  // sup-norm over the closure of V, per axis max
};

enum class Path { automatic, sampled, quadrature };

Path path_from_string(const std::string& s);
std::string path_to_string(Path p);

struct EngineOptions {
  int log2n_1d = 18;
  int log2n_2d = 10;
  double memory_budget_bytes = 2.0e9;
  int threads = 0;  // 0 = WFS_THREADS env or hardware concurrency
  Path path = Path::automatic;
};

int resolve_threads(int requested);

// Values W_{phi_lambda} u(x, lambda xi) on schedule x region lattices,
// indexed [lambda j][x index][xi index].
struct WptVolume {
  PhaseRegion region;
  LambdaSchedule schedule;
  std::string window_name;
  std::string dist_spec;
  Path path_used = Path::automatic;
  std::vector<cplx> values;

  long n_x() const { return region.n_x(); }
  long n_xi() const { return region.n_xi(); }
  const cplx& at(int j, long xi_idx, long x_idx) const {
    return values[size_t((long(j) * n_x() + x_idx) * n_xi() + xi_idx)];
  }
  cplx& at(int j, long xi_idx, long x_idx) {
    return values[size_t((long(j) * n_x() + x_idx) * n_xi() + xi_idx)];
  }
};

// Frequency-side path: (2pi)^{-n} int u-hat(eta) conj(phi-hat_lambda(eta-xi))
// e^{i x.(eta-xi)} d eta over the window band, adaptive quadrature.
cplx wpt_quadrature(const dist::TestDistribution& u, const win::ScaledWindow& w,
                    const Pt& x, const Pt& xi);

// Grid path: Riemann sum dx^n sum_y conj(phi_lambda(y-x)) u(y) e^{-i y.xi},
// exact trigonometric sums over the window's effective support (one FFT per
// x when every requested xi sits on the dual lattice).
std::vector<cplx> wpt_sampled(const dist::SampledSignal& u,
                              const win::ScaledWindow& w,
                              const std::vector<Pt>& xs,
                              const std::vector<Pt>& xis);

// Full dual-lattice spectrum of the windowed signal at one position (FFT
// order); used by the energy identity and bin-aligned consumers.
std::vector<cplx> wpt_sampled_spectrum(const dist::SampledSignal& u,
                                       const win::ScaledWindow& w, const Pt& x);

WptVolume scaled_volume(const dist::TestDistribution& u, const win::Window& w,
                        const PhaseRegion& region,
                        const LambdaSchedule& schedule,
                        const EngineOptions& opt = {});

// Grid admissibility checks shared with config validation (throw on failure).
void check_sampled_preconditions(const dist::Grid& grid,
                                 const PhaseRegion& region,
                                 const LambdaSchedule& schedule,
                                 double memory_budget_bytes);

dist::Grid default_grid(int dim, double L, const EngineOptions& opt);

}  // namespace wfs::engine
