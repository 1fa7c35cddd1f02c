#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wfs/common.hpp"

namespace wfs::dist {

// Uniform periodic grid over [-L, L)^n with 2^log2n points per axis.
struct Grid {
  int dim = 1;
  double L = kPi;
  int log2n = 18;

  long n_per_axis() const { return 1L << log2n; }
  double dx() const { return 2.0 * L / double(n_per_axis()); }
  double dxi() const { return kPi / L; }  // dual lattice spacing
  long size() const {
    long n = n_per_axis();
    return dim == 1 ? n : n * n;
  }
  double coord(long idx) const { return -L + double(idx) * dx(); }
  long nearest_index(double x) const {
    long k = std::lround((x + L) / dx());
    const long n = n_per_axis();
    k %= n;
    if (k < 0) k += n;
    return k;
  }
  // Row-major flattening for dim==2: idx = i1*n + i2.
  long flat(long i1, long i2) const { return i1 * n_per_axis() + i2; }
};

struct SampledSignal {
  Grid grid;
  std::vector<cplx> values;
};

// Smooth compactly supported cutoff: 1 on [-L/2, L/2]^n, supported in
// [-3L/4, 3L/4]^n (margin L/4 from the box boundary).
class Cutoff {
 public:
  explicit Cutoff(double L) : L_(L), w_(L / 4.0) {}
  double operator()(const Pt& x, int dim) const {
    double v = axis(x[0]);
    if (dim == 2) v *= axis(x[1]);
    return v;
  }
  double axis(double t) const;
  double plateau() const { return L_ / 2.0; }
  double support() const { return 0.75 * L_; }
  double transition_lo() const { return L_ / 2.0; }
  double transition_hi() const { return 0.75 * L_; }
  double L() const { return L_; }

 private:
  double L_, w_;
};

struct GroundTruthPoint {
  Pt x0{0.0, 0.0};
  std::vector<Pt> directions;  // unit vectors; empty means "all directions"
  bool all_directions = false;
  double s_star = 0.0;
  // Singular support along a whole line x.normal = offset (2-D jumps).
  bool is_line = false;
  Pt line_normal{1.0, 0.0};
  double line_offset = 0.0;
};

struct GroundTruth {
  std::vector<GroundTruthPoint> singular;

  // REGULAR iff no singular point within `x_tol` whose direction set contains
  // a vector within `angle_tol` radians of `dir`.
  bool is_singular_at(const Pt& x, const Pt& dir, int dim, double x_tol = 1e-9,
                      double angle_tol = 1e-6) const;
  std::optional<double> s_star_at(const Pt& x, int dim,
                                  double x_tol = 1e-9) const;
};

namespace detail {
class DistImpl;
}

// Catalog entry: a tempered test signal confined to the box by the standard
// cutoff, with a grid sampler, an optional analytic transform, and known
// microlocal ground truth.
class TestDistribution {
 public:
  TestDistribution() = default;
  explicit TestDistribution(std::shared_ptr<const detail::DistImpl> impl)
      : impl_(std::move(impl)) {}

  // Spec strings: "delta@0.0", "heaviside@0.5", "powersing@0.0,a=0.25",
  // "planewave,k=8", "smoothbump", "halfplane,nu=(0.6,0.8),c=0.0",
  // "sum(delta@-1;heaviside@1)" with optional "w*" term weights.
  static TestDistribution parse(const std::string& spec, int dim, double L);

  const std::string& spec() const;
  int dim() const;
  double box_L() const;

  bool has_analytic_ft() const;
  cplx fourier(const Pt& eta) const;  // throws Error(unsupported) if absent

  GroundTruth ground_truth() const;

  SampledSignal sample(const Grid& grid) const;

  // Largest |x| (inf-norm) carrying singular support or distribution mass
  // outside the cutoff plateau; used to validate grid margins.
  double content_radius() const;

  // Dominant phase radius of the transform (|x0| of translated parts); a
  // hint for oscillation-aware quadrature.
  double phase_radius() const;

  bool real_valued() const;

  // Scaled copy (weights multiplied by c).
  TestDistribution scaled(double c) const;

 private:
  std::shared_ptr<const detail::DistImpl> impl_;
};

}  // namespace wfs::dist
