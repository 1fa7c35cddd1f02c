#pragma once

#include <functional>
#include <vector>

#include "wfs/common.hpp"

namespace wfs::fttab {

// Windowed-sinc interpolation on a uniform grid of samples of a function of
// exponential type <= band. Sample spacing pi/(kOversample*band) gives
// ~1e-11 absolute accuracy relative to the signal scale.
struct KaiserInterp {
  static constexpr int kHalfTaps = 16;
  static constexpr double kBeta = 24.0;
  static constexpr double kCut = 0.65;  // lowpass cut as fraction of Nyquist
  static constexpr double kOversample = 6.0;

  static double kernel(double u);       // exact; u in sample units
  static double kernel_fast(double u);  // cubic read of a precomputed grid
};

// Uniform table over [t_min, t_max] with complex values + interpolation.
class UniformTable {
 public:
  UniformTable() = default;
  UniformTable(double t_min, double dt, std::vector<cplx> values)
      : t_min_(t_min), dt_(dt), values_(std::move(values)) {}

  bool empty() const { return values_.empty(); }
  double t_min() const { return t_min_; }
  double t_max() const { return t_min_ + dt_ * double(values_.size() - 1); }
  double dt() const { return dt_; }

  // Interpolated value; `t` must lie inside [t_min + margin, t_max - margin]
  // where margin = kHalfTaps*dt. Out-of-range reads throw.
  cplx operator()(double t) const;

  // True when t is coverable by interpolation.
  bool covers(double t) const {
    const double m = KaiserInterp::kHalfTaps * dt_;
    return !empty() && t >= t_min_ + m && t <= t_max() - m;
  }

 private:
  double t_min_ = 0.0;
  double dt_ = 0.0;
  std::vector<cplx> values_;
};

// Continuous Fourier transform F(t) = int f(x) e^{-i x t} dx of a smooth
// function supported in [-support_radius, support_radius], tabulated on
// [-t_max, t_max] via a fine Riemann grid + FFT. Spectrally accurate for
// smooth compactly supported f; the table is 4x oversampled relative to the
// transform's exponential type, so interpolation is ~1e-11.
class SampledFT {
 public:
  SampledFT() = default;
  SampledFT(const std::function<cplx(double)>& f, double support_radius,
            double t_max, int log2_samples = 18);

  cplx operator()(double t) const;
  bool covers(double t) const { return table_.covers(t); }
  double t_max() const { return table_.empty() ? 0.0 : table_.t_max(); }

 private:
  UniformTable table_;
};

// Radial table of a real even profile on [0, t_max]; values extended evenly.
// Build callback computes the profile at one abscissa.
class RadialTable {
 public:
  RadialTable() = default;
  RadialTable(const std::function<double(double)>& profile, double dt,
              double t_max);

  double operator()(double t) const;  // even extension
  bool covers(double t) const { return table_.covers(std::fabs(t)); }
  double t_max() const {
    return table_.empty()
               ? 0.0
               : table_.t_max() - KaiserInterp::kHalfTaps * table_.dt();
  }
  double max_abs() const { return max_abs_; }

  // Smallest r such that |profile| <= threshold for all tabulated t >= r.
  double support_radius(double threshold) const;

 private:
  UniformTable table_;  // over [-pad, t_max+pad] built from even extension
  std::vector<double> raw_;
  double pad_ = 0.0;
  double max_abs_ = 0.0;
};

}  // namespace wfs::fttab
