#include "wfs/spectral_table.hpp"

#include <algorithm>
#include <cmath>

#include "wfs/fft.hpp"

namespace wfs::fttab {

double KaiserInterp::kernel(double u) {
  const double au = std::fabs(u);
  if (au >= kHalfTaps) return 0.0;
  const double s = (u == 0.0) ? 1.0
                              : std::sin(kPi * kCut * u) / (kPi * kCut * u);
  const double r = au / kHalfTaps;
  const double w = std::cyl_bessel_i(0.0, kBeta * std::sqrt(1.0 - r * r)) /
                   std::cyl_bessel_i(0.0, kBeta);
  return kCut * s * w;
}

namespace {
// Kernel samples on a fine grid over [0, kHalfTaps]; Catmull-Rom reads keep
// the tap evaluation off the Bessel function in hot loops.
constexpr int kKernelGridPerUnit = 1024;
const std::vector<double>& kernel_grid() {
  static const std::vector<double> grid = []() {
    const int n = KaiserInterp::kHalfTaps * kKernelGridPerUnit + 4;
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      g[size_t(i)] = KaiserInterp::kernel(double(i) / kKernelGridPerUnit);
    return g;
  }();
  return grid;
}
}  // namespace

double KaiserInterp::kernel_fast(double u) {
  const double au = std::fabs(u);
  if (au >= kHalfTaps) return 0.0;
  const auto& g = kernel_grid();
  const double m = au * kKernelGridPerUnit;
  long i = long(m);
  double f = m - double(i);
  if (i == 0) { i = 1; f -= 1.0; }  // keep the 4-point stencil in range
  const double ym1 = g[size_t(i - 1)], y0 = g[size_t(i)], y1 = g[size_t(i + 1)],
               y2 = g[size_t(i + 2)];
  // Catmull-Rom
  const double a0 = -0.5 * ym1 + 1.5 * y0 - 1.5 * y1 + 0.5 * y2;
  const double a1 = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
  const double a2 = -0.5 * ym1 + 0.5 * y1;
  return ((a0 * f + a1) * f + a2) * f + y0;
}

cplx UniformTable::operator()(double t) const {
  if (empty()) throw Error(ErrorCode::invalid_argument, "empty table");
  const double m = (t - t_min_) / dt_;
  const long k0 = long(std::floor(m));
  const long lo = k0 - (KaiserInterp::kHalfTaps - 1);
  const long hi = k0 + KaiserInterp::kHalfTaps;
  if (lo < 0 || hi >= long(values_.size()))
    throw Error(ErrorCode::invalid_argument, "table read out of range");
  cplx acc(0.0);
  for (long k = lo; k <= hi; ++k)
    acc += values_[size_t(k)] * KaiserInterp::kernel_fast(m - double(k));
  return acc;
}

SampledFT::SampledFT(const std::function<cplx(double)>& f,
                     double support_radius, double t_max, int log2_samples) {
  const double R = support_radius;
  const size_t n = size_t(1) << log2_samples;
  const double dt_target = kPi / (KaiserInterp::kOversample * R);
  const double dx = 2.0 * R / double(n);
  size_t n_pad = n;
  while (kTwoPi / (double(n_pad) * dx) > dt_target) n_pad *= 2;

  std::vector<cplx> buf(n_pad, cplx(0.0));
  for (size_t j = 0; j < n; ++j) {
    const double x = -R + double(j) * dx;
    buf[j] = f(x);
  }
  fft::forward(buf);
  const double dt = kTwoPi / (double(n_pad) * dx);
  const long k_max = std::min<long>(
      long(n_pad / 2) - 1,
      long(std::ceil(t_max / dt)) + KaiserInterp::kHalfTaps + 2);
  std::vector<cplx> vals(size_t(2 * k_max + 1));
  for (long k = -k_max; k <= k_max; ++k) {
    const double t = double(k) * dt;
    const size_t idx = size_t((k + long(n_pad)) % long(n_pad));
    // Continuum phase: samples start at x = -R.
    vals[size_t(k + k_max)] = dx * std::polar(1.0, R * t) * buf[idx];
  }
  table_ = UniformTable(-double(k_max) * dt, dt, std::move(vals));
}

cplx SampledFT::operator()(double t) const {
  if (!table_.covers(t))
    throw Error(ErrorCode::invalid_argument, "SampledFT read out of range");
  return table_(t);
}

RadialTable::RadialTable(const std::function<double(double)>& profile,
                         double dt, double t_max) {
  const int half = KaiserInterp::kHalfTaps + 2;
  pad_ = double(half) * dt;
  const long n = long(std::ceil(t_max / dt)) + half + 1;
  raw_.resize(size_t(n + half));
  std::vector<cplx> vals(size_t(n + half));
  for (long k = -half; k < n; ++k) {
    const double v = profile(std::fabs(double(k) * dt));
    raw_[size_t(k + half)] = v;
    vals[size_t(k + half)] = cplx(v, 0.0);
    max_abs_ = std::max(max_abs_, std::fabs(v));
  }
  table_ = UniformTable(-pad_, dt, std::move(vals));
}

double RadialTable::operator()(double t) const {
  const double a = std::fabs(t);
  if (!table_.covers(a))
    throw Error(ErrorCode::invalid_argument, "RadialTable read out of range");
  return table_(a).real();
}

double RadialTable::support_radius(double threshold) const {
  const double dt = table_.dt();
  const int half = KaiserInterp::kHalfTaps + 2;
  for (long k = long(raw_.size()) - 1; k >= half; --k) {
    if (std::fabs(raw_[size_t(k)]) > threshold)
      return std::min(double(k - half + 1) * dt, t_max());
  }
  return 0.0;
}

}  // namespace wfs::fttab
