#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfs {

using cplx = std::complex<double>;

// Point in R^n, n in {1,2}; unused coordinates are zero.
using Pt = std::array<double, 2>;

inline Pt pt(double x) { return {x, 0.0}; }
inline Pt pt(double x, double y) { return {x, y}; }

inline double dot(const Pt& a, const Pt& b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += a[d] * b[d];
  return s;
}

inline double norm(const Pt& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Floor used before taking logs of decay statistics.
inline constexpr double kLogClamp = 1e-300;

enum class ErrorCode {
  invalid_argument,
  invalid_config,
  nyquist_exceeded,
  window_unresolved,
  resolution_budget,
  unsupported,
  unresolved_band,
  io_failure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(tag(code) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

  static std::string tag(ErrorCode c) {
    switch (c) {
      case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
      case ErrorCode::invalid_config: return "INVALID_CONFIG";
      case ErrorCode::nyquist_exceeded: return "NYQUIST_EXCEEDED";
      case ErrorCode::window_unresolved: return "WINDOW_UNRESOLVED";
      case ErrorCode::resolution_budget: return "RESOLUTION_BUDGET";
      case ErrorCode::unsupported: return "UNSUPPORTED";
      case ErrorCode::unresolved_band: return "UNRESOLVED_BAND";
      case ErrorCode::io_failure: return "IO_FAILURE";
    }
    return "ERROR";
  }

 private:
  ErrorCode code_;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Least squares y = a*x + b. r_squared reported as 1 when the data has no
// variance (a constant sequence is a perfect fit).
inline LineFit least_squares(const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error(ErrorCode::invalid_argument, "least_squares needs >= 2 points");
  const size_t n = xs.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
  mx /= double(n); my /= double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx; sxy += dx * dy; syy += dy * dy;
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace wfs
