#pragma once

#include <array>
#include <memory>
#include <string>

#include "wfs/common.hpp"

namespace wfs::win {

namespace detail {
class WindowImpl;
}

// Immutable basic wave packet: a nonzero Schwartz window with evaluators for
// the function and its Fourier transform (convention F[f](t) = int f e^{-ixt}).
// Safe for concurrent reads; all caches are built at construction.
class Window {
 public:
  explicit Window(std::shared_ptr<const detail::WindowImpl> impl)
      : impl_(std::move(impl)) {}

  const std::string& name() const;
  int dim() const;
  bool analytic_ft() const;
  double l2_norm() const;

  bool real_valued() const;     // phi real in space
  bool ft_real_even() const;    // phi-hat real and even
  bool separable() const;       // 2D tensor product of per-axis factors

  cplx eval(const Pt& x) const;
  cplx eval_ft(const Pt& eta) const;

  // Per-axis factors, valid when separable() (1D windows are trivially so).
  double eval_axis(int axis, double t) const;

  double max_abs() const;     // sup |phi|
  double max_abs_ft() const;  // sup |phi-hat|

  // Radius beyond which |phi| <= rel * max_abs().
  double support_radius(double rel) const;
  // Radius beyond which |phi-hat| <= rel * max_abs_ft().
  double ft_support_radius(double rel) const;

  // Radial band [inner, outer] carrying phi-hat up to the 1e-14 threshold;
  // inner > 0 for windows whose transform vanishes near the origin.
  struct FtBand {
    double inner = 0.0;
    double outer = 0.0;
  };
  FtBand ft_band() const;

  const detail::WindowImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const detail::WindowImpl> impl_;
};

Window make_gaussian(int dim);
Window make_hermite(int dim, int k);
Window make_annulus(int dim, double r1, double r2);
Window make_bump(int dim);

// Catalog lookup: "gaussian", "hermite1", "hermite2", "annulus(r1,r2)", "bump".
Window window_by_name(const std::string& name, int dim);

// int x^alpha phi(x) dx by adaptive quadrature (absolute error <= 1e-8);
// alpha per axis, |alpha| <= 8. For transforms that vanish identically near
// the origin the high-order moments are evaluated through the spectral
// identity (see notes in the implementation).
double moment(const Window& w, const std::array<int, 2>& alpha);

// phi_lambda(x) = lambda^{n/4} phi(lambda^{1/2} x); L2-isometric in lambda.
class ScaledWindow {
 public:
  ScaledWindow(Window base, double lambda);

  const Window& base() const { return base_; }
  double lambda() const { return lambda_; }
  int dim() const { return base_.dim(); }
  double l2_norm() const { return base_.l2_norm(); }

  cplx eval(const Pt& x) const;
  cplx eval_ft(const Pt& eta) const;
  double eval_axis(int axis, double t) const;
  double space_factor() const { return space_factor_; }
  double sqrt_lambda() const { return sqrt_lambda_; }

  double support_radius(double rel) const {
    return base_.support_radius(rel) / sqrt_lambda_;
  }
  double ft_support_radius(double rel) const {
    return base_.ft_support_radius(rel) * sqrt_lambda_;
  }
  Window::FtBand ft_band() const {
    auto b = base_.ft_band();
    return {b.inner * sqrt_lambda_, b.outer * sqrt_lambda_};
  }

 private:
  Window base_;
  double lambda_;
  double sqrt_lambda_;
  double space_factor_;  // lambda^{n/4}
  double ft_factor_;     // lambda^{-n/4}
};

ScaledWindow scale(const Window& w, double lambda);

}  // namespace wfs::win
