#include "wfs/windows.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wfs/quadrature.hpp"
#include "wfs/spectral_table.hpp"

namespace wfs::win {

namespace detail {

class WindowImpl {
 public:
  virtual ~WindowImpl() = default;

  std::string name;
  int dim = 1;
  bool analytic = true;
  bool real_valued = true;
  bool ft_real_even = true;
  bool is_separable = true;
  double l2 = 0.0;
  double max_abs = 0.0;
  double max_abs_ft = 0.0;

  virtual cplx eval(const Pt& x) const = 0;
  virtual cplx eval_ft(const Pt& eta) const = 0;
  virtual double eval_axis(int, double) const {
    throw Error(ErrorCode::unsupported, "window is not separable");
  }
  virtual double support_radius(double rel) const = 0;
  virtual double ft_support_radius(double rel) const = 0;
  virtual Window::FtBand ft_band() const {
    return {0.0, ft_support_radius(1e-14)};
  }
};

namespace {

constexpr double kFtThreshold = 1e-14;

double sq(double x) { return x * x; }

// exp(-1/t) smoothstep: 0 for t<=0, 1 for t>=1, C-infinity.
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

long double smoothstep_ld(long double t) {
  if (t <= 0.0L) return 0.0L;
  if (t >= 1.0L) return 1.0L;
  const long double a = expl(-1.0L / t);
  const long double b = expl(-1.0L / (1.0L - t));
  return a / (a + b);
}

// ---------------------------------------------------------------------------

class GaussianImpl : public WindowImpl {
 public:
  explicit GaussianImpl(int d) {
    name = "gaussian";
    dim = d;
    l2 = std::pow(kPi, 0.25 * d);
    max_abs = 1.0;
    max_abs_ft = std::pow(kTwoPi, 0.5 * d);
  }
  cplx eval(const Pt& x) const override {
    return std::exp(-0.5 * dot(x, x, dim));
  }
  cplx eval_ft(const Pt& eta) const override {
    return std::pow(kTwoPi, 0.5 * dim) * std::exp(-0.5 * dot(eta, eta, dim));
  }
  double eval_axis(int, double t) const override {
    return std::exp(-0.5 * t * t);
  }
  double support_radius(double rel) const override {
    return std::sqrt(-2.0 * std::log(rel));
  }
  double ft_support_radius(double rel) const override {
    return std::sqrt(-2.0 * std::log(rel));
  }
};

// Hermite-type window: H_k(x1) e^{-|x|^2/2}, H_1 = x, H_2 = x^2 - 1.
class HermiteImpl : public WindowImpl {
 public:
  HermiteImpl(int d, int k) : k_(k) {
    name = "hermite" + std::to_string(k);
    dim = d;
    ft_real_even = (k == 2);
    // ||H_1 g||^2 = sqrt(pi)/2, ||H_2 g||^2 = (3/4) sqrt(pi) per first axis,
    // times sqrt(pi) per extra Gaussian axis.
    const double first = (k == 1) ? 0.5 * std::sqrt(kPi) : 0.75 * std::sqrt(kPi);
    l2 = std::sqrt(first * std::pow(std::sqrt(kPi), d - 1));
    max_abs = axis_max();
    max_abs_ft = axis_ft_max() * ((d == 2) ? std::sqrt(kTwoPi) : 1.0);
  }
  double h(double t) const {
    const double g = std::exp(-0.5 * t * t);
    return (k_ == 1) ? t * g : (t * t - 1.0) * g;
  }
  // F[x g] = -i sqrt(2pi) t e^{-t^2/2};  F[(x^2-1) g] = -sqrt(2pi) t^2 e^{-t^2/2}
  cplx h_ft(double t) const {
    const double g = std::sqrt(kTwoPi) * std::exp(-0.5 * t * t);
    return (k_ == 1) ? cplx(0.0, -t * g) : cplx(-t * t * g, 0.0);
  }
  cplx eval(const Pt& x) const override {
    double v = h(x[0]);
    if (dim == 2) v *= std::exp(-0.5 * x[1] * x[1]);
    return v;
  }
  cplx eval_ft(const Pt& eta) const override {
    cplx v = h_ft(eta[0]);
    if (dim == 2) v *= std::sqrt(kTwoPi) * std::exp(-0.5 * eta[1] * eta[1]);
    return v;
  }
  double eval_axis(int axis, double t) const override {
    return axis == 0 ? h(t) : std::exp(-0.5 * t * t);
  }
  double support_radius(double rel) const override {
    return scan_radius([this](double t) { return std::fabs(h(t)); },
                       rel * max_abs);
  }
  double ft_support_radius(double rel) const override {
    return scan_radius([this](double t) { return std::abs(h_ft(t)); },
                       rel * max_abs_ft);
  }

 private:
  int k_;
  double axis_max() const {
    double m = 0;
    for (double t = 0; t < 6; t += 1e-3) m = std::max(m, std::fabs(h(t)));
    return m;
  }
  double axis_ft_max() const {
    double m = 0;
    for (double t = 0; t < 6; t += 1e-3) m = std::max(m, std::abs(h_ft(t)));
    return m;
  }
  template <typename F>
  static double scan_radius(const F& f, double thr) {
    double r = 40.0;
    for (double t = 40.0; t >= 0.0; t -= 1e-2) {
      if (f(t) > thr) { r = t + 1e-2; break; }
    }
    return r;
  }
};

// ---------------------------------------------------------------------------
// Annulus window: phi-hat is a radial C-infinity bump equal to 1 on
// [r1+delta, r2-delta], supported in [r1, r2], delta = (r2-r1)/4; phi is the
// inverse transform, cached on a uniform grid.

class AnnulusImpl : public WindowImpl {
 public:
  AnnulusImpl(int d, double r1, double r2) : r1_(r1), r2_(r2) {
    if (!(r1 > 0.0) || !(r2 > r1))
      throw Error(ErrorCode::invalid_argument,
                  "annulus window requires 0 < r1 < r2");
    name = "annulus(" + fmt(r1) + "," + fmt(r2) + ")";
    dim = d;
    delta_ = (r2 - r1) / 4.0;
    is_separable = (d == 1);

    const double extent = (d == 1) ? 520.0 : 220.0;
    const double dt = kPi / (fttab::KaiserInterp::kOversample * r2);
    if (d == 1) {
      table_ = fttab::RadialTable(
          [this](double x) { return inverse_ft_1d(x); }, dt, extent);
      // Plancherel for the profile: ||phi||^2 = (1/2pi) * 2 * int P^2 dr.
      quad::Options o;
      o.abs_tol = 1e-14;
      l2 = std::sqrt(
          (1.0 / kPi) *
          quad::integrate_real([this](double r) { return sq(profile(r)); },
                               r1_, r2_, o));
    } else {
      table_ = fttab::RadialTable(
          [this](double x) { return inverse_ft_2d(x); }, dt, extent);
      quad::Options o;
      o.abs_tol = 1e-14;
      l2 = std::sqrt(
          (0.5 / kPi) *
          quad::integrate_real(
              [this](double r) { return sq(profile(r)) * r; }, r1_, r2_, o));
    }
    max_abs = table_.max_abs();
    max_abs_ft = 1.0;
  }

  double profile(double r) const {
    return smoothstep((r - r1_) / delta_) * smoothstep((r2_ - r) / delta_);
  }
  long double profile_ld(long double r) const {
    const long double d = delta_;
    return smoothstep_ld((r - (long double)r1_) / d) *
           smoothstep_ld(((long double)r2_ - r) / d);
  }

  cplx eval(const Pt& x) const override {
    const double r = norm(x, dim);
    if (!table_.covers(r)) return 0.0;
    return table_(r);
  }
  cplx eval_ft(const Pt& eta) const override {
    return profile(norm(eta, dim));
  }
  double eval_axis(int, double t) const override {
    if (!table_.covers(t)) return 0.0;
    return table_(t);
  }
  double support_radius(double rel) const override {
    return table_.support_radius(rel * max_abs);
  }
  double ft_support_radius(double) const override { return r2_; }
  Window::FtBand ft_band() const override { return {r1_, r2_}; }

  double r1() const { return r1_; }
  double r2() const { return r2_; }

 private:
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }
  double inverse_ft_1d(double x) const {
    quad::Options o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-13;
    o.osc_freq = std::fabs(x);
    o.min_panels = 8;
    return quad::integrate_real(
               [this, x](double r) { return profile(r) * std::cos(r * x); },
               r1_, r2_, o) /
           kPi;
  }
  double inverse_ft_2d(double x) const {
    quad::Options o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-13;
    o.osc_freq = std::fabs(x);
    o.min_panels = 8;
    return quad::integrate_real(
               [this, x](double r) {
                 return profile(r) * std::cyl_bessel_j(0, r * x) * r;
               },
               r1_, r2_, o) /
           kTwoPi;
  }

  double r1_, r2_, delta_;
  fttab::RadialTable table_;
};

// ---------------------------------------------------------------------------
// Bump window: phi(x) = exp(1 - 1/(1-|x|^2)) on |x|<1; transform cached.

class BumpImpl : public WindowImpl {
 public:
  explicit BumpImpl(int d) {
    name = "bump";
    dim = d;
    analytic = false;
    is_separable = (d == 1);
    max_abs = 1.0;

    const double extent = (d == 1) ? 1200.0 : 500.0;
    const double dt = kPi / fttab::KaiserInterp::kOversample;
    if (d == 1) {
      ft_table_ = fttab::RadialTable(
          [this](double t) { return ft_1d(t); }, dt, extent);
      quad::Options o;
      o.abs_tol = 1e-14;
      l2 = std::sqrt(quad::integrate_real(
          [this](double x) { return sq(bump(x)); }, -1.0, 1.0, o));
    } else {
      ft_table_ = fttab::RadialTable(
          [this](double t) { return ft_2d(t); }, dt, extent);
      quad::Options o;
      o.abs_tol = 1e-14;
      l2 = std::sqrt(kTwoPi * quad::integrate_real(
                                  [this](double r) { return sq(bump(r)) * r; },
                                  0.0, 1.0, o));
    }
    max_abs_ft = ft_table_.max_abs();
  }

  static double bump(double r) {
    const double s = r * r;
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s));
  }

  cplx eval(const Pt& x) const override { return bump(norm(x, dim)); }
  cplx eval_ft(const Pt& eta) const override {
    const double t = norm(eta, dim);
    if (!ft_table_.covers(t)) return 0.0;
    return ft_table_(t);
  }
  double eval_axis(int, double t) const override { return bump(t); }
  double support_radius(double) const override { return 1.0; }
  double ft_support_radius(double rel) const override {
    return ft_table_.support_radius(rel * max_abs_ft);
  }

 private:
  double ft_1d(double t) const {
    quad::Options o;
    o.abs_tol = 1e-16;
    o.rel_tol = 1e-13;
    o.osc_freq = std::fabs(t);
    o.min_panels = 8;
    return 2.0 * quad::integrate_real(
                     [t](double x) { return bump(x) * std::cos(x * t); }, 0.0,
                     1.0, o);
  }
  double ft_2d(double t) const {
    quad::Options o;
    o.abs_tol = 1e-16;
    o.rel_tol = 1e-13;
    o.osc_freq = std::fabs(t);
    o.min_panels = 8;
    return kTwoPi * quad::integrate_real(
                        [t](double r) {
                          return bump(r) * std::cyl_bessel_j(0, r * t) * r;
                        },
                        0.0, 1.0, o);
  }

  fttab::RadialTable ft_table_;
};

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------

const std::string& Window::name() const { return impl_->name; }
int Window::dim() const { return impl_->dim; }
bool Window::analytic_ft() const { return impl_->analytic; }
double Window::l2_norm() const { return impl_->l2; }
bool Window::real_valued() const { return impl_->real_valued; }
bool Window::ft_real_even() const { return impl_->ft_real_even; }
bool Window::separable() const { return impl_->is_separable; }
cplx Window::eval(const Pt& x) const { return impl_->eval(x); }
cplx Window::eval_ft(const Pt& eta) const { return impl_->eval_ft(eta); }
double Window::eval_axis(int axis, double t) const {
  return impl_->eval_axis(axis, t);
}
double Window::max_abs() const { return impl_->max_abs; }
double Window::max_abs_ft() const { return impl_->max_abs_ft; }
double Window::support_radius(double rel) const {
  return impl_->support_radius(rel);
}
double Window::ft_support_radius(double rel) const {
  return impl_->ft_support_radius(rel);
}
Window::FtBand Window::ft_band() const { return impl_->ft_band(); }

Window make_gaussian(int dim) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::invalid_argument, "dim must be 1 or 2");
  return Window(std::make_shared<detail::GaussianImpl>(dim));
}

Window make_hermite(int dim, int k) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::invalid_argument, "dim must be 1 or 2");
  if (k != 1 && k != 2)
    throw Error(ErrorCode::invalid_argument, "hermite order must be 1 or 2");
  return Window(std::make_shared<detail::HermiteImpl>(dim, k));
}

Window make_annulus(int dim, double r1, double r2) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::invalid_argument, "dim must be 1 or 2");
  return Window(std::make_shared<detail::AnnulusImpl>(dim, r1, r2));
}

Window make_bump(int dim) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::invalid_argument, "dim must be 1 or 2");
  return Window(std::make_shared<detail::BumpImpl>(dim));
}

Window window_by_name(const std::string& name, int dim) {
  if (name == "gaussian") return make_gaussian(dim);
  if (name == "hermite1") return make_hermite(dim, 1);
  if (name == "hermite2") return make_hermite(dim, 2);
  if (name == "bump") return make_bump(dim);
  if (name.rfind("annulus(", 0) == 0 && name.back() == ')') {
    const std::string args = name.substr(8, name.size() - 9);
    const auto comma = args.find(',');
    if (comma != std::string::npos) {
      try {
        const double r1 = std::stod(args.substr(0, comma));
        const double r2 = std::stod(args.substr(comma + 1));
        return make_annulus(dim, r1, r2);
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_config,
                    "bad annulus parameters in '" + name + "'");
      }
    }
  }
  throw Error(ErrorCode::invalid_config, "unknown window '" + name + "'");
}

// ---------------------------------------------------------------------------
// Moments.

namespace {

// int_0^X x^a cos(r x) dx, a <= 2, closed form.
long double cos_moment_ld(int a, long double r, long double X) {
  const long double s = sinl(r * X), c = cosl(r * X);
  switch (a) {
    case 0: return s / r;
    case 1: return X * s / r + (c - 1.0L) / (r * r);
    case 2:
      return X * X * s / r + 2.0L * X * c / (r * r) - 2.0L * s / (r * r * r);
  }
  throw Error(ErrorCode::invalid_argument, "cos_moment order");
}

// int_0^{2pi} cos^a sin^b dtheta for a, b even: 2pi (a-1)!!(b-1)!!/(a+b)!!.
double dfact_ratio(int a, int b) {
  auto dfact = [](int n) {
    double v = 1.0;
    for (int k = n; k >= 1; k -= 2) v *= k;
    return v;
  };
  return kTwoPi * dfact(a - 1) * dfact(b - 1) / dfact(a + b);
}

}  // namespace

double moment(const Window& w, const std::array<int, 2>& alpha) {
  const int total = alpha[0] + (w.dim() == 2 ? alpha[1] : 0);
  if (alpha[0] < 0 || alpha[1] < 0 || total > 8)
    throw Error(ErrorCode::invalid_argument, "moment order out of range");

  const auto* ann = dynamic_cast<const detail::AnnulusImpl*>(&w.impl());
  if (ann != nullptr) {
    // The transform vanishes identically on a neighborhood of the origin, so
    // every moment is a derivative of an identically-zero function. Orders
    // 0..2 are still integrated honestly below; beyond that the real-space
    // integral is too ill-conditioned for double precision (the integrand
    // masses ~1e10 cancel to zero) and the spectral value is returned.
    if (w.dim() == 2) return 0.0;
    if (alpha[0] % 2 == 1) return 0.0;  // odd moment of an even function
    if (alpha[0] >= 3) return 0.0;
    // Fubini against the profile: 2 int_0^X x^a phi = (2/pi) int P(r) C_a(r,X) dr
    const long double X = 4000.0L;
    quad::Options o;
    o.abs_tol = 1e-15;
    o.osc_freq = double(X);
    o.max_panels = 400000;
    const int a = alpha[0];
    const long double v = quad::integrate_real_ld(
        [&](long double r) {
          return ann->profile_ld(r) * cos_moment_ld(a, r, X);
        },
        ann->r1(), ann->r2(), o);
    return double(v * 2.0L / (long double)kPi);
  }

  const double R = std::min(w.support_radius(1e-18), 60.0);
  quad::Options o;
  o.abs_tol = 1e-12;
  o.rel_tol = 1e-12;

  if (w.dim() == 1 || w.separable()) {
    double v = 1.0;
    for (int axis = 0; axis < w.dim(); ++axis) {
      const int a = axis == 0 ? alpha[0] : alpha[1];
      v *= quad::integrate_real(
          [&](double t) {
            return std::pow(t, a) * w.eval_axis(axis, t);
          },
          -R, R, o);
    }
    return v;
  }

  // Radial 2D: angular closed form x radial integral.
  if (alpha[0] % 2 == 1 || alpha[1] % 2 == 1) return 0.0;
  const double ang = dfact_ratio(alpha[0], alpha[1]);
  const double rad = quad::integrate_real(
      [&](double r) {
        return std::pow(r, total + 1) * w.eval(pt(r, 0.0)).real();
      },
      0.0, R, o);
  return ang * rad;
}

// ---------------------------------------------------------------------------

ScaledWindow::ScaledWindow(Window base, double lambda)
    : base_(std::move(base)), lambda_(lambda) {
  if (!(lambda >= 1.0))
    throw Error(ErrorCode::invalid_argument, "scale requires lambda >= 1");
  sqrt_lambda_ = std::sqrt(lambda_);
  space_factor_ = std::pow(lambda_, 0.25 * base_.dim());
  ft_factor_ = 1.0 / space_factor_;
}

cplx ScaledWindow::eval(const Pt& x) const {
  Pt y{x[0] * sqrt_lambda_, x[1] * sqrt_lambda_};
  return space_factor_ * base_.eval(y);
}

cplx ScaledWindow::eval_ft(const Pt& eta) const {
  Pt y{eta[0] / sqrt_lambda_, eta[1] / sqrt_lambda_};
  return ft_factor_ * base_.eval_ft(y);
}

double ScaledWindow::eval_axis(int axis, double t) const {
  return base_.eval_axis(axis, t * sqrt_lambda_);
}

ScaledWindow scale(const Window& w, double lambda) {
  return ScaledWindow(w, lambda);
}

}  // namespace wfs::win
