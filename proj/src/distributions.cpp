#include "wfs/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "wfs/quadrature.hpp"
#include "wfs/spectral_table.hpp"

namespace wfs::dist {

namespace {

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double smoothstep_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  const double s = a + b;
  return a * b * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t))) / (s * s);
}

constexpr double kSigmaBump = 0.25;   // smooth_bump width
constexpr double kPsiRadius = 0.5;    // inner plateau bump for power_sing
constexpr double kTableTMax = 8192.0; // cached transform band

}  // namespace

double Cutoff::axis(double t) const {
  return smoothstep((support() - std::fabs(t)) / w_);
}

namespace {

double cutoff_axis_deriv(const Cutoff& g, double t) {
  const double w = g.support() - g.plateau();
  const double sgn = (t >= 0.0) ? 1.0 : -1.0;
  return -sgn * smoothstep_deriv((g.support() - std::fabs(t)) / w) / w;
}

}  // namespace

bool GroundTruth::is_singular_at(const Pt& x, const Pt& dir, int dim,
                                 double x_tol, double angle_tol) const {
  for (const auto& p : singular) {
    bool on_support;
    if (p.is_line) {
      on_support = std::fabs(dot(x, p.line_normal, dim) - p.line_offset) <= x_tol;
    } else {
      double d2 = 0;
      for (int k = 0; k < dim; ++k) d2 += (x[k] - p.x0[k]) * (x[k] - p.x0[k]);
      on_support = std::sqrt(d2) <= x_tol;
    }
    if (!on_support) continue;
    if (p.all_directions) return true;
    const double nd = norm(dir, dim);
    for (const auto& v : p.directions) {
      const double c = dot(dir, v, dim) / (nd * norm(v, dim));
      if (std::acos(std::clamp(c, -1.0, 1.0)) <= angle_tol) return true;
    }
  }
  return false;
}

std::optional<double> GroundTruth::s_star_at(const Pt& x, int dim,
                                             double x_tol) const {
  std::optional<double> best;
  for (const auto& p : singular) {
    bool on_support;
    if (p.is_line) {
      on_support = std::fabs(dot(x, p.line_normal, dim) - p.line_offset) <= x_tol;
    } else {
      double d2 = 0;
      for (int k = 0; k < dim; ++k) d2 += (x[k] - p.x0[k]) * (x[k] - p.x0[k]);
      on_support = std::sqrt(d2) <= x_tol;
    }
    if (on_support && (!best || p.s_star < *best)) best = p.s_star;
  }
  return best;
}

namespace detail {

class DistImpl {
 public:
  DistImpl(std::string spec, int dim, double L)
      : spec_str(std::move(spec)), dim_(dim), L_(L), cutoff_(L) {}
  virtual ~DistImpl() = default;

  std::string spec_str;
  int dim_;
  double L_;
  Cutoff cutoff_;

  virtual void add_sample(SampledSignal& out, double weight) const = 0;
  virtual bool analytic() const = 0;
  virtual cplx fourier(const Pt&) const {
    throw Error(ErrorCode::unsupported,
                "no analytic transform for '" + spec_str + "'");
  }
  virtual void add_truth(GroundTruth&) const {}
  virtual double phase_radius() const { return 0.0; }
  virtual bool real_valued() const { return true; }
  virtual double content_radius() const { return 0.0; }
};

namespace {

void check_point_in_plateau(const Pt& x0, int dim, const Cutoff& g,
                            double margin, const std::string& what) {
  for (int d = 0; d < dim; ++d)
    if (std::fabs(x0[d]) > g.plateau() - margin)
      throw Error(ErrorCode::invalid_argument,
                  what + " location must sit inside the cutoff plateau");
}

// --------------------------------------------------------------------------

class DeltaImpl : public DistImpl {
 public:
  DeltaImpl(const Pt& x0, int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L), x0_(x0) {
    check_point_in_plateau(x0, dim, cutoff_, 1e-9, "delta");
  }
  void add_sample(SampledSignal& out, double w) const override {
    const auto& g = out.grid;
    const double h = w * cutoff_(x0_, dim_) / std::pow(g.dx(), dim_);
    long idx = g.nearest_index(x0_[0]);
    if (dim_ == 2) idx = g.flat(idx, g.nearest_index(x0_[1]));
    out.values[size_t(idx)] += h;
  }
  bool analytic() const override { return true; }
  cplx fourier(const Pt& eta) const override {
    return std::polar(1.0, -dot(x0_, eta, dim_));
  }
  void add_truth(GroundTruth& t) const override {
    GroundTruthPoint p;
    p.x0 = x0_;
    p.all_directions = true;
    p.s_star = -0.5 * dim_;
    t.singular.push_back(p);
  }
  double phase_radius() const override { return norm(x0_, dim_); }
  double content_radius() const override { return norm(x0_, dim_); }

 private:
  Pt x0_;
};

// --------------------------------------------------------------------------

class SmoothBumpImpl : public DistImpl {
 public:
  SmoothBumpImpl(int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L) {}
  double value(const Pt& x) const {
    return std::exp(-0.5 * dot(x, x, dim_) / (kSigmaBump * kSigmaBump)) *
           cutoff_(x, dim_);
  }
  void add_sample(SampledSignal& out, double w) const override {
    const auto& g = out.grid;
    const long n = g.n_per_axis();
    if (dim_ == 1) {
      for (long i = 0; i < n; ++i)
        out.values[size_t(i)] += w * value(pt(g.coord(i)));
    } else {
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          out.values[size_t(g.flat(i, j))] +=
              w * value(pt(g.coord(i), g.coord(j)));
    }
  }
  bool analytic() const override { return true; }
  cplx fourier(const Pt& eta) const override {
    // The Gaussian factor is < 1e-30 where the cutoff departs from 1, so the
    // closed form is exact at working precision.
    const double s2 = kSigmaBump * kSigmaBump;
    return std::pow(kSigmaBump * std::sqrt(kTwoPi), dim_) *
           std::exp(-0.5 * s2 * dot(eta, eta, dim_));
  }

 private:
};

// --------------------------------------------------------------------------

class PlaneWaveImpl : public DistImpl {
 public:
  PlaneWaveImpl(const Pt& k, int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L), k_(k) {}
  void add_sample(SampledSignal& out, double w) const override {
    const auto& g = out.grid;
    const long n = g.n_per_axis();
    if (dim_ == 1) {
      for (long i = 0; i < n; ++i) {
        const double x = g.coord(i);
        out.values[size_t(i)] +=
            w * cutoff_(pt(x), 1) * std::polar(1.0, k_[0] * x);
      }
    } else {
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
          const Pt x = pt(g.coord(i), g.coord(j));
          out.values[size_t(g.flat(i, j))] +=
              w * cutoff_(x, 2) * std::polar(1.0, dot(k_, x, 2));
        }
    }
  }
  bool analytic() const override { return true; }
  cplx fourier(const Pt& eta) const override;
  bool real_valued() const override { return false; }

 private:
  Pt k_;
};

// --------------------------------------------------------------------------

class HeavisideImpl : public DistImpl {
 public:
  HeavisideImpl(double x0, int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L), x0_(x0) {
    if (dim != 1)
      throw Error(ErrorCode::invalid_argument, "heaviside is 1-D");
    check_point_in_plateau(pt(x0), 1, cutoff_, 0.05, "heaviside");
  }
  void add_sample(SampledSignal& out, double w) const override {
    const auto& g = out.grid;
    const long n = g.n_per_axis();
    for (long i = 0; i < n; ++i) {
      const double x = g.coord(i);
      double v;
      if (std::fabs(x - x0_) < 1e-12)
        v = 0.5;  // jump node carries the mean of the two one-sided limits
      else
        v = (x > x0_) ? 1.0 : 0.0;
      out.values[size_t(i)] += w * v * cutoff_(pt(x), 1);
    }
  }
  bool analytic() const override { return true; }
  cplx fourier(const Pt& eta) const override;
  void add_truth(GroundTruth& t) const override {
    GroundTruthPoint p;
    p.x0 = pt(x0_);
    p.directions = {pt(1.0), pt(-1.0)};
    p.s_star = 0.5;
    t.singular.push_back(p);
  }
  double phase_radius() const override { return std::fabs(x0_); }
  double content_radius() const override { return std::fabs(x0_); }

 private:
  double x0_;
  mutable std::once_flag table_once_;
  mutable fttab::SampledFT rho_ft_;  // transform of the right cutoff shoulder
  mutable double rho_center_ = 0.0;
  void ensure_table() const;
};

// --------------------------------------------------------------------------

class PowerSingImpl : public DistImpl {
 public:
  PowerSingImpl(double x0, double a, int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L), x0_(x0), a_(a) {
    if (dim != 1)
      throw Error(ErrorCode::invalid_argument, "powersing is 1-D");
    if (!(a > 0.0) || !(a < 1.0))
      throw Error(ErrorCode::invalid_argument,
                  "powersing needs 0 < a < 1 to be grid-representable");
    check_point_in_plateau(pt(x0), 1, cutoff_, kPsiRadius + 0.05, "powersing");
  }
  void add_sample(SampledSignal& out, double w) const override {
    const auto& g = out.grid;
    const long n = g.n_per_axis();
    const long sing = g.nearest_index(x0_);
    for (long i = 0; i < n; ++i) {
      const double x = g.coord(i);
      double v;
      if (i == sing) {
        // Cell average of |x - x0|^{-a} over the singular cell.
        const double lo = x - 0.5 * g.dx(), hi = x + 0.5 * g.dx();
        auto F = [this](double t) {
          const double z = t - x0_;
          const double s = (z >= 0.0) ? 1.0 : -1.0;
          return s * std::pow(std::fabs(z), 1.0 - a_) / (1.0 - a_);
        };
        v = (F(hi) - F(lo)) / g.dx();
      } else {
        v = std::pow(std::fabs(x - x0_), -a_);
      }
      out.values[size_t(i)] += w * v * cutoff_(pt(x), 1);
    }
  }
  bool analytic() const override { return true; }
  cplx fourier(const Pt& eta) const override;
  void add_truth(GroundTruth& t) const override {
    GroundTruthPoint p;
    p.x0 = pt(x0_);
    p.directions = {pt(1.0), pt(-1.0)};
    p.s_star = 0.5 - a_;
    t.singular.push_back(p);
  }
  double phase_radius() const override { return std::fabs(x0_); }
  double content_radius() const override { return std::fabs(x0_); }

 private:
  double x0_, a_;
  mutable std::once_flag table_once_;
  mutable fttab::RadialTable core_ft_;   // transform of |z|^{-a} psi(z)
  mutable fttab::SampledFT smooth_ft_;   // transform of the smooth remainder
  void ensure_tables() const;
  double psi(double z) const {
    return smoothstep((kPsiRadius - std::fabs(z)) / (0.5 * kPsiRadius));
  }
  double core_ft_direct(double t) const;
};

// --------------------------------------------------------------------------

class HalfplaneImpl : public DistImpl {
 public:
  HalfplaneImpl(const Pt& nu, double c, int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L), nu_(nu), c_(c) {
    if (dim != 2)
      throw Error(ErrorCode::invalid_argument, "halfplane is 2-D");
    const double n = norm(nu_, 2);
    if (!(n > 0))
      throw Error(ErrorCode::invalid_argument, "halfplane normal is zero");
    nu_[0] /= n;
    nu_[1] /= n;
    if (std::fabs(c_) > 0.5 * cutoff_.plateau())
      throw Error(ErrorCode::invalid_argument,
                  "halfplane boundary too close to the cutoff edge");
  }
  void add_sample(SampledSignal& out, double w) const override {
    const auto& g = out.grid;
    const long n = g.n_per_axis();
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        const Pt x = pt(g.coord(i), g.coord(j));
        const double t = dot(x, nu_, 2) - c_;
        double v = (std::fabs(t) < 1e-12) ? 0.5 : (t > 0.0 ? 1.0 : 0.0);
        out.values[size_t(g.flat(i, j))] += w * v * cutoff_(x, 2);
      }
  }
  bool analytic() const override { return false; }
  void add_truth(GroundTruth& t) const override {
    GroundTruthPoint p;
    p.is_line = true;
    p.line_normal = nu_;
    p.line_offset = c_;
    p.x0 = pt(c_ * nu_[0], c_ * nu_[1]);
    p.directions = {nu_, pt(-nu_[0], -nu_[1])};
    p.s_star = 0.5;
    t.singular.push_back(p);
  }
  double content_radius() const override { return cutoff_.plateau(); }

 private:
  Pt nu_;
  double c_;
};

// --------------------------------------------------------------------------

class SumImpl : public DistImpl {
 public:
  SumImpl(std::vector<std::pair<double, std::shared_ptr<const DistImpl>>> terms,
          int dim, double L, std::string spec)
      : DistImpl(std::move(spec), dim, L), terms_(std::move(terms)) {}
  void add_sample(SampledSignal& out, double w) const override {
    for (const auto& [c, t] : terms_) t->add_sample(out, w * c);
  }
  bool analytic() const override {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second->analytic(); });
  }
  cplx fourier(const Pt& eta) const override {
    cplx v(0.0);
    for (const auto& [c, t] : terms_) v += c * t->fourier(eta);
    return v;
  }
  void add_truth(GroundTruth& t) const override {
    for (const auto& [c, term] : terms_)
      if (c != 0.0) term->add_truth(t);
  }
  double phase_radius() const override {
    double r = 0;
    for (const auto& [c, t] : terms_) r = std::max(r, t->phase_radius());
    return r;
  }
  bool real_valued() const override {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
      return t.second->real_valued();
    });
  }
  double content_radius() const override {
    double r = 0;
    for (const auto& [c, t] : terms_) r = std::max(r, t->content_radius());
    return r;
  }

 private:
  std::vector<std::pair<double, std::shared_ptr<const DistImpl>>> terms_;
};

// --------------------------------------------------------------------------
// Cutoff transform registry (per box size), shared by plane waves.

const fttab::SampledFT& cutoff_ft_table(double L) {
  static std::mutex m;
  static std::map<double, std::shared_ptr<fttab::SampledFT>> reg;
  std::lock_guard<std::mutex> lock(m);
  auto it = reg.find(L);
  if (it == reg.end()) {
    Cutoff g(L);
    auto tab = std::make_shared<fttab::SampledFT>(
        [&g](double x) { return cplx(g.axis(x), 0.0); }, g.support() * 1.02,
        kTableTMax, 17);
    it = reg.emplace(L, std::move(tab)).first;
  }
  return *it->second;
}

cplx cutoff_ft(double L, double t) {
  const auto& tab = cutoff_ft_table(L);
  if (tab.covers(t)) return tab(t);
  // Rarely-hit fallback beyond the cached band.
  Cutoff g(L);
  quad::Options o;
  o.abs_tol = 1e-13;
  o.osc_freq = std::fabs(t);
  return quad::integrate(
      [&](double x) { return cplx(g.axis(x), 0.0) * std::polar(1.0, -x * t); },
      -g.support(), g.support(), o);
}

cplx PlaneWaveImpl::fourier(const Pt& eta) const {
  cplx v = cutoff_ft(L_, eta[0] - k_[0]);
  if (dim_ == 2) v *= cutoff_ft(L_, eta[1] - k_[1]);
  return v;
}

// --------------------------------------------------------------------------

void HeavisideImpl::ensure_table() const {
  std::call_once(table_once_, [this] {
    // rho = g' restricted to the right transition, recentred at its midpoint.
    const double c0 = 0.5 * (cutoff_.transition_lo() + cutoff_.transition_hi());
    const double half = 0.5 * (cutoff_.transition_hi() - cutoff_.transition_lo());
    rho_ft_ = fttab::SampledFT(
        [this, c0](double z) {
          return cplx(cutoff_axis_deriv(cutoff_, z + c0), 0.0);
        },
        half * 1.1, kTableTMax, 15);
    rho_center_ = c0;
  });
}

cplx HeavisideImpl::fourier(const Pt& eta) const {
  const double t = eta[0];
  const Cutoff& g = cutoff_;
  if (std::fabs(t) < 2.0) {
    quad::Options o;
    o.abs_tol = 1e-13;
    o.osc_freq = std::fabs(t);
    return quad::integrate(
        [&](double x) {
          return cplx(g.axis(x), 0.0) * std::polar(1.0, -x * t);
        },
        x0_, g.support(), o);
  }
  ensure_table();
  // Integration by parts: (g(x0) e^{-i x0 t} + F[g'|right](t)) / (i t).
  cplx shoulder;
  if (rho_ft_.covers(t)) {
    shoulder = std::polar(1.0, -rho_center_ * t) * rho_ft_(t);
  } else {
    quad::Options o;
    o.abs_tol = 1e-13;
    o.osc_freq = std::fabs(t);
    shoulder = quad::integrate(
        [&](double x) {
          return cplx(cutoff_axis_deriv(g, x), 0.0) * std::polar(1.0, -x * t);
        },
        g.transition_lo(), g.transition_hi(), o);
  }
  const cplx boundary = g.axis(x0_) * std::polar(1.0, -x0_ * t);
  return (boundary + shoulder) / cplx(0.0, t);
}

// --------------------------------------------------------------------------

double PowerSingImpl::core_ft_direct(double t) const {
  // 2 int_0^rho z^{-a} psi(z) cos(z t) dz, graded by z = u^{1/(1-a)}.
  const double p = 1.0 / (1.0 - a_);
  const double upper = std::pow(kPsiRadius, 1.0 - a_);
  quad::Options o;
  o.abs_tol = 1e-14;
  o.rel_tol = 1e-12;
  o.osc_freq = std::fabs(t) * std::pow(kPsiRadius, a_) * p;
  o.min_panels = 16;
  return 2.0 * p *
         quad::integrate_real(
             [&](double u) {
               const double z = std::pow(u, p);
               return psi(z) * std::cos(z * t);
             },
             0.0, upper, o);
}

void PowerSingImpl::ensure_tables() const {
  std::call_once(table_once_, [this] {
    core_ft_ = fttab::RadialTable(
        [this](double t) { return core_ft_direct(t); },
        kPi / (fttab::KaiserInterp::kOversample * kPsiRadius), kTableTMax);
    const double R = cutoff_.support() + std::fabs(x0_) + 0.02;
    smooth_ft_ = fttab::SampledFT(
        [this](double z) {
          const double w = cutoff_.axis(z + x0_) - psi(z);
          if (w == 0.0) return cplx(0.0);
          return cplx(w * std::pow(std::fabs(z), -a_), 0.0);
        },
        R, kTableTMax, 17);
  });
}

cplx PowerSingImpl::fourier(const Pt& eta) const {
  ensure_tables();
  const double t = eta[0];
  double core;
  if (core_ft_.covers(t))
    core = core_ft_(t);
  else
    core = core_ft_direct(t);
  cplx smooth;
  if (smooth_ft_.covers(t)) {
    smooth = smooth_ft_(t);
  } else {
    quad::Options o;
    o.abs_tol = 1e-13;
    o.osc_freq = std::fabs(t);
    const double R = cutoff_.support() + std::fabs(x0_) + 0.02;
    smooth = quad::integrate(
        [&](double z) {
          const double w = cutoff_.axis(z + x0_) - psi(z);
          if (w == 0.0) return cplx(0.0);
          return cplx(w * std::pow(std::fabs(z), -a_), 0.0) *
                 std::polar(1.0, -z * t);
        },
        -R, R, o);
  }
  return std::polar(1.0, -x0_ * t) * (cplx(core, 0.0) + smooth);
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// Facade.

const std::string& TestDistribution::spec() const { return impl_->spec_str; }
int TestDistribution::dim() const { return impl_->dim_; }
double TestDistribution::box_L() const { return impl_->L_; }
bool TestDistribution::has_analytic_ft() const { return impl_->analytic(); }
cplx TestDistribution::fourier(const Pt& eta) const {
  return impl_->fourier(eta);
}
GroundTruth TestDistribution::ground_truth() const {
  GroundTruth t;
  impl_->add_truth(t);
  return t;
}
double TestDistribution::content_radius() const {
  return impl_->content_radius();
}
double TestDistribution::phase_radius() const { return impl_->phase_radius(); }
bool TestDistribution::real_valued() const { return impl_->real_valued(); }

SampledSignal TestDistribution::sample(const Grid& grid) const {
  if (grid.dim != impl_->dim_)
    throw Error(ErrorCode::invalid_argument, "grid/distribution dim mismatch");
  if (std::fabs(grid.L - impl_->L_) > 1e-12)
    throw Error(ErrorCode::invalid_argument, "grid/distribution box mismatch");
  SampledSignal out;
  out.grid = grid;
  out.values.assign(size_t(grid.size()), cplx(0.0));
  impl_->add_sample(out, 1.0);
  return out;
}

TestDistribution TestDistribution::scaled(double c) const {
  std::vector<std::pair<double, std::shared_ptr<const detail::DistImpl>>> terms;
  terms.emplace_back(c, impl_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g*", c);
  return TestDistribution(std::make_shared<detail::SumImpl>(
      std::move(terms), impl_->dim_, impl_->L_, buf + impl_->spec_str));
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

using detail::DistImpl;

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_config, "bad number '" + s + "' in " + what);
  }
}

// Parses "name@x" / "name@(x,y)" suffix; returns remaining params after '@'.
Pt parse_location(const std::string& loc, int dim) {
  Pt x0{0.0, 0.0};
  if (!loc.empty() && loc.front() == '(') {
    if (loc.back() != ')')
      throw Error(ErrorCode::invalid_config, "bad location '" + loc + "'");
    const std::string inner = loc.substr(1, loc.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCode::invalid_config, "bad location '" + loc + "'");
    x0[0] = parse_num(strip(inner.substr(0, comma)), "location");
    x0[1] = parse_num(strip(inner.substr(comma + 1)), "location");
    if (dim != 2)
      throw Error(ErrorCode::invalid_config, "2-D location in a 1-D scenario");
  } else {
    x0[0] = parse_num(loc, "location");
  }
  return x0;
}

std::shared_ptr<const DistImpl> parse_term(const std::string& term, int dim,
                                           double L, double* weight_out);

std::shared_ptr<const DistImpl> parse_kind(const std::string& s, int dim,
                                           double L) {
  if (s == "smoothbump" || s == "smooth_bump")
    return std::make_shared<detail::SmoothBumpImpl>(dim, L, s);

  if (s.rfind("delta@", 0) == 0) {
    const Pt x0 = parse_location(s.substr(6), dim);
    return std::make_shared<detail::DeltaImpl>(x0, dim, L, s);
  }
  if (s.rfind("heaviside@", 0) == 0) {
    const double x0 = parse_num(s.substr(10), "heaviside");
    return std::make_shared<detail::HeavisideImpl>(x0, dim, L, s);
  }
  if (s.rfind("powersing@", 0) == 0) {
    const std::string rest = s.substr(10);
    const auto comma = rest.find(',');
    if (comma == std::string::npos || rest.substr(comma + 1, 2) != "a=")
      throw Error(ErrorCode::invalid_config,
                  "powersing needs 'powersing@x0,a=...' in '" + s + "'");
    const double x0 = parse_num(strip(rest.substr(0, comma)), "powersing");
    const double a = parse_num(strip(rest.substr(comma + 3)), "powersing");
    return std::make_shared<detail::PowerSingImpl>(x0, a, dim, L, s);
  }
  if (s.rfind("planewave,k=", 0) == 0) {
    const std::string arg = strip(s.substr(12));
    Pt k{0.0, 0.0};
    if (!arg.empty() && arg.front() == '(')
      k = parse_location(arg, dim);
    else
      k[0] = parse_num(arg, "planewave");
    return std::make_shared<detail::PlaneWaveImpl>(k, dim, L, s);
  }
  if (s.rfind("halfplane,nu=(", 0) == 0) {
    const auto close = s.find(')');
    if (close == std::string::npos || s.substr(close + 1, 3) != ",c=")
      throw Error(ErrorCode::invalid_config,
                  "halfplane needs 'halfplane,nu=(a,b),c=...' in '" + s + "'");
    const std::string inner = s.substr(14, close - 14);
    const auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCode::invalid_config, "bad normal in '" + s + "'");
    Pt nu;
    nu[0] = parse_num(strip(inner.substr(0, comma)), "halfplane");
    nu[1] = parse_num(strip(inner.substr(comma + 1)), "halfplane");
    const double c = parse_num(strip(s.substr(close + 4)), "halfplane");
    return std::make_shared<detail::HalfplaneImpl>(nu, c, dim, L, s);
  }
  throw Error(ErrorCode::invalid_config, "unknown distribution '" + s + "'");
}

std::shared_ptr<const DistImpl> parse_term(const std::string& term, int dim,
                                           double L, double* weight_out) {
  std::string s = strip(term);
  double w = 1.0;
  const auto star = s.find('*');
  if (star != std::string::npos && s.find('(') > star) {
    w = parse_num(strip(s.substr(0, star)), "term weight");
    s = strip(s.substr(star + 1));
  }
  *weight_out = w;
  return parse_kind(s, dim, L);
}

}  // namespace

TestDistribution TestDistribution::parse(const std::string& raw, int dim,
                                         double L) {
  const std::string s = strip(raw);
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::invalid_config, "dim must be 1 or 2");
  if (s.rfind("sum(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(4, s.size() - 5);
    std::vector<std::pair<double, std::shared_ptr<const detail::DistImpl>>>
        terms;
    size_t start = 0;
    while (start <= inner.size()) {
      auto semi = inner.find(';', start);
      if (semi == std::string::npos) semi = inner.size();
      const std::string term = inner.substr(start, semi - start);
      if (!strip(term).empty()) {
        double w = 1.0;
        auto impl = parse_term(term, dim, L, &w);
        terms.emplace_back(w, std::move(impl));
      }
      start = semi + 1;
    }
    if (terms.empty())
      throw Error(ErrorCode::invalid_config, "empty sum in '" + s + "'");
    return TestDistribution(
        std::make_shared<detail::SumImpl>(std::move(terms), dim, L, s));
  }
  double w = 1.0;
  auto impl = parse_term(s, dim, L, &w);
  if (w != 1.0) {
    std::vector<std::pair<double, std::shared_ptr<const detail::DistImpl>>>
        terms;
    terms.emplace_back(w, std::move(impl));
    return TestDistribution(
        std::make_shared<detail::SumImpl>(std::move(terms), dim, L, s));
  }
  return TestDistribution(std::move(impl));
}

}  // namespace wfs::dist
