#pragma once

#include <functional>

#include "wfs/common.hpp"

namespace wfs::quad {

// Adaptive Gauss7/Kronrod15 integration of a complex-valued integrand.
// Panels are split until the Kronrod error estimate is below
// max(abs_tol_panel, rel_tol * |running total|). `osc_freq` is the dominant
// oscillation frequency of the integrand (rad per unit length); the initial
// subdivision keeps no more than ~one oscillation period per panel.
struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double osc_freq = 0.0;
  int max_panels = 200000;
  int min_panels = 1;
};

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const Options& opt);

double integrate_real(const std::function<double(double)>& f, double a,
                      double b, const Options& opt);

// Same rule evaluated in long double with compensated accumulation. Used
// where the integral is a small residue of a large oscillating mass.
long double integrate_real_ld(const std::function<long double(long double)>& f,
                              long double a, long double b, const Options& opt);

}  // namespace wfs::quad
