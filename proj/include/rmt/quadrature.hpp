#pragma once
#include <functional>
#include <vector>

// Gauss-Legendre quadrature with cached nodes, composite panels, and
// half-line helpers with peak-relative truncation. All integrands in this
// library decay like Gaussians or exponentials, so fixed-order composite
// rules converge fast once the domain is truncated sensibly.

namespace rmt {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes/weights of the m-point Gauss-Legendre rule; cached per order.
const GaussRule& gauss_legendre(int m);

// Integral over [a, b] split into `panels` equal panels of order-m rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 16, int order = 32);

// Integral over [0, infinity) of a function with exponential tail decay on
// the scale `decay_scale`: the domain is truncated where the integrand is
// below 1e-14 of its running peak. If grade_towards_zero is true the panels
// are geometrically refined near 0 (integrable endpoint singularities).
double integrate_halfline(const std::function<double(double)>& f,
                          double decay_scale, bool grade_towards_zero = false,
                          int panels = 24, int order = 32);

// Integral over (-infinity, infinity) of a function decaying on
// `decay_scale` around `center`.
double integrate_line(const std::function<double(double)>& f, double center,
                      double decay_scale, int panels = 24, int order = 32);

}  // namespace rmt
