#include "dcov/quadrature.hpp"

#include <array>
#include <cmath>

namespace dcov {
namespace {

// Nodes on [0, 1] of the symmetric rule; index 7 is the centre.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double k = kKronrod[7] * fc;
  double g = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(centre - dx) + f(centre + dx);
    k += kKronrod[i] * sum;
    if (i % 2 == 1) g += kGauss[i / 2] * sum;
  }
  return {k * half, g * half};
}

void recurse(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             QuadratureResult& out) {
  const Panel p = gk15(f, a, b);
  out.evaluations += 15;
  const double err = std::fabs(p.kronrod - p.gauss);
  if (err <= tol || depth <= 0) {
    out.value += p.kronrod;
    out.error += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  recurse(f, a, mid, 0.5 * tol, depth - 1, out);
  recurse(f, mid, b, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tolerance, int max_depth) {
  QuadratureResult out;
  recurse(f, a, b, tolerance, max_depth, out);
  return out;
}

}  // namespace dcov
