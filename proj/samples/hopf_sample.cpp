// Holonomy around a rectangle on a complex line of CH^2, compared with the
// area formula and the flat Hopf torus model.

#include <cstdio>

#include "hopf/hopf.hpp"

int main() {
  using namespace hopf;
  ComplexVector v{Complex(0.6, 0.0), Complex(0.8, 0.0)};
  const ComplexVector w = times_i(v);
  const BundleDescriptor bundle = descriptor(BundleKind::CpxHyperbolic, 2, SurfacePlane::from_basis(v, w));
  const ChartCurve rect = ChartCurve::rectangle(0.3, 0.7, 0.0, 2.0);

  const HolonomyReport r = holonomy(bundle, rect, 4000);
  std::printf("class      %s\n", std::string(to_string(bundle.plane_class.tag)).c_str());
  std::printf("measured   %.12f\n", r.measured);
  std::printf("predicted  %.12f  (lambda * area, area %.12f)\n", r.predicted, r.metrics.area);
  std::printf("generic    %.12f\n", r.generic_measured.value_or(0.0));
  std::printf("status     %s\n", std::string(to_string(r.status)).c_str());

  const FlatModel torus = flat_model(bundle, rect, 4000);
  std::printf("flat torus generators (%.6f, %.6f), (%.6f, %.6f)\n", torus.generators[0].x,
              torus.generators[0].y, torus.generators[1].x, torus.generators[1].y);
  return r.status == HolonomyStatus::ok ? 0 : 3;
}
