#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gftlab/core_geometry.h"

namespace gftlab {

/// Positive function on the disk, finite off a finite set of boundary points.
struct Weight {
  std::function<double(Complex)> eval;
  std::string label;
  std::vector<DiskPoint> singular_set;

  double operator()(Complex z) const { return eval(z); }
};

/// omega = 1.
Weight unit_weight();
/// omega = (1 - |z|^2)^alpha.
Weight power_weight(double alpha);
/// omega / c for a positive constant c.
Weight scaled_weight(const Weight& w, double c);

}  // namespace gftlab
