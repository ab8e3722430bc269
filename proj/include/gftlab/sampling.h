#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gftlab/core_geometry.h"

namespace gftlab {

/// Counter-based generator: the k-th draw depends only on (seed, stream, k),
/// so results are reproducible regardless of evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// Uniform sample of the disk |z| < r_max in area measure.
std::vector<Complex> random_disk_points(std::size_t n, double r_max, std::uint64_t seed);

/// Tensor polar sample set used by the grid-supremum verifiers.
struct SampleGrid {
  std::vector<double> radii;
  int angles = 64;
  double angle_offset = 0.0;
  std::string kind;

  /// Radii r_max * k / n_radial, k = 1..n_radial.
  static SampleGrid polar(int n_radial, int n_angular, double r_max);
  /// Radii with 1 - r geometric from 1 down to 1 - r_max.
  static SampleGrid boundary_clustered(int n_radial, int n_angular, double r_max);

  std::vector<Complex> points() const;
  std::string describe() const;
};

}  // namespace gftlab
