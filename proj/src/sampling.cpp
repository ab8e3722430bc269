#include "gftlab/sampling.h"

#include <cmath>
#include <sstream>

#include "gftlab/errors.h"

namespace gftlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return splitmix64(splitmix64(seed_ ^ splitmix64(stream_)) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::vector<Complex> random_disk_points(std::size_t n, double r_max, std::uint64_t seed) {
  const CounterRng rng(seed, 0x5a17);
  std::vector<Complex> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = r_max * std::sqrt(rng.uniform(2 * i));
    const double t = kTwoPi * rng.uniform(2 * i + 1);
    out.push_back(std::polar(r, t));
  }
  return out;
}

SampleGrid SampleGrid::polar(int n_radial, int n_angular, double r_max) {
  if (n_radial < 1 || n_angular < 1 || !(r_max > 0.0 && r_max < 1.0)) {
    throw DomainError("SampleGrid: bad grid parameters");
  }
  SampleGrid g;
  g.kind = "polar";
  g.angles = n_angular;
  for (int k = 1; k <= n_radial; ++k) g.radii.push_back(r_max * k / n_radial);
  return g;
}

SampleGrid SampleGrid::boundary_clustered(int n_radial, int n_angular, double r_max) {
  if (n_radial < 2 || n_angular < 1 || !(r_max > 0.0 && r_max < 1.0)) {
    throw DomainError("SampleGrid: bad grid parameters");
  }
  SampleGrid g;
  g.kind = "boundary-clustered";
  g.angles = n_angular;
  const double gap_min = 1.0 - r_max;
  for (int k = 0; k < n_radial; ++k) {
    const double gap = std::pow(gap_min, static_cast<double>(k) / (n_radial - 1));
    g.radii.push_back(1.0 - gap);
  }
  return g;
}

std::vector<Complex> SampleGrid::points() const {
  std::vector<Complex> out;
  out.reserve(radii.size() * angles);
  for (double r : radii) {
    for (int j = 0; j < angles; ++j) {
      out.push_back(std::polar(r, angle_offset + kTwoPi * j / angles));
    }
  }
  return out;
}

std::string SampleGrid::describe() const {
  std::ostringstream os;
  os << kind << " radii=" << radii.size() << " angles=" << angles;
  if (!radii.empty()) os << " r_max=" << radii.back();
  return os.str();
}

}  // namespace gftlab
