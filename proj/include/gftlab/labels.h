#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gftlab/loewner.h"
#include "gftlab/map_catalog.h"
#include "gftlab/semigroup.h"
#include "gftlab/weight.h"

namespace gftlab {

/// Parses "1", "-0.5", "0.5i", "-i", "1+0.5i", "2-3i". Throws UsageError.
Complex parse_complex(std::string_view text);

/// Label grammar (nested labels always come last and take the remainder):
///   id | koebe | parabolic-koenigs | strip | half-strip | log-pole
///   half-plane:c=<complex>
///   spirallike:lambda=<complex>;atoms=<mass>@<point>,...[;offset=<real>]
///       where <point> is a unit complex ("1", "-i") or "t<angle>"
///   monomial:n=<int> | pole:a=<complex>
///   dilate:s=<complex>;map=<map> | square-arg:map=<map> | normalized:map=<map>
///   iterate:t=<real>;model=<model>
///   loewner:T=<real>;dt=<real>;driver=<driver>
AnalyticMap map_from_label(const std::string& label);

///   elliptic:lambda=<complex>;koenigs=<map> | parabolic:canonical
///   hyperbolic:strip | hyperbolic:half-strip
SemigroupModel model_from_label(const std::string& label);

///   const:<point> | rot:omega=<real>
DrivingFunction driver_from_label(const std::string& label);

///   one | power:alpha=<real> | koenigs:p=<real>;map=<map>
Weight weight_from_label(const std::string& label);

struct CatalogEntry {
  std::string kind;  // "map", "model", "driver" or "weight"
  std::string label;
  std::string note;
};
/// Built-in labels, in listing order.
std::vector<CatalogEntry> catalog_entries();

}  // namespace gftlab
