#include "gftlab/labels.h"

#include <charconv>
#include <cmath>
#include <map>

#include "gftlab/errors.h"
#include "gftlab/weights.h"

namespace gftlab {

namespace {

[[noreturn]] void bad_label(const std::string& what, std::string_view label) {
  throw UsageError(what + ": '" + std::string(label) + "'");
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) bad_label("not a real number", text);
  return value;
}

// Splits "k1=v1;k2=v2;tail=<anything>" into fields; the tail key swallows the rest.
std::map<std::string, std::string> parse_fields(std::string_view body, std::string_view tail_key,
                                                std::string_view label) {
  std::map<std::string, std::string> fields;
  while (!body.empty()) {
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) bad_label("expected key=value", label);
    const std::string key(body.substr(0, eq));
    body.remove_prefix(eq + 1);
    if (!tail_key.empty() && key == tail_key) {
      fields[key] = std::string(body);
      break;
    }
    const auto semi = body.find(';');
    fields[key] = std::string(body.substr(0, semi));
    body = semi == std::string_view::npos ? std::string_view() : body.substr(semi + 1);
  }
  return fields;
}

const std::string& require(const std::map<std::string, std::string>& fields, const std::string& key,
                           std::string_view label) {
  const auto it = fields.find(key);
  if (it == fields.end()) bad_label("missing field " + key, label);
  return it->second;
}

void split_head(const std::string& label, std::string& head, std::string& body) {
  const auto colon = label.find(':');
  head = label.substr(0, colon);
  body = colon == std::string::npos ? std::string() : label.substr(colon + 1);
}

DiskPoint parse_boundary_point(std::string_view text) {
  if (!text.empty() && text.front() == 't') return DiskPoint::boundary(parse_real(text.substr(1)));
  const Complex c = parse_complex(text);
  if (std::abs(std::abs(c) - 1.0) > 1e-12) bad_label("not a unit complex number", text);
  return DiskPoint::boundary_toward(c);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty()) bad_label("empty complex number", text);
  if (text.back() != 'i') return Complex(parse_real(text), 0.0);
  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    if (im_part.front() == '+') im_part.remove_prefix(1);
    im = parse_real(im_part);
  }
  return Complex(re_part.empty() ? 0.0 : parse_real(re_part), im);
}

AnalyticMap map_from_label(const std::string& label) {
  std::string head, body;
  split_head(label, head, body);
  if (body.empty()) {
    if (head == "id" || head == "identity") return make_identity();
    if (head == "koebe") return make_koebe();
    if (head == "parabolic-koenigs") return make_parabolic_koenigs();
    if (head == "strip") return make_strip_koenigs();
    if (head == "half-strip") return make_half_strip_koenigs();
    if (head == "log-pole") return make_log_pole();
    if (head == "half-plane") return make_half_plane_map(1.0);
    bad_label("unknown map", label);
  }
  if (head == "half-plane") return make_half_plane_map(parse_complex(require(parse_fields(body, "", label), "c", label)));
  if (head == "monomial") {
    const double n = parse_real(require(parse_fields(body, "", label), "n", label));
    if (n != std::floor(n)) bad_label("monomial degree must be an integer", label);
    return make_monomial(static_cast<int>(n));
  }
  if (head == "pole") return make_simple_pole(parse_complex(require(parse_fields(body, "", label), "a", label)));
  if (head == "dilate") {
    const auto f = parse_fields(body, "map", label);
    return make_dilation(map_from_label(require(f, "map", label)), parse_complex(require(f, "s", label)));
  }
  if (head == "square-arg") return make_square_argument(map_from_label(require(parse_fields(body, "map", label), "map", label)));
  if (head == "normalized") return make_normalized(map_from_label(require(parse_fields(body, "map", label), "map", label)));
  if (head == "iterate") {
    const auto f = parse_fields(body, "model", label);
    return make_iterate_map(model_from_label(require(f, "model", label)), parse_real(require(f, "t", label)));
  }
  if (head == "loewner") {
    const auto f = parse_fields(body, "driver", label);
    return make_loewner_map(driver_from_label(require(f, "driver", label)), parse_real(require(f, "T", label)),
                            parse_real(require(f, "dt", label)));
  }
  if (head == "spirallike") {
    const auto f = parse_fields(body, "", label);
    std::vector<HerglotzMeasure::Atom> atoms;
    std::string_view list = require(f, "atoms", label);
    while (!list.empty()) {
      const auto comma = list.find(',');
      const std::string_view atom = list.substr(0, comma);
      const auto at = atom.find('@');
      if (at == std::string_view::npos) bad_label("atom must read mass@point", label);
      atoms.push_back({parse_boundary_point(atom.substr(at + 1)), parse_real(atom.substr(0, at))});
      list = comma == std::string_view::npos ? std::string_view() : list.substr(comma + 1);
    }
    const auto offset = f.find("offset");
    HerglotzMeasure mu(std::move(atoms), offset == f.end() ? 0.0 : parse_real(offset->second));
    return make_spirallike(parse_complex(require(f, "lambda", label)), std::move(mu));
  }
  bad_label("unknown map", label);
}

SemigroupModel model_from_label(const std::string& label) {
  if (label == "parabolic:canonical") return make_parabolic_model();
  if (label == "hyperbolic:strip") return make_strip_model();
  if (label == "hyperbolic:half-strip") return make_half_strip_model();
  std::string head, body;
  split_head(label, head, body);
  if (head == "elliptic") {
    const auto f = parse_fields(body, "koenigs", label);
    const Complex lambda = parse_complex(require(f, "lambda", label));
    const std::string& koenigs = require(f, "koenigs", label);
    if (koenigs == "id") return make_identity_elliptic_model(lambda);
    return make_elliptic_model(map_from_label(koenigs), lambda);
  }
  bad_label("unknown semigroup model", label);
}

DrivingFunction driver_from_label(const std::string& label) {
  std::string head, body;
  split_head(label, head, body);
  if (head == "const") return constant_driver(parse_boundary_point(body));
  if (head == "rot") return rotating_driver(parse_real(require(parse_fields(body, "", label), "omega", label)));
  bad_label("unknown driving function", label);
}

Weight weight_from_label(const std::string& label) {
  if (label == "one") return unit_weight();
  std::string head, body;
  split_head(label, head, body);
  if (head == "power") return power_weight(parse_real(require(parse_fields(body, "", label), "alpha", label)));
  if (head == "koenigs") {
    const auto f = parse_fields(body, "map", label);
    return koenigs_weight(map_from_label(require(f, "map", label)), parse_real(require(f, "p", label)));
  }
  bad_label("unknown weight", label);
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"map", "id", "z"},
      {"map", "koebe", "z/(1-z)^2, extremal for distortion"},
      {"map", "half-plane:c=1", "(conj(c) z + c)/(1 - z), onto Re w > 0"},
      {"map", "parabolic-koenigs", "i(1+z)/(1-z), starlike at infinity, tau = 1"},
      {"map", "strip", "i log((1+z)/(1-z)), hyperbolic Koenigs map"},
      {"map", "half-strip", "asin(i(1+z)/(1-z)), hyperbolic Koenigs map"},
      {"map", "spirallike:lambda=1;atoms=1@1", "Koebe rebuilt from its Herglotz measure"},
      {"map", "spirallike:lambda=1;atoms=0.5@1,0.5@-1", "z/(1-z^2)"},
      {"map", "monomial:n=2", "z^n"},
      {"map", "pole:a=0.5", "1/(1 - a z)"},
      {"map", "log-pole", "log(1/(1-z))"},
      {"map", "dilate:s=0.5;map=koebe", "f(s z)"},
      {"map", "square-arg:map=koebe", "f(z^2)"},
      {"map", "iterate:t=1;model=parabolic:canonical", "phi_t of a semigroup model"},
      {"map", "loewner:T=1;dt=0.001;driver=const:1", "terminal map of a Loewner chain"},
      {"model", "elliptic:lambda=1;koenigs=id", "e^{-lambda t} z"},
      {"model", "elliptic:lambda=1;koenigs=koebe", "Koenigs conjugate of e^{-t} w"},
      {"model", "parabolic:canonical", "(z(2-t)+t)/((2+t)-tz)"},
      {"model", "hyperbolic:strip", "tanh(artanh z + t/2)"},
      {"model", "hyperbolic:half-strip", "sin(h + i t) inverted in closed form"},
      {"driver", "const:1", "k(t) = 1"},
      {"driver", "rot:omega=1", "k(t) = e^{i omega t}"},
      {"weight", "one", "1"},
      {"weight", "power:alpha=0.5", "(1 - |z|^2)^alpha"},
      {"weight", "koenigs:p=-1.5;map=parabolic-koenigs", "|h'|^p"},
  };
}

}  // namespace gftlab
