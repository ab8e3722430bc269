#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gftlab/disk_integration.h"

namespace gftlab {

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

/// How `measured` is compared against `threshold` for a pass.
enum class Comparison { at_most, at_least, greater, less };
std::string to_string(Comparison c);

struct CheckResult {
  std::string check_id;
  std::string anchor;  // the statement being checked
  Verdict verdict = Verdict::inconclusive;
  double measured = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::at_most;
  std::int64_t runtime_ms = 0;
  std::string detail;  // grids, per-case values, failure notes
};

/// Everything a suite run depends on. Two runs with equal configs produce
/// identical results; `threads` only changes scheduling.
struct SuiteConfig {
  std::uint64_t seed = 20240601;
  double tolerance_scale = 1.0;  // multiplies the quadrature accuracy targets
  int threads = 1;

  struct Grids {
    int distortion_samples = 10000;
    double distortion_radius = 0.99;
    int shimorin_samples = 10000;
    double shimorin_radius = 0.99;
    int semigroup_triples = 1000;
    double semigroup_radius = 0.95;
    double semigroup_max_time = 2.0;
    int bq_levels = 8;
    int bq_random_boxes = 100;
    int composition_radial = 48;
    int composition_angular = 256;
    int low_radial = 40;
    int low_angular = 128;
    int kernel_scan = 8;
  } grids;

  struct Tolerances {
    double identity_integral = 1e-10;
    double elliptic_integral = 1e-8;
    double half_plane_integral = 1e-5;
    double mc_sigmas = 3.0;
    double semigroup_law = 1e-9;
    double dw_derivative = 1e-6;
    double distortion = 1e-9;
    double koebe_extremal = 1e-10;
    double self_map_shimorin = 1e-9;
    double loewner_shimorin = 1e-6;
    double monotonicity = 1e-6;
    double self_convergence = 0.3;
    double variational = 1e-4;
    double subordination = 1e-9;
    double exponent_koebe = 0.1;
    double exponent_pole = 0.05;
    double exponent_identity = 0.05;
    double bq_unit = 1e-8;
    double level_growth = 0.05;
    double divergent_growth = 10.0;
    double refinement_change = 0.01;
    double lp_spread = 100.0;
    double lp_constant = 1e-8;
    double composition_decrease = 0.05;
    double continuity = 0.05;
    double q_monotonicity = 0.05;
  } tolerances;

  struct Catalog {
    std::vector<std::string> conformal_maps{
        "koebe",
        "half-plane:c=1",
        "parabolic-koenigs",
        "strip",
        "half-strip",
        "spirallike:lambda=1;atoms=1@1",
        "spirallike:lambda=1;atoms=0.5@1,0.5@-1",
        "log-pole",
        "pole:a=0.5",
    };
    std::vector<std::string> models{
        "parabolic:canonical",
        "hyperbolic:strip",
        "hyperbolic:half-strip",
        "elliptic:lambda=1;koenigs=id",
        "elliptic:lambda=1+1i;koenigs=id",
        "elliptic:lambda=1;koenigs=koebe",
        "elliptic:lambda=1+1i;koenigs=spirallike:lambda=1+1i;atoms=0.5@1;offset=-0.5",
    };
    std::vector<std::string> self_maps{
        "id",
        "dilate:s=0.764842187284489+0.644217687237691i;map=id",
        "iterate:t=1;model=elliptic:lambda=1;koenigs=id",
        "iterate:t=0.5;model=elliptic:lambda=1+1i;koenigs=id",
        "iterate:t=1;model=elliptic:lambda=1;koenigs=koebe",
        "iterate:t=0.5;model=elliptic:lambda=1;koenigs=spirallike:lambda=1;atoms=0.5@1,0.5@-1",
    };
    std::vector<std::string> drivers{"const:1", "rot:omega=1"};
  } catalog;

  QuadratureConfig quadrature;
};

/// Parses a JSON config document; absent keys keep their defaults. Throws
/// UsageError on malformed input or unknown keys.
SuiteConfig parse_suite_config(const std::string& json_text);
/// Resolved config as JSON (threads omitted: it cannot change results).
std::string config_json(const SuiteConfig& cfg);

std::vector<std::string> suite_names();

/// Runs the named suite ("all" runs every suite, each check once). Results are
/// sorted by check_id. Throws UsageError for unknown names.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg);

/// JSON report: resolved config, per-check results, summary counts. Timings are
/// included only on request so that reruns compare byte for byte.
std::string report_json(const std::string& suite, const SuiteConfig& cfg, const std::vector<CheckResult>& results,
                        bool include_timings = false);
std::string report_csv(const std::vector<CheckResult>& results, bool include_timings = false);
/// Fixed-width table for terminals.
std::string summary_table(const std::vector<CheckResult>& results);

/// 0 when everything passed, 1 on any failure, 2 when something was
/// inconclusive and nothing failed.
int exit_code_for(const std::vector<CheckResult>& results);

}  // namespace gftlab
