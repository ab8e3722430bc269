// gftlab: command-line front end for the disk integration, weight-class and
// verification modules. Every subcommand writes a JSON document whose header
// records the resolved configuration, so a report can be rerun as is.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gftlab/disk_integration.h"
#include "gftlab/errors.h"
#include "gftlab/labels.h"
#include "gftlab/loewner.h"
#include "gftlab/verify_suite.h"
#include "gftlab/weights.h"

namespace {

using Json = nlohmann::ordered_json;
using namespace gftlab;

constexpr int kExitUsage = 64;
constexpr int kExitNumerical = 2;

struct Globals {
  std::uint64_t seed = 20240601;
  int threads = 1;
  double tolerance_scale = 1.0;
};

Json finite_or_marker(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

QuadratureConfig quadrature_for(const Globals& g) {
  QuadratureConfig q;
  q.tolerance *= g.tolerance_scale;
  q.extrapolation_tolerance *= g.tolerance_scale;
  q.seed = g.seed;
  validate(q);
  return q;
}

Json header(const std::string& command, const Globals& g, const QuadratureConfig& q) {
  return {{"command", command},
          {"seed", g.seed},
          {"tolerance_scale", g.tolerance_scale},
          {"quadrature",
           {{"radial_levels", q.radial_levels},
            {"first_gap", q.first_gap},
            {"refinement", q.refinement},
            {"radial_nodes", q.radial_nodes},
            {"angular_panels", q.angular_panels},
            {"max_angular_panels", q.max_angular_panels},
            {"tolerance", q.tolerance},
            {"extrapolation_tolerance", q.extrapolation_tolerance},
            {"mc_samples", q.mc_samples}}},
          {"area_measure", "dA = r dr dt / pi, A(D) = 1"},
          {"circle_means", "normalized by 2 pi"}};
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// ------------------------------------------------------------------- commands

int run_catalog() {
  for (const auto& e : catalog_entries()) {
    std::cout << std::left << std::setw(8) << e.kind << std::setw(60) << e.label << e.note;
    if (e.kind == "map") {
      const auto f = map_from_label(e.label);
      std::cout << "  [f(0) = " << fmt(std::abs(f.value_at_zero)) << ", |f'(0)| = " << fmt(std::abs(f.deriv_at_zero))
                << "]";
    }
    std::cout << '\n';
  }
  return 0;
}

struct IntegrateArgs {
  std::string map;
  std::vector<double> ps;
  bool mc = false;
  std::string report, csv;
};

int run_integrate(const IntegrateArgs& a, const Globals& g) {
  const auto q = quadrature_for(g);
  const auto f = map_from_label(a.map);
  Json doc;
  doc["header"] = header("integrate", g, q);
  Json cases = Json::array();
  std::ostringstream csv;
  csv << "map,p,value,error_bound,converged,divergence_suspected" << (a.mc ? ",mc_value,mc_stderr" : "") << '\n';
  std::cout << std::left << std::setw(8) << "p" << std::setw(22) << "value" << std::setw(14) << "error" << "status\n";
  bool numerical_failure = false;
  for (double p : a.ps) {
    const auto est = brennan_integral(f.deriv, p, q);
    Json j{{"map", f.label},
           {"p", p},
           {"value", finite_or_marker(est.value)},
           {"error_bound", finite_or_marker(est.error_bound)},
           {"converged", est.converged},
           {"divergence_suspected", est.divergence_suspected}};
    csv << a.map << ',' << p << ',' << fmt(est.value) << ',' << fmt(est.error_bound) << ',' << est.converged << ','
        << est.divergence_suspected;
    std::string status = est.divergence_suspected ? "divergent" : (est.converged ? "converged" : "not converged");
    if (a.mc) {
      const auto mc = monte_carlo_brennan(f.deriv, p, q.mc_samples, g.seed);
      j["monte_carlo"] = {{"value", finite_or_marker(mc.value)},
                          {"standard_error", finite_or_marker(mc.error_bound)},
                          {"samples", q.mc_samples},
                          {"rejected_samples", mc.rejected_samples}};
      csv << ',' << fmt(mc.value) << ',' << fmt(mc.error_bound);
      status += ", mc " + fmt(mc.value) + " +- " + fmt(mc.error_bound);
    }
    csv << '\n';
    if (!est.converged && !est.divergence_suspected) numerical_failure = true;
    cases.push_back(std::move(j));
    std::cout << std::left << std::setw(8) << p << std::setw(22) << fmt(est.value) << std::setw(14)
              << fmt(est.error_bound) << status << '\n';
  }
  doc["cases"] = std::move(cases);
  write_file(a.report, doc.dump(2) + "\n");
  write_file(a.csv, csv.str());
  if (a.report.empty()) std::cout << doc.dump(2) << '\n';
  return numerical_failure ? kExitNumerical : 0;
}

struct ScanArgs {
  std::string weight;
  std::vector<double> qs{2.0};
  int levels = 6;
  double eta = 0.0;
  std::string report, csv;
};

int run_scan(const ScanArgs& a, const Globals& g) {
  const auto quad = quadrature_for(g);
  const auto w = weight_from_label(a.weight);
  Json doc;
  doc["header"] = header("scan-weights", g, quad);
  doc["header"]["threads_do_not_change_results"] = true;
  Json reports = Json::array();
  std::ostringstream csv;
  csv << "weight,q,eta,level,max_quotient,boxes,divergent_boxes\n";
  bool numerical_failure = false;
  for (double q : a.qs) {
    const auto rep = bq_sup_scan(w, q, a.eta, a.levels, quad, g.threads);
    Json boxes = Json::array();
    for (const auto& b : rep.boxes) {
      boxes.push_back({{"level", b.level},
                       {"index", b.index},
                       {"theta", b.box.theta()},
                       {"h", b.box.h()},
                       {"quotient", finite_or_marker(b.quotient)},
                       {"diverges", b.diverges},
                       {"converged", b.converged}});
    }
    Json level_max = Json::array();
    for (double m : rep.level_maxima) level_max.push_back(finite_or_marker(m));
    const double growth = rep.levels >= 2 ? level_growth(rep, 1, rep.levels) : 1.0;
    const std::string verdict = rep.any_divergent || growth > 1.05
                                    ? "growth detected"
                                    : "no growth detected through level " + std::to_string(rep.levels);
    reports.push_back({{"q", rep.q},
                       {"eta", rep.eta},
                       {"levels", rep.levels},
                       {"family", rep.family},
                       {"complete", rep.complete},
                       {"sup_quotient", finite_or_marker(rep.sup_quotient)},
                       {"level_maxima", level_max},
                       {"level_growth", finite_or_marker(growth)},
                       {"any_divergent", rep.any_divergent},
                       {"all_converged", rep.all_converged},
                       {"verdict", verdict},
                       {"boxes", boxes}});
    std::cout << "q = " << q << ": " << verdict << ", sup " << fmt(rep.sup_quotient) << '\n';
    for (int l = 1; l <= rep.levels; ++l) {
      int count = 0, divergent = 0;
      for (const auto& b : rep.boxes) {
        if (b.level != l) continue;
        ++count;
        divergent += b.diverges;
      }
      csv << a.weight << ',' << q << ',' << a.eta << ',' << l << ',' << fmt(rep.level_maxima[l - 1]) << ',' << count
          << ',' << divergent << '\n';
      std::cout << "  level " << std::setw(3) << l << fmt(rep.level_maxima[l - 1]) << '\n';
    }
    numerical_failure = numerical_failure || !rep.all_converged;
  }
  doc["weight"] = w.label;
  doc["reports"] = std::move(reports);
  write_file(a.report, doc.dump(2) + "\n");
  write_file(a.csv, csv.str());
  return numerical_failure ? kExitNumerical : 0;
}

struct LoewnerArgs {
  std::string driver = "const:1";
  std::string z = "0.3";
  double T = 1.0;
  double dt = 1e-3;
  std::vector<double> ps{1.0};
  int stride = 100;
  std::string report, csv;
};

int run_loewner(const LoewnerArgs& a, const Globals& g) {
  const auto k = driver_from_label(a.driver);
  const Complex z = parse_complex(a.z);
  const auto chain = integrate_chain(k, z, a.T, a.dt);
  Json doc;
  doc["header"] = {{"command", "loewner"},     {"seed", g.seed},         {"driver", k.label},
                   {"z", {z.real(), z.imag()}}, {"T", a.T},               {"dt", a.dt},
                   {"p", a.ps},                 {"integrator", "RK4 with step-halving control"}};
  std::ostringstream csv;
  csv << "t,phi_re,phi_im,dphi_re,dphi_im";
  for (double p : a.ps) csv << ",Q_p=" << p;
  csv << '\n';
  Json rows = Json::array();
  const int stride = std::max(1, a.stride);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& s = chain[i];
    Json q = Json::array();
    csv << fmt(s.t) << ',' << fmt(s.phi.real()) << ',' << fmt(s.phi.imag()) << ',' << fmt(s.dphi.real()) << ','
        << fmt(s.dphi.imag());
    for (double p : a.ps) {
      const double v = shimorin_Q(s, p);
      csv << ',' << fmt(v);
      q.push_back(v);
    }
    csv << '\n';
    if (i % stride == 0 || i + 1 == chain.size()) {
      rows.push_back({{"t", s.t}, {"phi", {s.phi.real(), s.phi.imag()}}, {"dphi", {s.dphi.real(), s.dphi.imag()}},
                      {"Q", q}});
    }
  }
  Json mono = Json::object();
  for (double p : a.ps) {
    const double inc = monotonicity_max_increase(k, z, p, a.T, a.dt);
    mono[fmt(p)] = inc;
    std::cout << "p = " << p << ": max increase of Q along the chain " << fmt(inc) << '\n';
  }
  doc["trajectory"] = std::move(rows);
  doc["max_increase"] = std::move(mono);
  const auto& last = chain.back();
  std::cout << "phi_T(z) = " << fmt(last.phi.real()) << (last.phi.imag() < 0 ? "" : "+") << fmt(last.phi.imag())
            << "i, |phi_T'(z)| = " << fmt(std::abs(last.dphi)) << '\n';
  write_file(a.report, doc.dump(2) + "\n");
  write_file(a.csv, csv.str());
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string config, report, csv;
  bool timings = false;
};

int run_verify(const VerifyArgs& a, const Globals& g, const CLI::App& app) {
  SuiteConfig cfg = a.config.empty() ? SuiteConfig{} : parse_suite_config(read_file(a.config));
  // Flags given on the command line override the config file.
  if (app.count("--seed") || a.config.empty()) cfg.seed = g.seed;
  if (app.count("--tolerance-scale") || a.config.empty()) cfg.tolerance_scale = g.tolerance_scale;
  if (app.count("--threads") || a.config.empty()) cfg.threads = g.threads;
  const auto results = run_suite(a.suite, cfg);
  std::cout << summary_table(results);
  write_file(a.report, report_json(a.suite, cfg, results, a.timings));
  write_file(a.csv, report_csv(results, a.timings));
  return exit_code_for(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gftlab: weighted Bergman-space numerics on the unit disk"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random sample")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tolerance-scale", g.tolerance_scale, "Multiplier on quadrature accuracy targets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  app.add_subcommand("catalog", "List built-in map, model, driver and weight labels");

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "Brennan integrals int_D |f'|^p dA");
  integrate->add_option("--map", ia.map, "Map label")->required();
  integrate->add_option("--p", ia.ps, "Exponents")->required()->delimiter(',')->allow_extra_args(false);
  integrate->add_flag("--mc", ia.mc, "Add a Monte Carlo cross-check");
  integrate->add_option("--report", ia.report, "JSON output path");
  integrate->add_option("--csv", ia.csv, "CSV output path");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan-weights", "Dyadic B_q scans of a weight");
  scan->add_option("--weight", sa.weight, "Weight label")->required();
  scan->add_option("--q", sa.qs, "Exponents q > 1")->delimiter(',')->allow_extra_args(false);
  scan->add_option("--levels", sa.levels, "Dyadic levels (1..12)")->check(CLI::Range(1, 12))->capture_default_str();
  scan->add_option("--eta", sa.eta, "Standard weight exponent, > -1")->capture_default_str();
  scan->add_option("--report", sa.report, "JSON output path");
  scan->add_option("--csv", sa.csv, "CSV output path");

  LoewnerArgs la;
  auto* loewner = app.add_subcommand("loewner", "Integrate a radial Loewner chain");
  loewner->add_option("--driver", la.driver, "Driver label")->capture_default_str();
  loewner->add_option("--z", la.z, "Start point in the disk")->capture_default_str();
  loewner->add_option("--T", la.T, "Final time")->capture_default_str();
  loewner->add_option("--dt", la.dt, "Step")->capture_default_str();
  loewner->add_option("--p", la.ps, "Exponents in (0, 2) for Q_t")->delimiter(',')->allow_extra_args(false);
  loewner->add_option("--stride", la.stride, "Keep every n-th state in the JSON trajectory")->capture_default_str();
  loewner->add_option("--report", la.report, "JSON output path");
  loewner->add_option("--csv", la.csv, "CSV output path (every step)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suites_help = "Suite:";
  for (const auto& s : suite_names()) suites_help += " " + s;
  verify->add_option("--suite", va.suite, suites_help)->capture_default_str();
  verify->add_option("--config", va.config, "JSON config file");
  verify->add_option("--report", va.report, "JSON report path");
  verify->add_option("--csv", va.csv, "CSV report path");
  verify->add_flag("--timings", va.timings, "Include per-check runtimes in the reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("catalog")) return run_catalog();
    if (app.got_subcommand(integrate)) return run_integrate(ia, g);
    if (app.got_subcommand(scan)) return run_scan(sa, g);
    if (app.got_subcommand(loewner)) return run_loewner(la, g);
    if (app.got_subcommand(verify)) return run_verify(va, g, app);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
