// Command-line front end: scenario-driven certification runs with
// machine-readable JSON reports.
//
// Exit codes: 0 when every certificate holds, 1 on a certification failure or
// a mathematically inadmissible instance (the failing instance is serialized
// to the report stream), 2 on malformed input (bad flags, unparseable JSON,
// schema violations).

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opjensen/errors.hpp"
#include "opjensen/kantorovich.hpp"
#include "opjensen/scenario.hpp"
#include "opjensen/version.hpp"

namespace {

using opjensen::json;

struct GlobalOpts {
  uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  double tol_scale = 1.0;
};

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) opjensen::write_text_atomic(out_path, text);
  std::fputs(text.c_str(), stdout);
}

int report_exit(const opjensen::RunResult& rr, const GlobalOpts& g) {
  emit(rr.report, g.out);
  return rr.holds() ? 0 : 1;
}

opjensen::Scenario load_scenario(const std::string& path, const std::string& expect_kind,
                                 const GlobalOpts& g) {
  opjensen::Scenario sc = opjensen::scenario_from_file(path);
  if (!expect_kind.empty() && sc.kind != expect_kind)
    throw opjensen::ValidationError("'" + path + "' has kind '" + sc.kind +
                                    "', expected '" + expect_kind + "'");
  if (g.seed_set) sc.seed = g.seed;
  return sc;
}

json json_from_file(const std::string& path) {
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (!file) throw opjensen::ValidationError("cannot open '" + path + "'");
  std::string text;
  char buf[4096];
  size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), file)) > 0) text.append(buf, got);
  std::fclose(file);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw opjensen::ValidationError("cannot parse '" + path + "': " + e.what());
  }
}

// "lo:hi:steps" -> evenly spaced theta grid with `steps` points.
json parse_theta_grid(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw opjensen::ValidationError("--theta-grid expects lo:hi:steps");
  try {
    size_t used = 0;
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string steps_s = text.substr(c2 + 1);
    const int steps = std::stoi(steps_s, &used);
    if (used != steps_s.size() || steps < 1)
      throw opjensen::ValidationError("--theta-grid needs a positive step count");
    return json{{"lo", lo}, {"hi", hi}, {"count", steps}};
  } catch (const opjensen::ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw opjensen::ValidationError("cannot parse --theta-grid '" + text + "'");
  }
}

// "lo,hi" -> [lo, hi]
std::vector<double> parse_pair(const std::string& text, const char* flag) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw opjensen::ValidationError(std::string(flag) + " expects lo,hi");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw opjensen::ValidationError(std::string("cannot parse ") + flag + " '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified converse bounds for operator means under compressions"};
  app.set_version_flag("--version", opjensen::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Override the scenario seed");
  app.add_option("--out", g.out, "Write the report here (atomic rename)");
  app.add_option("--tol-scale", g.tol_scale, "Scale all certification tolerances");

  int rc = 0;
  json failing;  // serialized on math-precondition failures

  // kantorovich --m --M --r: prints the constant, nothing else.
  double km = 0, kM = 0, kr = 0;
  CLI::App* kanto = app.add_subcommand("kantorovich", "Evaluate the Kantorovich constant");
  kanto->add_option("--m", km, "Spectrum lower endpoint")->required();
  kanto->add_option("--M", kM, "Spectrum upper endpoint")->required();
  kanto->add_option("--r", kr, "Power")->required();
  kanto->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    opjensen::Scenario sc;
    sc.kind = "kantorovich";
    sc.payload = json{{"m", km}, {"M", kM}, {"r", kr}};
    failing = sc.payload;
    const opjensen::RunResult rr = opjensen::run_scenario(sc, g.tol_scale);
    if (!g.out.empty()) opjensen::write_json_atomic(g.out, rr.report);
    std::printf("%s\n", opjensen::format_significant(opjensen::kantorovich(km, kM, kr)).c_str());
    rc = rr.holds() ? 0 : 1;
  });

  // envelope --f --m --M --degree --target-eps: prints the report.
  std::string env_f;
  double env_m = 0, env_M = 1, env_eps = 1e9;
  int env_degree = 4;
  CLI::App* envc = app.add_subcommand("envelope", "Build a two-sided polynomial envelope");
  envc->add_option("--f", env_f, "Scalar function (pow:q, exp, log, affine:a,b, poly:...)")
      ->required();
  envc->add_option("--m", env_m, "Interval lower endpoint")->required();
  envc->add_option("--M", env_M, "Interval upper endpoint")->required();
  envc->add_option("--degree", env_degree, "Interpolation degree")->required();
  envc->add_option("--target-eps", env_eps, "Required envelope half-width");
  envc->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    opjensen::Scenario sc;
    sc.kind = "envelope";
    sc.payload = json{{"f", env_f}, {"m", env_m}, {"M", env_M},
                      {"degree", env_degree}, {"target_eps", env_eps}};
    failing = sc.payload;
    rc = report_exit(opjensen::run_scenario(sc, g.tol_scale), g);
  });

  // certify <scenario.json>
  std::string certify_path;
  CLI::App* cert = app.add_subcommand("certify", "Run a certification scenario file");
  cert->add_option("scenario", certify_path, "Scenario JSON file")->required();
  cert->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    const opjensen::Scenario sc = load_scenario(certify_path, "certify", g);
    failing = sc.payload;
    rc = report_exit(opjensen::run_scenario(sc, g.tol_scale), g);
  });

  // ratio [scenario.json] | --f --g --m --M [--sign] [--form]
  std::string ratio_path, ratio_f, ratio_g, ratio_sign = "positive", ratio_form = "example";
  double ratio_m = 0, ratio_M = 1;
  CLI::App* ratio = app.add_subcommand("ratio", "Two-sided ratio converse constants");
  ratio->add_option("scenario", ratio_path, "Scenario JSON file (overrides the flags)");
  ratio->add_option("--f", ratio_f, "Convex scalar function");
  ratio->add_option("--g", ratio_g, "Denominator scalar function");
  ratio->add_option("--m", ratio_m, "Interval lower endpoint");
  ratio->add_option("--M", ratio_M, "Interval upper endpoint");
  ratio->add_option("--sign", ratio_sign, "Declared sign of g: positive|negative");
  ratio->add_option("--form", ratio_form, "Constant form: example|theorem");
  ratio->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    opjensen::Scenario sc;
    if (!ratio_path.empty()) {
      sc = load_scenario(ratio_path, "ratio", g);
    } else {
      if (ratio_f.empty() || ratio_g.empty())
        throw opjensen::ValidationError("ratio needs a scenario file or --f/--g/--m/--M");
      sc.kind = "ratio";
      sc.payload = json{{"f", ratio_f}, {"g", ratio_g}, {"m", ratio_m}, {"M", ratio_M},
                        {"sign", ratio_sign}, {"form", ratio_form}};
    }
    failing = sc.payload;
    rc = report_exit(opjensen::run_scenario(sc, g.tol_scale), g);
  });

  // difference [scenario.json] | --f --g --m --M [--form]
  std::string diff_path, diff_f, diff_g, diff_form = "example";
  double diff_m = 0, diff_M = 1;
  CLI::App* diff = app.add_subcommand("difference", "Two-sided difference converse constants");
  diff->add_option("scenario", diff_path, "Scenario JSON file (overrides the flags)");
  diff->add_option("--f", diff_f, "Convex scalar function");
  diff->add_option("--g", diff_g, "Subtracted scalar function");
  diff->add_option("--m", diff_m, "Interval lower endpoint");
  diff->add_option("--M", diff_M, "Interval upper endpoint");
  diff->add_option("--form", diff_form, "Constant form: example|theorem");
  diff->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    opjensen::Scenario sc;
    if (!diff_path.empty()) {
      sc = load_scenario(diff_path, "difference", g);
    } else {
      if (diff_f.empty() || diff_g.empty())
        throw opjensen::ValidationError("difference needs a scenario file or --f/--g/--m/--M");
      sc.kind = "difference";
      sc.payload = json{{"f", diff_f}, {"g", diff_g}, {"m", diff_m}, {"M", diff_M},
                        {"form", diff_form}};
    }
    failing = sc.payload;
    rc = report_exit(opjensen::run_scenario(sc, g.tol_scale), g);
  });

  // algebra --op add|mul --a lo,hi --b lo,hi
  std::string alg_op, alg_a, alg_b;
  CLI::App* alg = app.add_subcommand("algebra", "Combine certified constant intervals");
  alg->add_option("--op", alg_op, "add|mul")->required();
  alg->add_option("--a", alg_a, "First interval as lo,hi")->required();
  alg->add_option("--b", alg_b, "Second interval as lo,hi")->required();
  alg->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    opjensen::Scenario sc;
    sc.kind = "algebra";
    sc.payload = json{{"op", alg_op}, {"a", parse_pair(alg_a, "--a")},
                      {"b", parse_pair(alg_b, "--b")}};
    failing = sc.payload;
    rc = report_exit(opjensen::run_scenario(sc, g.tol_scale), g);
  });

  // tail --spec spec.json --theta-grid lo:hi:steps --ell L --mode add|mul [--csv path]
  std::string tail_spec, tail_grid, tail_mode, tail_csv;
  int tail_ell = 1;
  CLI::App* tail = app.add_subcommand("tail", "Monte Carlo tail-bound sweep (CSV)");
  tail->add_option("--spec", tail_spec, "Tail spec JSON (n, k, weights, m, M, trials, seed, commuting, f, h, g)")
      ->required();
  tail->add_option("--theta-grid", tail_grid, "Threshold grid as lo:hi:steps")->required();
  tail->add_option("--ell", tail_ell, "Ky Fan index")->required();
  tail->add_option("--mode", tail_mode, "add|mul")->required();
  tail->add_option("--csv", tail_csv, "Write the CSV here instead of stdout");
  tail->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    opjensen::Scenario sc;
    sc.kind = "tail";
    sc.payload = json_from_file(tail_spec);
    sc.payload["ell"] = tail_ell;
    sc.payload["mode"] = tail_mode;
    sc.payload["theta_grid"] = parse_theta_grid(tail_grid);
    sc.payload.erase("thetas");
    if (g.seed_set) sc.payload["seed"] = g.seed;
    failing = sc.payload;
    const opjensen::RunResult rr = opjensen::run_scenario(sc, g.tol_scale);
    std::string csv = "theta,p_lhs,p_rhs,ci,dominated\n";
    for (const json& row : rr.report.at("results")) {
      csv += opjensen::format_significant(row.at("theta").get<double>()) + ",";
      csv += opjensen::format_significant(row.at("p_lhs").get<double>()) + ",";
      csv += opjensen::format_significant(row.at("p_rhs").get<double>()) + ",";
      csv += opjensen::format_significant(row.at("ci_halfwidth").get<double>()) + ",";
      csv += row.at("dominated").get<bool>() ? "1\n" : "0\n";
    }
    if (!tail_csv.empty())
      opjensen::write_text_atomic(tail_csv, csv);
    else
      std::fputs(csv.c_str(), stdout);
    if (!g.out.empty()) opjensen::write_json_atomic(g.out, rr.report);
    rc = rr.holds() ? 0 : 1;
  });

  // suite <dir>
  std::string suite_dir;
  CLI::App* suite = app.add_subcommand("suite", "Run every scenario in a directory");
  suite->add_option("dir", suite_dir, "Directory of scenario JSON files")->required();
  suite->callback([&] {
    g.seed_set = app.count("--seed") > 0;
    const opjensen::SuiteResult sr = opjensen::run_suite_dir(suite_dir, g.tol_scale);
    emit(sr.report, g.out);
    rc = sr.scenarios_schema > 0 ? 2 : (sr.scenarios_failed > 0 ? 1 : 0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const opjensen::ValidationError& e) {
    std::fprintf(stderr, "schema error: %s\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "schema error: %s\n", e.what());
    return 2;
  } catch (const opjensen::ToolkitError& e) {
    json out{{"error", e.what()}, {"scenario", failing}};
    const std::string text = out.dump(2) + "\n";
    if (!g.out.empty()) opjensen::write_text_atomic(g.out, text);
    std::fputs(text.c_str(), stdout);
    std::fprintf(stderr, "certification error: %s\n", e.what());
    return 1;
  }
  return rc;
}
