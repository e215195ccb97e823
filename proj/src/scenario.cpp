#include "opjensen/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "opjensen/envelope.hpp"
#include "opjensen/errors.hpp"
#include "opjensen/kantorovich.hpp"
#include "opjensen/optimize.hpp"
#include "opjensen/version.hpp"

namespace opjensen {

namespace {

// ---- field access with diagnostics -----------------------------------------

const json& need(const json& j, const char* field, const char* where) {
  if (!j.is_object() || !j.contains(field))
    throw ValidationError(std::string(where) + ": missing field '" + field + "'");
  return j.at(field);
}

double need_number(const json& j, const char* field, const char* where) {
  const json& v = need(j, field, where);
  if (!v.is_number())
    throw ValidationError(std::string(where) + ": field '" + field + "' must be a number");
  return v.get<double>();
}

int need_int(const json& j, const char* field, const char* where) {
  const json& v = need(j, field, where);
  if (!v.is_number_integer())
    throw ValidationError(std::string(where) + ": field '" + field + "' must be an integer");
  return v.get<int>();
}

std::string need_string(const json& j, const char* field, const char* where) {
  const json& v = need(j, field, where);
  if (!v.is_string())
    throw ValidationError(std::string(where) + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const json& v, const char* where) {
  if (!v.is_array() || v.empty())
    throw ValidationError(std::string(where) + ": expected a nonempty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number())
      throw ValidationError(std::string(where) + ": expected numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

ScalarFunction parse_fn(const json& payload, const char* field, const char* where) {
  return ScalarFunction::parse(need_string(payload, field, where));
}

Eigen::MatrixXd rows_to_matrix(const json& rows, const char* where) {
  if (!rows.is_array() || rows.empty())
    throw ValidationError(std::string(where) + ": 'rows' must be a nonempty array");
  const size_t r = rows.size();
  size_t c = 0;
  Eigen::MatrixXd M;
  for (size_t i = 0; i < r; ++i) {
    const auto row = number_list(rows.at(i), where);
    if (i == 0) {
      c = row.size();
      M.resize(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    } else if (row.size() != c) {
      throw ValidationError(std::string(where) + ": ragged rows");
    }
    for (size_t k = 0; k < c; ++k) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
  }
  return M;
}

GSign parse_sign(const json& payload, const char* where) {
  const std::string s =
      payload.contains("sign") ? need_string(payload, "sign", where) : "positive";
  if (s == "positive") return GSign::Positive;
  if (s == "negative") return GSign::Negative;
  throw ValidationError(std::string(where) + ": sign must be 'positive' or 'negative'");
}

BoundForm parse_form(const json& payload, const char* where) {
  const std::string s =
      payload.contains("form") ? need_string(payload, "form", where) : "example";
  if (s == "example") return BoundForm::Example;
  if (s == "theorem") return BoundForm::Theorem;
  throw ValidationError(std::string(where) + ": form must be 'example' or 'theorem'");
}

json order_to_json(const OrderCertificate& oc) {
  return json{{"gap_min_eig", oc.gap_min_eig}, {"tol", oc.tol}, {"holds", oc.holds}};
}

// Envelope specification inside certify-like payloads: either an
// interpolation plan {"degree": d, "target_eps": e} or explicit polynomials
// {"lower": [...], "upper": [...], "eps": e} (optionally "validate": false to
// push a deliberately broken envelope through to the certifiers).
std::vector<Envelope> envelopes_from_payload(const json& payload, const WeightedEnsemble& ens,
                                             const ScalarFunction& f, const char* where) {
  const json& spec = need(payload, "envelope", where);
  if (spec.contains("degree")) {
    const int degree = need_int(spec, "degree", "envelope");
    double target = 1e9;
    if (spec.contains("eps"))
      target = need_number(spec, "eps", "envelope");
    else if (spec.contains("target_eps"))
      target = need_number(spec, "target_eps", "envelope");
    return make_envelopes(ens, f, degree, target);
  }
  if (spec.contains("lower") && spec.contains("upper")) {
    const Polynomial lower{number_list(need(spec, "lower", "envelope"), "envelope.lower")};
    const Polynomial upper{number_list(need(spec, "upper", "envelope"), "envelope.upper")};
    const double eps = need_number(spec, "eps", "envelope");
    const bool validate =
        spec.contains("validate") ? spec.at("validate").get<bool>() : true;
    std::vector<Envelope> envs;
    for (size_t j = 0; j < ens.size(); ++j) {
      Envelope env{f, ens.member(j).window, lower, upper, eps};
      if (validate) validate_envelope(env);
      envs.push_back(std::move(env));
    }
    return envs;
  }
  throw ValidationError(std::string(where) +
                        ": envelope needs either 'degree' or explicit 'lower'/'upper'");
}

// ---- per-kind runners -------------------------------------------------------

RunResult run_kantorovich(const Scenario& sc) {
  const char* where = "kantorovich";
  const double m = need_number(sc.payload, "m", where);
  const double M = need_number(sc.payload, "M", where);
  const double r = need_number(sc.payload, "r", where);
  const double value = kantorovich(m, M, r);
  RunResult rr;
  rr.pass = 1;
  rr.report["results"] = json::array({json{{"value", value},
                                           {"printed", format_significant(value)}}});
  return rr;
}

RunResult run_envelope(const Scenario& sc) {
  const char* where = "envelope";
  const ScalarFunction f = parse_fn(sc.payload, "f", where);
  const double m = need_number(sc.payload, "m", where);
  const double M = need_number(sc.payload, "M", where);
  const int degree = need_int(sc.payload, "degree", where);
  const double target = need_number(sc.payload, "target_eps", where);
  const Envelope env = build_envelope(f, m, M, degree, target);
  validate_envelope(env);
  RunResult rr;
  rr.pass = 1;
  rr.report["results"] = json::array({json{{"eps", env.eps},
                                           {"lower", env.lower.coeffs()},
                                           {"upper", env.upper.coeffs()}}});
  return rr;
}

RunResult run_certify(const Scenario& sc, double tol_scale) {
  const char* where = "certify";
  const WeightedEnsemble ens = ensemble_from_json(sc.payload);
  const PhiMap phi = phi_from_json(need(sc.payload, "phi", where));
  const ScalarFunction f = parse_fn(sc.payload, "f", where);
  const ScalarFunction g = parse_fn(sc.payload, "g", where);
  const std::vector<Envelope> envs = envelopes_from_payload(sc.payload, ens, f, where);

  FFamily F = FFamily::congruence();
  const json& fj = need(sc.payload, "F", where);
  if (fj.is_string() && fj.get<std::string>() == "congruence") {
    F = FFamily::congruence();
  } else if (fj.is_object() && fj.contains("difference")) {
    F = FFamily::difference(fj.at("difference").get<double>());
  } else if (fj.is_object() && fj.contains("kind")) {
    const std::string kind = need_string(fj, "kind", "F");
    if (kind == "congruence")
      F = FFamily::congruence();
    else if (kind == "difference")
      F = FFamily::difference(need_number(fj, "alpha", "F"));
    else
      throw ValidationError("F.kind must be 'difference' or 'congruence'");
  } else {
    throw ValidationError("certify: F must be 'congruence' or {difference: alpha}");
  }

  RunResult rr;
  json results = json::array();

  // Per-member two-sided sandwich certificates.
  for (size_t j = 0; j < ens.size(); ++j) {
    const HermitianOperator& A = ens.member(j).A;
    const SandwichPair sw = build_sandwich(phi, envs[j], A);
    const HermitianOperator mapped =
        apply_polynomial(Polynomial(phi.coeffs()), apply_scalar(f, A));
    const double tol = tol_scale * certification_tol(sw.upper_raw, sw.lower_raw);
    const OrderCertificate up = loewner_leq(mapped, sw.upper_raw, tol);
    const OrderCertificate low = loewner_leq(sw.lower_raw, mapped, tol);
    results.push_back(json{{"what", "sandwich_upper"},
                           {"member", j},
                           {"certificate", order_to_json(up)}});
    results.push_back(json{{"what", "sandwich_lower"},
                           {"member", j},
                           {"certificate", order_to_json(low)}});
    rr.pass += up.holds + low.holds;
    rr.fail += !up.holds + !low.holds;
  }

  for (Side side : {Side::Upper, Side::Lower}) {
    const BoundCertificate cert = general_bound(ens, phi, envs, g, F, side);
    results.push_back(certificate_to_json(cert));
    rr.pass += cert.certificate.holds;
    rr.fail += !cert.certificate.holds;
  }
  rr.report["results"] = std::move(results);
  return rr;
}

RunResult run_ratio(const Scenario& sc, double /*tol_scale*/) {
  const char* where = "ratio";
  const ScalarFunction f = parse_fn(sc.payload, "f", where);
  const ScalarFunction g = parse_fn(sc.payload, "g", where);
  const GSign sign = parse_sign(sc.payload, where);
  const BoundForm form = parse_form(sc.payload, where);

  RunResult rr;
  json results = json::array();

  const bool has_ensemble = sc.payload.contains("ensemble");
  Interval iv{0.0, 1.0};
  if (sc.payload.contains("m") && sc.payload.contains("M")) {
    iv = {need_number(sc.payload, "m", where), need_number(sc.payload, "M", where)};
  } else if (!has_ensemble) {
    throw ValidationError("ratio: need either m/M or an ensemble");
  }

  if (has_ensemble) {
    const WeightedEnsemble ens = ensemble_from_json(sc.payload);
    const PhiMap phi = phi_from_json(need(sc.payload, "phi", where));
    if (!sc.payload.contains("m")) iv = ens.window_hull();
    std::pair<BoundCertificate, BoundCertificate> certs =
        (form == BoundForm::Theorem)
            ? ratio_certify_theorem(ens, phi,
                                    envelopes_from_payload(sc.payload, ens, f, where), g, sign)
            : ratio_certify_example(ens, phi, f, g, sign);
    results.push_back(certificate_to_json(certs.first));
    results.push_back(certificate_to_json(certs.second));
    results.push_back(json{{"alpha1", certs.first.scalar_constant},
                           {"alpha2", certs.second.scalar_constant}});
    rr.pass += certs.first.certificate.holds + certs.second.certificate.holds;
    rr.fail += !certs.first.certificate.holds + !certs.second.certificate.holds;
  } else {
    const LinearBound lb = chord_tangent(f, iv.lo, iv.hi);
    const ScalarConstant a1 =
        ratio_constant(Polynomial::line(lb.a, lb.b), g, iv, Side::Upper, sign);
    const ScalarConstant a2 =
        ratio_constant(Polynomial::line(lb.a, lb.b_prime), g, iv, Side::Lower, sign);
    results.push_back(json{{"alpha1", a1.value},
                           {"alpha1_x_star", a1.x_star},
                           {"alpha2", a2.value},
                           {"alpha2_x_star", a2.x_star},
                           {"chord", {lb.a, lb.b}},
                           {"tangent", {lb.a, lb.b_prime}},
                           {"printed_alpha1", format_significant(a1.value)},
                           {"printed_alpha2", format_significant(a2.value)}});
    rr.pass += 1;
  }
  rr.report["results"] = std::move(results);
  return rr;
}

RunResult run_difference(const Scenario& sc, double /*tol_scale*/) {
  const char* where = "difference";
  const ScalarFunction f = parse_fn(sc.payload, "f", where);
  const ScalarFunction g = parse_fn(sc.payload, "g", where);
  const BoundForm form = parse_form(sc.payload, where);

  RunResult rr;
  json results = json::array();

  const bool has_ensemble = sc.payload.contains("ensemble");
  Interval iv{0.0, 1.0};
  if (sc.payload.contains("m") && sc.payload.contains("M")) {
    iv = {need_number(sc.payload, "m", where), need_number(sc.payload, "M", where)};
  } else if (!has_ensemble) {
    throw ValidationError("difference: need either m/M or an ensemble");
  }

  if (has_ensemble) {
    const WeightedEnsemble ens = ensemble_from_json(sc.payload);
    const PhiMap phi = phi_from_json(need(sc.payload, "phi", where));
    std::pair<BoundCertificate, BoundCertificate> certs =
        (form == BoundForm::Theorem)
            ? difference_certify_theorem(
                  ens, phi, envelopes_from_payload(sc.payload, ens, f, where), g)
            : difference_certify_example(ens, phi, f, g);
    results.push_back(certificate_to_json(certs.first));
    results.push_back(certificate_to_json(certs.second));
    results.push_back(json{{"beta1", certs.first.scalar_constant},
                           {"beta2", certs.second.scalar_constant}});
    rr.pass += certs.first.certificate.holds + certs.second.certificate.holds;
    rr.fail += !certs.first.certificate.holds + !certs.second.certificate.holds;
  } else {
    const LinearBound lb = chord_tangent(f, iv.lo, iv.hi);
    const ScalarConstant b1 =
        difference_constant(Polynomial::line(lb.a, lb.b), g, iv, Side::Upper);
    const ScalarConstant b2 =
        difference_constant(Polynomial::line(lb.a, lb.b_prime), g, iv, Side::Lower);
    results.push_back(json{{"beta1", b1.value},
                           {"beta1_x_star", b1.x_star},
                           {"beta2", b2.value},
                           {"beta2_x_star", b2.x_star},
                           {"printed_beta1", format_significant(b1.value)},
                           {"printed_beta2", format_significant(b2.value)}});
    rr.pass += 1;
  }
  rr.report["results"] = std::move(results);
  return rr;
}

RunResult run_algebra(const Scenario& sc) {
  const char* where = "algebra";
  const std::string op = need_string(sc.payload, "op", where);
  const auto a = number_list(need(sc.payload, "a", where), "algebra.a");
  const auto b = number_list(need(sc.payload, "b", where), "algebra.b");
  if (a.size() != 2 || b.size() != 2)
    throw ValidationError("algebra: 'a' and 'b' must be [lo, hi] pairs");
  const Interval p{a[0], a[1]}, q{b[0], b[1]};
  Interval out{};
  if (op == "add")
    out = interval_add(p, q);
  else if (op == "mul")
    out = interval_mul(p, q);
  else
    throw ValidationError("algebra: op must be 'add' or 'mul'");
  RunResult rr;
  rr.pass = 1;
  rr.report["results"] = json::array({json{{"lo", out.lo}, {"hi", out.hi}}});
  return rr;
}

RunResult run_tail(const Scenario& sc) {
  const char* where = "tail";
  TailSpec spec;
  spec.n = need_int(sc.payload, "n", where);
  spec.k = need_int(sc.payload, "k", where);
  spec.weights = number_list(need(sc.payload, "weights", where), "tail.weights");
  spec.m = need_number(sc.payload, "m", where);
  spec.M = need_number(sc.payload, "M", where);
  spec.trials = need_int(sc.payload, "trials", where);
  spec.seed = sc.payload.contains("seed")
                  ? sc.payload.at("seed").get<uint64_t>()
                  : sc.seed;
  spec.commuting = sc.payload.contains("commuting") && sc.payload.at("commuting").get<bool>();

  const ScalarFunction f = parse_fn(sc.payload, "f", where);
  const ScalarFunction h = parse_fn(sc.payload, "h", where);
  const ScalarFunction g = parse_fn(sc.payload, "g", where);
  const int ell = need_int(sc.payload, "ell", where);
  const std::string mode_s = need_string(sc.payload, "mode", where);
  TailMode mode;
  if (mode_s == "add")
    mode = TailMode::Addition;
  else if (mode_s == "mul")
    mode = TailMode::Multiplication;
  else
    throw ValidationError("tail: mode must be 'add' or 'mul'");

  std::vector<double> thetas;
  if (sc.payload.contains("thetas")) {
    thetas = number_list(sc.payload.at("thetas"), "tail.thetas");
  } else if (sc.payload.contains("theta_grid")) {
    const json& gspec = sc.payload.at("theta_grid");
    const double lo = need_number(gspec, "lo", "theta_grid");
    const double hi = need_number(gspec, "hi", "theta_grid");
    const int count = need_int(gspec, "count", "theta_grid");
    if (count < 1 || !(lo <= hi))
      throw ValidationError("theta_grid needs lo <= hi and count >= 1");
    for (int i = 0; i < count; ++i)
      thetas.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  } else {
    throw ValidationError("tail: need 'thetas' or 'theta_grid'");
  }

  const std::vector<TailReport> reports = tail_sweep(spec, f, h, g, ell, thetas, mode);
  RunResult rr;
  json results = json::array();
  for (const TailReport& rep : reports) {
    const bool ok = rep.dominated && rep.draws_dominated == rep.trials;
    results.push_back(json{{"theta", rep.theta},
                           {"p_lhs", rep.p_lhs},
                           {"p_rhs", rep.p_rhs},
                           {"ci_halfwidth", rep.ci_halfwidth},
                           {"dominated", rep.dominated},
                           {"draws_dominated", rep.draws_dominated},
                           {"trials", rep.trials}});
    rr.pass += ok;
    rr.fail += !ok;
  }
  rr.report["results"] = std::move(results);
  return rr;
}

}  // namespace

// ---- serialization ----------------------------------------------------------

json matrix_to_json(const HermitianOperator& A) {
  json rows = json::array();
  for (int i = 0; i < A.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < A.dim(); ++j) row.push_back(A.matrix()(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dim", A.dim()}, {"rows", std::move(rows)}};
}

HermitianOperator matrix_from_json(const json& j) {
  const Eigen::MatrixXd M = rows_to_matrix(need(j, "rows", "matrix"), "matrix");
  if (j.contains("dim")) {
    const int dim = need_int(j, "dim", "matrix");
    if (dim != M.rows() || dim != M.cols())
      throw ValidationError("matrix: 'dim' disagrees with the row data");
  }
  if (M.rows() != M.cols()) throw ValidationError("matrix: must be square");
  return HermitianOperator(M);
}

json phi_to_json(const PhiMap& phi) {
  json rows = json::array();
  for (int i = 0; i < phi.input_dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < phi.output_dim(); ++j) row.push_back(phi.isometry()(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"coeffs", phi.coeffs()}, {"V", json{{"rows", std::move(rows)}}}};
}

PhiMap phi_from_json(const json& j) {
  const auto coeffs = number_list(need(j, "coeffs", "map"), "map.coeffs");
  const json& vj = need(j, "V", "map");
  Eigen::MatrixXd V;
  if (vj.is_string()) {
    const std::string s = vj.get<std::string>();
    if (s.rfind("identity:", 0) != 0)
      throw ValidationError("map: string V must have the form 'identity:n'");
    int n = 0;
    try {
      n = std::stoi(s.substr(9));
    } catch (const std::exception&) {
      throw ValidationError("map: cannot parse the dimension in '" + s + "'");
    }
    if (n < 1) throw ValidationError("map: identity dimension must be positive");
    V = Eigen::MatrixXd::Identity(n, n);
  } else {
    V = rows_to_matrix(need(vj, "rows", "map.V"), "map.V");
  }
  return PhiMap(coeffs, std::move(V));
}

WeightedEnsemble ensemble_from_json(const json& payload) {
  const json& members_j = need(payload, "ensemble", "ensemble");
  if (!members_j.is_array() || members_j.empty())
    throw ValidationError("ensemble: must be a nonempty array");
  std::vector<EnsembleMember> members;
  for (const json& mj : members_j) {
    HermitianOperator A = matrix_from_json(need(mj, "A", "ensemble member"));
    const double m = need_number(mj, "m", "ensemble member");
    const double M = need_number(mj, "M", "ensemble member");
    members.push_back({std::move(A), Interval{m, M}});
  }
  const auto weights = number_list(need(payload, "weights", "ensemble"), "weights");
  return WeightedEnsemble(std::move(members), weights);
}

json certificate_to_json(const BoundCertificate& cert) {
  return json{{"kind", to_string(cert.kind)},
              {"form", to_string(cert.form)},
              {"detail", cert.detail},
              {"scalar_constant", cert.scalar_constant},
              {"x_star", cert.x_star},
              {"certificate", order_to_json(cert.certificate)}};
}

std::string format_significant(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ---- scenario plumbing ------------------------------------------------------

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  sc.kind = need_string(j, "kind", "scenario");
  sc.seed = j.contains("seed") ? j.at("seed").get<uint64_t>() : 0;
  sc.payload = need(j, "payload", "scenario");
  if (!sc.payload.is_object()) throw ValidationError("scenario: payload must be an object");
  return sc;
}

Scenario scenario_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("cannot parse '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

RunResult run_scenario(const Scenario& sc, double tol_scale) {
  RunResult rr;
  if (sc.kind == "kantorovich")
    rr = run_kantorovich(sc);
  else if (sc.kind == "envelope")
    rr = run_envelope(sc);
  else if (sc.kind == "certify")
    rr = run_certify(sc, tol_scale);
  else if (sc.kind == "ratio")
    rr = run_ratio(sc, tol_scale);
  else if (sc.kind == "difference")
    rr = run_difference(sc, tol_scale);
  else if (sc.kind == "algebra")
    rr = run_algebra(sc);
  else if (sc.kind == "tail")
    rr = run_tail(sc);
  else
    throw ValidationError("unknown scenario kind '" + sc.kind + "'");

  json report;
  report["version"] = kVersion;
  report["kind"] = sc.kind;
  report["seed"] = sc.seed;
  report["scenario"] = sc.payload;
  report["results"] = rr.report.contains("results") ? rr.report["results"] : json::array();
  report["summary"] = json{{"pass", rr.pass}, {"fail", rr.fail}, {"holds", rr.fail == 0}};
  rr.report = std::move(report);
  return rr;
}

SuiteResult run_suite_dir(const std::string& dir, double tol_scale) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ValidationError("'" + dir + "' is not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  SuiteResult out;
  json rows = json::array();
  for (const std::string& file : files) {
    json row{{"file", fs::path(file).filename().string()}};
    try {
      const Scenario sc = scenario_from_file(file);
      const RunResult rr = run_scenario(sc, tol_scale);
      row["report"] = rr.report;
      if (rr.holds()) {
        row["status"] = "ok";
        ++out.scenarios_passed;
      } else {
        row["status"] = "failed";
        ++out.scenarios_failed;
      }
    } catch (const ValidationError& e) {
      row["status"] = std::string("schema:") + e.what();
      ++out.scenarios_schema;
    } catch (const ToolkitError& e) {
      row["status"] = std::string("error:") + e.what();
      ++out.scenarios_failed;
    }
    rows.push_back(std::move(row));
  }
  out.report = json{{"version", kVersion},
                    {"suite", rows},
                    {"summary", json{{"passed", out.scenarios_passed},
                                     {"failed", out.scenarios_failed},
                                     {"schema_errors", out.scenarios_schema}}}};
  return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream outfile(tmp, std::ios::trunc);
    if (!outfile) throw ValidationError("cannot write to '" + tmp.string() + "'");
    outfile << text;
    if (!outfile.good()) throw ValidationError("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

void write_json_atomic(const std::string& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace opjensen
