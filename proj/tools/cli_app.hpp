#pragma once

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pitbound/io/json.hpp"
#include "pitbound/pitbound.hpp"

namespace pitbound::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2, kUsage = 64 };

using io::Json;
using Row = std::vector<Json>;

/// A rendered report: the JSON document plus its tabular views.
struct Report {
  Json doc;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  /// Optional condensed view for --format table; falls back to columns/rows.
  std::vector<std::string> table_columns;
  std::vector<Row> table_rows;
  bool failed = false;
};

inline std::string cell_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& out, const std::vector<std::string>& cols, const std::vector<Row>& rows) {
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    out << "\n";
  }
}

inline void write_table(std::ostream& out, const std::vector<std::string>& cols, const std::vector<Row>& rows) {
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
    text.push_back(std::move(line));
  }
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << line[i];
    }
    out << "\n";
  };
  emit(cols);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  emit(rule);
  for (const auto& line : text) emit(line);
}

struct FieldOptions {
  std::uint64_t delta = 9;
  int r2 = 1;
  std::uint64_t nf = 1;
  std::uint64_t hstar = 1;
  double eta = AnalyticConstants::default_eta;
  double w = AnalyticConstants::default_w;
  bool principal = false;
  bool imprimitive = false;

  void attach(CLI::App* app) {
    app->add_option("--delta", delta, "absolute discriminant |Delta|")->capture_default_str();
    app->add_option("--r2", r2, "number of complex places")->capture_default_str();
    app->add_option("--nf", nf, "norm of the conductor N(f)")->capture_default_str();
    app->add_option("--hstar", hstar, "order h* of the class group mod f")->capture_default_str();
    app->add_option("--eta", eta, "eta in (0, 1/4]")->capture_default_str();
    app->add_option("--w", w, "w in [1, A0/B)")->capture_default_str();
    app->add_flag("--principal", principal, "use the principal character (E0 = 1)");
    app->add_flag("--imprimitive", imprimitive, "character is imprimitive (eps_chi = 1)");
  }

  FieldParameters params() const { return FieldParameters::make(delta, r2, nf, hstar); }
  ZetaContext context() const { return ZetaContext::make(eta, w, CharacterKind{principal, imprimitive}); }

  Json context_json() const {
    return Json{{"eta", io::number(eta)}, {"w", io::number(w)}, {"principal", principal}, {"imprimitive", imprimitive}};
  }
};

inline Report threshold_report(const FieldOptions& f, double eps) {
  const FieldParameters p = f.params();
  Report r;
  Json modes = Json::object();
  r.columns = {"mode", "u", "log_x0"};
  for (auto [name, mode] : {std::pair{"paper", ThresholdMode::paper}, std::pair{"rigorous", ThresholdMode::rigorous}}) {
    const double u = threshold_u(eps, p, mode);
    const double lx = threshold_from_u(u, p.r2d(), mode);
    modes[name] = Json{{"u", io::number(u)}, {"log_x0", io::number(lx)}};
    r.rows.push_back({name, io::number(u), io::number(lx)});
  }
  r.doc = Json{{"command", "threshold"},
               {"parameters", io::to_json(p)},
               {"epsilon", io::number(eps)},
               {"c1_printed", io::number(theorem1_constant(p, ConstantMode::printed))},
               {"c1_derived", io::number(theorem1_constant(p, ConstantMode::derived))},
               {"paper", modes["paper"]},
               {"rigorous", modes["rigorous"]}};
  return r;
}

inline Report bounds_report(const FieldOptions& f, double log_x, std::optional<double> eps) {
  const FieldParameters p = f.params();
  const ZetaContext ctx = f.context();
  const MinLogX min_x = theorem2_min_x(p, ctx);
  const Theorem2Constants c = theorem2_constants(p);
  const PsiBounds b = psi_bounds(log_x, p, ctx);
  Report r;
  r.doc = Json{{"command", "bounds"},
               {"parameters", io::to_json(p)},
               {"context", f.context_json()},
               {"min_log_x", Json{{"printed", io::number(min_x.printed)},
                                  {"substitution", io::number(min_x.substitution)},
                                  {"log_x", io::number(min_x.log_x)}}},
               {"c2", io::number(c.c2)},
               {"c3", io::number(c.c3)},
               {"psi", io::to_json(b)}};
  r.columns = {"log_x", "main", "lower", "upper", "min_log_x", "c2", "c3"};
  Row row{io::number(log_x), io::number(b.main), io::number(b.lower), io::number(b.upper), io::number(min_x.log_x),
          io::number(c.c2),  io::number(c.c3)};
  if (eps) {
    const double lower = big_psi_lower(log_x, p, *eps, ThresholdMode::paper);
    r.doc["big_psi"] = Json{{"epsilon", io::number(*eps)}, {"lower", io::number(lower)}};
    r.columns.push_back("big_psi_lower");
    row.push_back(io::number(lower));
  }
  r.rows.push_back(std::move(row));
  return r;
}

inline Report ledger_report(const FieldOptions& f) {
  const BoundLedger l = build_ledger(f.params(), f.context());
  Report r;
  const Json body = io::to_json(l);
  r.doc = Json{{"command", "ledger"}};
  for (const auto& [key, value] : body.items()) r.doc[key] = value;
  r.columns = {"name", "value", "derived", "printed", "gap", "direction", "flagged", "location"};
  for (const auto& e : l.entries) {
    const Json j = io::to_json(e);
    r.rows.push_back({j["name"], j["value"], j["derived"], j["printed"], j["gap"], j["direction"], j["flagged"],
                      j["location"]});
  }
  return r;
}

inline Report verify_report(const VerificationGrid& grid, bool parallel, bool include_reports) {
  const auto reports = run_verification_grid(grid, parallel);
  struct Agg {
    std::size_t count = 0, passed = 0, equality = 0;
    double min_slack = 0.0;
    bool any = false;
  };
  std::map<std::string, Agg> agg;
  std::vector<std::string> order;
  std::size_t passed = 0, equality = 0;
  for (const auto& rep : reports) {
    if (!agg.count(rep.check_name)) order.push_back(rep.check_name);
    Agg& a = agg[rep.check_name];
    ++a.count;
    a.passed += rep.passed;
    a.equality += rep.equality_case;
    const double rel = rep.bound_value != 0.0 ? rep.slack / std::abs(rep.bound_value) : rep.slack;
    a.min_slack = a.any ? std::min(a.min_slack, rel) : rel;
    a.any = true;
    passed += rep.passed;
    equality += rep.equality_case;
  }
  Report r;
  r.failed = passed != reports.size();
  Json checks = Json::array();
  r.table_columns = {"check", "count", "passed", "equality_cases", "min_relative_slack", "status"};
  for (const auto& name : order) {
    const Agg& a = agg[name];
    const bool ok = a.passed == a.count;
    checks.push_back(Json{{"check_name", name},
                          {"count", a.count},
                          {"passed", a.passed},
                          {"equality_cases", a.equality},
                          {"min_relative_slack", io::number(a.min_slack)}});
    r.table_rows.push_back({name, a.count, a.passed, a.equality, io::number(a.min_slack), ok ? "PASS" : "FAIL"});
  }
  r.columns = {"check", "abs_discriminant", "r2", "conductor_norm", "E0", "eps_chi", "T", "log_x", "k",
               "bound", "measured", "slack", "passed", "equality_case"};
  Json all = Json::array();
  for (const auto& rep : reports) {
    std::map<std::string, double> prm(rep.parameters.begin(), rep.parameters.end());
    const auto get = [&prm](const char* key) { return prm.count(key) ? io::number(prm[key]) : Json(nullptr); };
    r.rows.push_back({rep.check_name, get("abs_discriminant"), get("r2"), get("conductor_norm"), get("E0"),
                      get("eps_chi"), get("T"), get("log_x"), get("k"), io::number(rep.bound_value),
                      io::number(rep.measured_value), io::number(rep.slack), rep.passed, rep.equality_case});
    if (include_reports) all.push_back(io::to_json(rep));
  }
  r.doc = Json{{"command", "verify-lemmas"},
               {"grid", io::to_json(grid)},
               {"summary", Json{{"checks", reports.size()},
                                {"passed", passed},
                                {"failed", reports.size() - passed},
                                {"equality_cases", equality}}},
               {"by_check", std::move(checks)}};
  if (include_reports) r.doc["reports"] = std::move(all);
  return r;
}

inline Report psi_report(i64 d, i64 n, const std::vector<double>& xs, std::optional<int> class_index, bool window,
                         double x_cap) {
  const QuadraticField k = QuadraticField::make(d);
  EnumerationOptions opts;
  opts.x_cap = x_cap;
  const int classes = n == 1 ? 1 : RayClassGroup::make(k, n).order();
  if (class_index && (*class_index < 0 || *class_index >= classes))
    throw DomainError("class index " + std::to_string(*class_index) + " out of range");
  // Theorem parameters for this field and modulus; N(f) = n^2.
  const u64 nf = static_cast<u64>(n) * static_cast<u64>(n);
  const FieldParameters fp = FieldParameters::unchecked(k.abs_discriminant(), 1, nf, static_cast<u64>(classes));

  Report r;
  r.columns = {"x", "class_index", window ? "big_psi" : "psi", "x_over_hstar", "lower", "upper"};
  if (window) r.columns.push_back("endpoint_discrepancy");
  Json rows = Json::array();
  for (double x : xs) {
    std::optional<PsiBounds> b;
    if (fp.satisfies_hypotheses() && std::log(x) >= theorem2_min_x(fp).log_x) b = psi_bounds(std::log(x), fp);
    const Json lower = b ? io::number(b->lower * x) : Json(nullptr);
    const Json upper = b ? io::number(b->upper * x) : Json(nullptr);
    const double ref = x / classes;
    if (window) {
      for (int c = 0; c < classes; ++c) {
        if (class_index && c != *class_index) continue;
        const BigPsiResult v = big_psi_empirical(x, c, k, n, opts);
        rows.push_back(Json{{"x", io::number(x)},
                            {"class_index", c},
                            {"big_psi", io::number(v.value)},
                            {"x_over_hstar", io::number(ref)},
                            {"lower", nullptr},
                            {"upper", nullptr},
                            {"endpoint_discrepancy", io::number(v.endpoint_discrepancy)}});
        r.rows.push_back({io::number(x), c, io::number(v.value), io::number(ref), nullptr, nullptr,
                          io::number(v.endpoint_discrepancy)});
      }
      continue;
    }
    const PsiByClass v = psi_by_class(x, k, n, opts);
    for (int c = 0; c < classes; ++c) {
      if (class_index && c != *class_index) continue;
      const double psi = v.per_class[static_cast<std::size_t>(c)];
      rows.push_back(Json{{"x", io::number(x)},
                          {"class_index", c},
                          {"psi", io::number(psi)},
                          {"x_over_hstar", io::number(ref)},
                          {"lower", lower},
                          {"upper", upper},
                          {"skipped", io::number(v.skipped)}});
      r.rows.push_back({io::number(x), c, io::number(psi), io::number(ref), lower, upper});
    }
  }
  r.doc = Json{{"command", window ? "psi-window" : "psi"},
               {"d", d},
               {"field_discriminant", k.discriminant()},
               {"modulus", n},
               {"class_count", classes},
               {"rows", std::move(rows)}};
  return r;
}

inline Report logderiv_report(i64 d, double sigma, const std::vector<double>& ts, double x_cut,
                              const FieldOptions& f) {
  const QuadraticField k = QuadraticField::make(d);
  const ZetaContext ctx = ZetaContext::make(f.eta, f.w, CharacterKind::principal_character());
  Report r;
  r.columns = {"sigma", "t", "re", "im", "tail_bound", "measured", "phi0", "slack_factor", "passed"};
  Json rows = Json::array();
  bool outside = false;
  for (double t : ts) {
    const LogDerivativeCheck c = logderiv_check(sigma, t, k, x_cut, ctx);
    outside = outside || c.outside_hypotheses;
    const bool ok = c.measured <= c.bound;
    r.failed = r.failed || !ok;
    rows.push_back(Json{{"sigma", io::number(sigma)},
                        {"t", io::number(t)},
                        {"re", io::number(c.series.value.real())},
                        {"im", io::number(c.series.value.imag())},
                        {"tail_bound", io::number(c.series.tail_bound)},
                        {"measured", io::number(c.measured)},
                        {"phi0", io::number(c.bound)},
                        {"slack_factor", io::number(c.slack_factor)},
                        {"passed", ok}});
    r.rows.push_back({io::number(sigma), io::number(t), io::number(c.series.value.real()),
                      io::number(c.series.value.imag()), io::number(c.series.tail_bound), io::number(c.measured),
                      io::number(c.bound), io::number(c.slack_factor), ok});
  }
  r.doc = Json{{"command", "logderiv"},
               {"d", d},
               {"field_discriminant", k.discriminant()},
               {"x_cut", io::number(x_cut)},
               {"outside_hypotheses", outside},
               {"rows", std::move(rows)}};
  return r;
}

inline Report cm_verify_report(const CMCandidate& c) {
  const CMVerdict v = verify_cm_pair(c);
  Report r;
  r.failed = !v.valid;
  r.doc = Json{{"command", "cm-verify"},
               {"candidate", io::to_json(c)},
               {"valid", v.valid},
               {"failure_reason", v.valid ? Json(nullptr) : Json(v.failure_reason)}};
  r.columns = {"p", "q", "t", "f", "discriminant", "valid", "failure_reason"};
  r.rows.push_back({c.p, c.q, c.t, c.f, c.discriminant, v.valid, v.failure_reason});
  return r;
}

inline Report cm_search_report(i64 disc, u64 p_min, u64 p_max, u64 q_min, u64 p_cap) {
  CMSearchOptions opts;
  opts.p_cap = p_cap;
  const auto found = search_cm_pairs(disc, p_min, p_max, q_min, opts);
  Report r;
  Json list = Json::array();
  r.columns = {"p", "q", "t", "f", "discriminant"};
  for (const auto& c : found) {
    list.push_back(io::to_json(c));
    r.rows.push_back({c.p, c.q, c.t, c.f, c.discriminant});
  }
  r.doc = Json{{"command", "cm-search"},
               {"discriminant", disc},
               {"p_min", p_min},
               {"p_max", p_max},
               {"q_min", q_min},
               {"count", found.size()},
               {"candidates", std::move(list)}};
  return r;
}

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.doc.dump(2) << "\n";
  } else if (format == "csv") {
    write_csv(out, r.columns, r.rows);
  } else if (r.table_columns.empty()) {
    write_table(out, r.columns, r.rows);
  } else {
    write_table(out, r.table_columns, r.table_rows);
  }
}

/// Parses argv, runs one subcommand and writes its report. Returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit prime ideal theorem bounds: constants, lemma checks, empirical sums and CM primes"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  app.set_config("--config", "", "read options from a key = value file");
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();

  FieldOptions field;

  auto* threshold = app.add_subcommand("threshold", "log-scale thresholds x0 for the Psi lower bound");
  field.attach(threshold);
  double eps = 0.5;
  threshold->add_option("--eps", eps, "epsilon in (0, 1)")->required();

  auto* bounds = app.add_subcommand("bounds", "psi(x, X) bounds at a given log x");
  field.attach(bounds);
  double log_x = 0.0;
  std::optional<double> bounds_eps;
  bounds->add_option("--logx", log_x, "log x")->required();
  bounds->add_option("--eps", bounds_eps, "also evaluate the Psi lower bound at this epsilon");

  auto* ledger = app.add_subcommand("ledger", "constant chain with printed-vs-derived comparison");
  field.attach(ledger);

  auto* verify = app.add_subcommand("verify-lemmas", "check the auxiliary inequalities over a grid");
  std::string grid_path;
  bool serial = false;
  bool summary_only = false;
  verify->add_option("--grid", grid_path, "grid file (JSON); built-in default grid when omitted");
  verify->add_flag("--serial", serial, "evaluate grid points on one thread");
  verify->add_flag("--summary", summary_only, "omit per-check reports from JSON output");

  auto* psi = app.add_subcommand("psi", "empirical psi(x, X) over prime ideals");
  i64 d = -1;
  i64 n = 1;
  std::vector<double> xs;
  std::optional<int> class_index;
  bool window = false;
  double x_cap = 1e10;
  psi->add_option("--d", d, "squarefree d < 0 of Q(sqrt(d))")->required();
  psi->add_option("--n", n, "modulus n, conductor (n)")->capture_default_str();
  psi->add_option("--x", xs, "x values")->required();
  psi->add_option("--class", class_index, "restrict to one class index");
  psi->add_flag("--window", window, "compute Psi over [x, 2x] instead");
  psi->add_option("--xcap", x_cap, "enumeration cap")->capture_default_str();

  auto* logderiv = app.add_subcommand("logderiv", "truncated zeta_K'/zeta_K against phi0");
  double sigma = 1.5;
  std::vector<double> ts{0.0};
  double x_cut = 1e6;
  FieldOptions ld_field;
  logderiv->add_option("--d", d, "squarefree d < 0")->required();
  logderiv->add_option("--sigma", sigma, "real part, >= 1.5")->capture_default_str();
  logderiv->add_option("--t", ts, "imaginary parts");
  logderiv->add_option("--xcut", x_cut, "truncation point, >= 1000")->capture_default_str();
  logderiv->add_option("--eta", ld_field.eta, "eta in (0, 1/4]")->capture_default_str();

  auto* cm_verify = app.add_subcommand("cm-verify", "check one CM-prime candidate");
  CMCandidate cand;
  cm_verify->add_option("--p", cand.p)->required();
  cm_verify->add_option("--q", cand.q)->required();
  cm_verify->add_option("--t", cand.t)->required();
  cm_verify->add_option("--f", cand.f)->required();
  cm_verify->add_option("--disc", cand.discriminant)->required();

  auto* cm_search = app.add_subcommand("cm-search", "search CM-prime pairs for a discriminant");
  i64 disc = -7;
  u64 p_min = 2, p_max = 100, q_min = 2, p_cap = CMSearchOptions{}.p_cap;
  cm_search->add_option("--disc", disc, "negative discriminant, 0 or 1 mod 4")->required();
  cm_search->add_option("--pmin", p_min)->capture_default_str();
  cm_search->add_option("--pmax", p_max)->capture_default_str();
  cm_search->add_option("--qmin", q_min)->capture_default_str();
  cm_search->add_option("--pcap", p_cap, "search cap on p_max")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Report r;
    if (*threshold) {
      r = threshold_report(field, eps);
    } else if (*bounds) {
      r = bounds_report(field, log_x, bounds_eps);
    } else if (*ledger) {
      r = ledger_report(field);
    } else if (*verify) {
      const VerificationGrid grid = grid_path.empty() ? VerificationGrid{} : io::load_grid(grid_path);
      r = verify_report(grid, !serial, !summary_only);
    } else if (*psi) {
      r = psi_report(d, n, xs, class_index, window, x_cap);
    } else if (*logderiv) {
      r = logderiv_report(d, sigma, ts, x_cut, ld_field);
    } else if (*cm_verify) {
      r = cm_verify_report(cand);
    } else if (*cm_search) {
      r = cm_search_report(disc, p_min, p_max, q_min, p_cap);
    }
    emit(r, format, out);
    return r.failed ? kCheckFailed : kOk;
  } catch (const UnsupportedFieldError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::domain_error& e) {  // DomainError, ThresholdError
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace pitbound::cli
