#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pitbound/cm_primes.hpp"
#include "pitbound/errors.hpp"
#include "pitbound/explicit_bounds.hpp"
#include "pitbound/ledger.hpp"
#include "pitbound/lemma_verifier.hpp"
#include "pitbound/prime_ideals.hpp"

namespace pitbound::io {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so serialized output is stable.
inline double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

inline Json to_json(const FieldParameters& p) {
  return Json{{"abs_discriminant", p.abs_discriminant()},
              {"r2", p.r2()},
              {"conductor_norm", p.conductor_norm()},
              {"class_number", p.class_number()}};
}

inline const char* to_string(Sense s) {
  switch (s) {
    case Sense::upper: return "upper";
    case Sense::lower: return "lower";
    case Sense::value: return "value";
  }
  return "?";
}

inline Json to_json(const LedgerEntry& e) {
  Json j{{"name", e.name},
         {"value", number(e.value)},
         {"derived", number(e.derived)},
         {"printed", e.printed ? number(*e.printed) : Json(nullptr)},
         {"gap", e.relative_gap ? number(*e.relative_gap) : Json(nullptr)},
         {"location", e.location},
         {"sense", to_string(e.sense)},
         {"flagged", e.flagged},
         {"direction", e.direction.empty() ? Json(nullptr) : Json(e.direction)},
         {"note", e.note}};
  return j;
}

inline Json to_json(const BoundLedger& l) {
  Json entries = Json::array();
  for (const auto& e : l.entries) entries.push_back(to_json(e));
  Json discrepancies = Json::array();
  for (const auto& d : l.discrepancies)
    discrepancies.push_back(Json{{"name", d.name}, {"description", d.description}, {"magnitude", number(d.magnitude)}});
  return Json{{"parameters", to_json(l.params)},
              {"eta", number(l.eta)},
              {"w", number(l.w)},
              {"E0", number(l.e0)},
              {"reference_log_x", number(l.reference_log_x)},
              {"entries", std::move(entries)},
              {"discrepancies", std::move(discrepancies)}};
}

inline Json to_json(const VerificationReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  return Json{{"check_name", r.check_name},
              {"parameters", std::move(params)},
              {"bound_value", number(r.bound_value)},
              {"measured_value", number(r.measured_value)},
              {"slack", number(r.slack)},
              {"passed", r.passed},
              {"equality_case", r.equality_case}};
}

inline Json to_json(const CMCandidate& c) {
  return Json{{"p", c.p}, {"q", c.q}, {"t", c.t}, {"f", c.f}, {"discriminant", c.discriminant}};
}

inline Json to_json(const PsiBounds& b) {
  return Json{{"log_x", number(b.log_x)},
              {"main", number(b.main)},
              {"lower", number(b.lower)},
              {"upper", number(b.upper)}};
}

/// Reads a verification grid. Missing keys keep their defaults.
inline VerificationGrid grid_from_json(const Json& j) {
  VerificationGrid g;
  const auto read = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  try {
    read("T", g.T);
    read("r2", g.r2);
    read("abs_discriminant", g.abs_discriminant);
    read("conductor_norm", g.conductor_norm);
    read("principal", g.principal);
    read("imprimitive", g.imprimitive);
    read("log_x_factors", g.log_x_factors);
    read("k", g.k);
    read("rel_err", g.rel_err);
    read("eta", g.eta);
    read("w", g.w);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed grid: ") + e.what());
  }
  for (double t : g.T)
    if (!(t >= 1.0)) throw DomainError("grid T values must be >= 1");
  for (double f : g.log_x_factors)
    if (!(f >= 1.0)) throw DomainError("grid log_x_factors must be >= 1");
  if (!(g.rel_err > 0.0)) throw DomainError("grid rel_err must be positive");
  return g;
}

inline Json to_json(const VerificationGrid& g) {
  return Json{{"T", g.T},
              {"r2", g.r2},
              {"abs_discriminant", g.abs_discriminant},
              {"conductor_norm", g.conductor_norm},
              {"principal", g.principal},
              {"imprimitive", g.imprimitive},
              {"log_x_factors", g.log_x_factors},
              {"k", g.k},
              {"rel_err", g.rel_err},
              {"eta", g.eta},
              {"w", g.w}};
}

inline VerificationGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open grid file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("cannot parse grid file " + path + ": " + e.what());
  }
  return grid_from_json(j);
}

}  // namespace pitbound::io
