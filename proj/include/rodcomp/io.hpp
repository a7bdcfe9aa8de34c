#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rodcomp/classify.hpp"
#include "rodcomp/version.hpp"

namespace rodcomp {

using json = nlohmann::ordered_json;

// On-disk packing description. Rationals travel as strings "p/q" (or plain
// integers); floating-point literals are rejected, never rounded.
struct PackingDocument {
  struct RodEntry {
    IntVec3 direction;
    RatVec3 basepoint;
  };
  std::optional<std::string> name;
  std::vector<RodEntry> rods;
};

namespace detail {

inline json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (lo <= v && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

inline Int int_from_json(const json& e, const std::string& where) {
  if (e.is_number_integer()) {
    if (e.is_number_unsigned()) return Int(e.get<std::uint64_t>());
    return Int(e.get<std::int64_t>());
  }
  if (e.is_string()) {
    const Rat q = [&] {
      try {
        return parse_rational(e.get<std::string>());
      } catch (const ParseError& err) {
        throw ParseError(where + ": " + err.what());
      }
    }();
    if (!is_integer(q)) throw ParseError(where + ": expected an integer, got a fraction");
    return numerator(q);
  }
  if (e.is_number_float())
    throw ParseError(where + ": floating-point values are not accepted (exactness)");
  throw ParseError(where + ": expected an integer");
}

inline Rat rat_from_json(const json& e, const std::string& where) {
  if (e.is_number_integer()) {
    if (e.is_number_unsigned()) return Rat(Int(e.get<std::uint64_t>()));
    return Rat(Int(e.get<std::int64_t>()));
  }
  if (e.is_string()) {
    try {
      return parse_rational(e.get<std::string>());
    } catch (const ParseError& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  if (e.is_number_float())
    throw ParseError(where + ": floating-point values are not accepted (exactness)");
  throw ParseError(where + ": expected a rational string \"p/q\" or an integer");
}

inline void require_fields(const json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ParseError(where + ": unknown field \"" + key + "\"");
  }
}

inline json json_rat(const Rat& q) { return rat_str(q); }

inline json json_vec(const RatVec2& v) { return json::array({json_rat(v.x), json_rat(v.y)}); }
inline json json_vec(const RatVec3& v) {
  return json::array({json_rat(v.x), json_rat(v.y), json_rat(v.z)});
}
inline json json_vec(const IntVec2& v) { return json::array({json_int(v.x), json_int(v.y)}); }
inline json json_vec(const IntVec3& v) {
  return json::array({json_int(v.x), json_int(v.y), json_int(v.z)});
}

inline const json& element(const json& arr, std::size_t n, const std::string& where) {
  if (!arr.is_array() || arr.size() != n)
    throw ParseError(where + ": expected an array of " + std::to_string(n) + " entries");
  return arr;
}

inline IntVec3 ivec3_from_json(const json& a, const std::string& where) {
  element(a, 3, where);
  return {int_from_json(a[0], where + "[0]"), int_from_json(a[1], where + "[1]"),
          int_from_json(a[2], where + "[2]")};
}

inline IntVec2 ivec2_from_json(const json& a, const std::string& where) {
  element(a, 2, where);
  return {int_from_json(a[0], where + "[0]"), int_from_json(a[1], where + "[1]")};
}

inline RatVec3 rvec3_from_json(const json& a, const std::string& where) {
  element(a, 3, where);
  return {rat_from_json(a[0], where + "[0]"), rat_from_json(a[1], where + "[1]"),
          rat_from_json(a[2], where + "[2]")};
}

inline RatVec2 rvec2_from_json(const json& a, const std::string& where) {
  element(a, 2, where);
  return {rat_from_json(a[0], where + "[0]"), rat_from_json(a[1], where + "[1]")};
}

}  // namespace detail

inline json to_json(const PackingDocument& doc) {
  json j;
  if (doc.name) j["name"] = *doc.name;
  json rods = json::array();
  for (const auto& r : doc.rods) {
    json e;
    e["direction"] = detail::json_vec(r.direction);
    e["basepoint"] = detail::json_vec(r.basepoint);
    rods.push_back(std::move(e));
  }
  j["rods"] = std::move(rods);
  return j;
}

inline PackingDocument packing_document_from_json(const json& j) {
  detail::require_fields(j, {"name", "rods"}, "packing");
  PackingDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("name: expected a string");
    doc.name = j["name"].get<std::string>();
  }
  if (!j.contains("rods")) throw ParseError("packing: missing field \"rods\"");
  const json& rods = j["rods"];
  if (!rods.is_array() || rods.empty())
    throw ParseError("rods: expected a nonempty array");
  for (std::size_t t = 0; t < rods.size(); ++t) {
    const std::string where = "rods[" + std::to_string(t) + "]";
    detail::require_fields(rods[t], {"direction", "basepoint"}, where);
    if (!rods[t].contains("direction") || !rods[t].contains("basepoint"))
      throw ParseError(where + ": needs \"direction\" and \"basepoint\"");
    doc.rods.push_back({detail::ivec3_from_json(rods[t]["direction"], where + ".direction"),
                        detail::rvec3_from_json(rods[t]["basepoint"], where + ".basepoint")});
  }
  return doc;
}

inline PackingDocument parse_packing_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return packing_document_from_json(j);
}

// Strict conversion: directions must already be primitive.
inline RodPacking to_rod_packing(const PackingDocument& doc) {
  RodPacking p;
  for (const auto& r : doc.rods) p.rods.push_back(make_rod(r.direction, r.basepoint));
  return p;
}

inline PackingDocument document_from_packing(const RodPacking& p,
                                             std::optional<std::string> name = std::nullopt) {
  PackingDocument doc;
  doc.name = std::move(name);
  for (const auto& r : p.rods) doc.rods.push_back({r.direction, r.basepoint});
  return doc;
}

// Machine-readable verdict with enough data to re-verify every witness.
struct VerdictDocument {
  PackingDocument input;
  GeometryVerdict verdict;
  std::string tool_version = kToolVersion;
};

namespace detail {

inline json certificate_to_json(const std::pair<int, int>& pair, const CellCertificate& cert) {
  json c;
  c["pair"] = json::array({pair.first, pair.second});
  c["source"] = json_vec(cert.source);
  c["target_base"] = json_vec(cert.target_base);
  json strips = json::array();
  for (const auto& s : cert.strips) {
    json e;
    e["normal"] = json_vec(s.family.m);
    e["offset"] = json_rat(s.family.c);
    e["k"] = json_int(s.k);
    strips.push_back(std::move(e));
  }
  c["strips"] = std::move(strips);
  c["bounded"] = cert.bounded;
  json verts = json::array();
  for (const auto& v : cert.cell_vertices) verts.push_back(json_vec(v));
  c["cell_vertices"] = std::move(verts);
  json cands = json::array();
  for (const auto& cand : cert.candidates) {
    json e;
    e["lift"] = json_vec(cand.lift);
    e["lambda"] = json_vec(cand.lambda);
    e["blocker"] = json_vec(cand.blocker);
    e["obstacle_rod"] = cand.obstacle_rod;
    cands.push_back(std::move(e));
  }
  c["candidates"] = std::move(cands);
  return c;
}

inline std::pair<std::pair<int, int>, CellCertificate> certificate_from_json(const json& c) {
  const std::string where = "certificate";
  require_fields(c, {"pair", "source", "target_base", "strips", "bounded", "cell_vertices",
                     "candidates"},
                 where);
  const json& pr = element(c.at("pair"), 2, where + ".pair");
  CellCertificate cert;
  cert.source = rvec2_from_json(c.at("source"), where + ".source");
  cert.target_base = rvec2_from_json(c.at("target_base"), where + ".target_base");
  for (const auto& s : c.at("strips")) {
    require_fields(s, {"normal", "offset", "k"}, where + ".strips");
    cert.strips.push_back({LineFamily{ivec2_from_json(s.at("normal"), where + ".normal"),
                                      rat_from_json(s.at("offset"), where + ".offset")},
                           int_from_json(s.at("k"), where + ".k")});
  }
  cert.bounded = c.at("bounded").get<bool>();
  for (const auto& v : c.at("cell_vertices"))
    cert.cell_vertices.push_back(rvec2_from_json(v, where + ".cell_vertices"));
  for (const auto& e : c.at("candidates")) {
    require_fields(e, {"lift", "lambda", "blocker", "obstacle_rod"}, where + ".candidates");
    cert.candidates.push_back({rvec2_from_json(e.at("lift"), where + ".lift"),
                               ivec2_from_json(e.at("lambda"), where + ".lambda"),
                               rvec2_from_json(e.at("blocker"), where + ".blocker"),
                               e.at("obstacle_rod").get<int>()});
  }
  return {{pr[0].get<int>(), pr[1].get<int>()}, std::move(cert)};
}

}  // namespace detail

inline json to_json(const VerdictDocument& doc) {
  json j;
  j["tool"] = {{"name", kToolName}, {"version", doc.tool_version}};
  j["input"] = to_json(doc.input);
  j["flags"] = {{"hyperbolic", doc.verdict.hyperbolic},
                {"seifert_fibred", doc.verdict.seifert_fibred}};
  if (doc.verdict.toroidal_witness) {
    if (const auto* plane = std::get_if<PlaneTorusWitness>(&*doc.verdict.toroidal_witness)) {
      j["witness"] = {{"kind", "plane_torus"},
                      {"normal", detail::json_vec(plane->normal)},
                      {"offset", detail::json_rat(plane->offset)}};
    } else {
      const auto& a = std::get<SweptAnnulusWitness>(*doc.verdict.toroidal_witness);
      j["witness"] = {{"kind", "swept_annulus"},
                      {"pair", json::array({a.i, a.j})},
                      {"vector", detail::json_vec(a.v)}};
    }
  } else {
    j["witness"] = nullptr;
  }
  if (doc.verdict.independence_triple) {
    const auto& t = *doc.verdict.independence_triple;
    j["independence_triple"] = json::array({t[0], t[1], t[2]});
  } else {
    j["independence_triple"] = nullptr;
  }
  json certs = json::array();
  for (const auto& [pair, cert] : doc.verdict.non_isotopy_certificates)
    certs.push_back(detail::certificate_to_json(pair, cert));
  j["non_isotopy_certificates"] = std::move(certs);
  return j;
}

inline VerdictDocument verdict_document_from_json(const json& j) {
  detail::require_fields(
      j, {"tool", "input", "flags", "witness", "independence_triple", "non_isotopy_certificates"},
      "verdict");
  VerdictDocument doc;
  doc.tool_version = j.at("tool").at("version").get<std::string>();
  doc.input = packing_document_from_json(j.at("input"));
  doc.verdict.hyperbolic = j.at("flags").at("hyperbolic").get<bool>();
  doc.verdict.seifert_fibred = j.at("flags").at("seifert_fibred").get<bool>();
  const json& w = j.at("witness");
  if (!w.is_null()) {
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "plane_torus") {
      doc.verdict.toroidal_witness =
          PlaneTorusWitness{detail::ivec3_from_json(w.at("normal"), "witness.normal"),
                            detail::rat_from_json(w.at("offset"), "witness.offset")};
    } else if (kind == "swept_annulus") {
      const json& pr = detail::element(w.at("pair"), 2, "witness.pair");
      doc.verdict.toroidal_witness =
          SweptAnnulusWitness{pr[0].get<int>(), pr[1].get<int>(),
                              detail::rvec3_from_json(w.at("vector"), "witness.vector")};
    } else {
      throw ParseError("witness.kind: unknown kind \"" + kind + "\"");
    }
  }
  const json& triple = j.at("independence_triple");
  if (!triple.is_null()) {
    detail::element(triple, 3, "independence_triple");
    doc.verdict.independence_triple =
        std::array<int, 3>{triple[0].get<int>(), triple[1].get<int>(), triple[2].get<int>()};
  }
  for (const auto& c : j.at("non_isotopy_certificates"))
    doc.verdict.non_isotopy_certificates.insert(detail::certificate_from_json(c));
  return doc;
}

inline VerdictDocument parse_verdict_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return verdict_document_from_json(j);
}

}  // namespace rodcomp
