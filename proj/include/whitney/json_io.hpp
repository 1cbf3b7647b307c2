#pragma once

#include <json.hpp>

#include "whitney/arrangement.hpp"
#include "whitney/discotope.hpp"
#include "whitney/extensions.hpp"
#include "whitney/matroid.hpp"
#include "whitney/poly.hpp"
#include "whitney/zonotope.hpp"

namespace whitney {

using nlohmann::json;

// Polynomials: arrays of "num/den" strings, lowest degree first.
inline json poly_to_json(const Poly& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(rat_to_string(c));
  return arr;
}

inline Poly poly_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
  std::vector<Rat> c;
  for (const auto& v : j) c.push_back(rat_from_string(v.get<std::string>()));
  return Poly(std::move(c));
}

inline json rat_vector_to_json(const std::vector<Rat>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(rat_to_string(x));
  return arr;
}

inline std::vector<Rat> rat_vector_from_json(const json& j) {
  std::vector<Rat> v;
  for (const auto& x : j) v.push_back(rat_from_string(x.get<std::string>()));
  return v;
}

inline json ratmat_to_json(const RatMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(rat_vector_to_json(m.row(i)));
  return rows;
}

inline RatMat ratmat_from_json(const json& j) {
  std::vector<std::vector<Rat>> rows;
  for (const auto& r : j) rows.push_back(rat_vector_from_json(r));
  return RatMat::from_rows(rows);
}

// Matroids: {"matrix": [[..]]} | {"rank_table": {"mask": rank}} | {"name": s}.
inline Matroid matroid_from_json(const json& j) {
  if (j.contains("name")) return matroid_catalog(j["name"].get<std::string>());
  if (j.contains("matrix")) return Matroid::from_matrix(ratmat_from_json(j["matrix"]));
  if (j.contains("rank_table")) {
    const json& t = j["rank_table"];
    uint64_t maxmask = 0;
    for (auto it = t.begin(); it != t.end(); ++it)
      maxmask = std::max(maxmask, static_cast<uint64_t>(std::stoull(it.key())));
    int n = 0;
    while ((uint64_t{1} << n) <= maxmask) ++n;
    std::vector<int> table(size_t{1} << n, -1);
    for (auto it = t.begin(); it != t.end(); ++it)
      table[std::stoull(it.key())] = it.value().get<int>();
    for (int v : table)
      if (v < 0) throw std::invalid_argument("rank table is missing subsets");
    return Matroid::from_rank_table(n, std::move(table));
  }
  throw std::invalid_argument("matroid JSON needs name, matrix, or rank_table");
}

inline json matroid_to_json(const Matroid& m) {
  if (m.size() > Matroid::kTableLimit)
    throw std::invalid_argument("only tabulated matroids (n <= 12) serialize");
  json table = json::object();
  for (uint64_t s = 0; s <= m.full_mask(); ++s) {
    table[std::to_string(s)] = m.rank(s);
    if (s == m.full_mask()) break;
  }
  return json{{"rank_table", table}};
}

// Arrangements: {"ambient": d, "c": c, "subspaces": [{"basis": .., "offset": ..}]}.
inline json arrangement_to_json(const Arrangement& a) {
  json subs = json::array();
  for (const auto& el : a.elements) {
    json s;
    s["basis"] = ratmat_to_json(el.basis());
    s["offset"] = rat_vector_to_json(el.offset());
    if (!el.label.empty()) s["label"] = el.label;
    subs.push_back(std::move(s));
  }
  json j;
  j["ambient"] = a.ambient;
  if (a.c) j["c"] = *a.c;
  j["subspaces"] = std::move(subs);
  return j;
}

inline Arrangement arrangement_from_json(const json& j) {
  Arrangement a;
  a.ambient = j.at("ambient").get<int>();
  if (j.contains("c")) a.c = j["c"].get<int>();
  for (const auto& s : j.at("subspaces")) {
    RatMat basis = s.contains("basis") && !s["basis"].empty()
                       ? ratmat_from_json(s["basis"])
                       : RatMat(0, a.ambient);
    std::vector<Rat> offset(static_cast<size_t>(a.ambient));
    if (s.contains("offset")) offset = rat_vector_from_json(s["offset"]);
    std::string label = s.contains("label") ? s["label"].get<std::string>() : "";
    a.elements.push_back(Subspace::from_basis_offset(a.ambient, basis, offset, label));
  }
  a.auto_label();
  a.validate();
  return a;
}

// Zonotopes: {"ambient": d, "generators": [["num/den",..],..]}.
inline json zonotope_to_json(const Zonotope& z) {
  json gens = json::array();
  for (const auto& g : z.generators) gens.push_back(rat_vector_to_json(g));
  return json{{"ambient", z.ambient}, {"generators", gens}};
}

inline Zonotope zonotope_from_json(const json& j) {
  Zonotope z;
  z.ambient = j.at("ambient").get<int>();
  for (const auto& g : j.at("generators")) {
    std::vector<Rat> v = rat_vector_from_json(g);
    if (static_cast<int>(v.size()) != z.ambient)
      throw std::invalid_argument("generator dimension mismatch");
    z.generators.push_back(std::move(v));
  }
  return z;
}

inline json wills_to_json(const WillsPoly& w) {
  json j;
  j["grade"] = w.grade;
  j["nu"] = w.nu;
  j["exact"] = w.exact;
  if (w.exact) j["nu_exact"] = rat_vector_to_json(w.nu_exact);
  return j;
}

// Discotopes: float disks {"basis": [[..]], "radius": r}.
inline json discotope_to_json(const Discotope& d) {
  json disks = json::array();
  for (const auto& disk : d.disks)
    disks.push_back(json{{"basis", disk.basis}, {"radius", disk.radius}});
  return json{{"ambient", d.ambient}, {"disks", disks}};
}

inline Discotope discotope_from_json(const json& j) {
  Discotope d;
  d.ambient = j.at("ambient").get<int>();
  for (const auto& disk : j.at("disks")) {
    Disk dk;
    dk.basis = disk.at("basis").get<std::vector<std::vector<double>>>();
    dk.radius = disk.at("radius").get<double>();
    d.disks.push_back(std::move(dk));
  }
  return d;
}

inline json extension_record_to_json(const ExtensionRecord& r) {
  json j;
  j["kind"] = r.kind;
  j["k"] = r.k;
  j["h"] = r.h;
  j["ell"] = r.ell;
  j["seed"] = r.seed;
  json dirs = json::array();
  for (const auto& d : r.directions) dirs.push_back(rat_vector_to_json(d));
  j["directions"] = std::move(dirs);
  json offsets = json::array();
  for (const auto& o : r.offsets) offsets.push_back(rat_vector_to_json(o));
  j["offsets"] = std::move(offsets);
  if (!r.flex_basis.empty()) {
    json fb = json::array();
    for (const auto& v : r.flex_basis) fb.push_back(rat_vector_to_json(v));
    j["flex_basis"] = std::move(fb);
    if (!r.flex_offset.empty()) j["flex_offset"] = rat_vector_to_json(r.flex_offset);
    j["flexed_label"] = r.flexed_label;
    j["new_label"] = r.new_label;
  }
  return j;
}

inline ExtensionRecord extension_record_from_json(const json& j) {
  ExtensionRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.k = j.at("k").get<int>();
  r.h = j.at("h").get<int>();
  r.ell = j.value("ell", 0);
  r.seed = j.at("seed").get<uint64_t>();
  for (const auto& d : j.at("directions")) r.directions.push_back(rat_vector_from_json(d));
  for (const auto& o : j.at("offsets")) r.offsets.push_back(rat_vector_from_json(o));
  if (j.contains("flex_basis")) {
    for (const auto& v : j["flex_basis"]) r.flex_basis.push_back(rat_vector_from_json(v));
    if (j.contains("flex_offset")) r.flex_offset = rat_vector_from_json(j["flex_offset"]);
    r.flexed_label = j.value("flexed_label", "");
    r.new_label = j.value("new_label", "");
  }
  return r;
}

inline json poset_to_json(const IntersectionPoset& p) {
  json nodes = json::array();
  for (const auto& node : p.nodes) {
    json n;
    n["dim"] = node.dim;
    n["mobius"] = node.mobius.str();
    n["elements_mask"] = mask_to_int(node.elements_mask).str();
    nodes.push_back(std::move(n));
  }
  return json{{"ambient", p.ambient}, {"nodes", nodes}};
}

}  // namespace whitney
