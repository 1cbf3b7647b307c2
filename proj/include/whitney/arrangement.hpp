#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "whitney/matroid.hpp"
#include "whitney/poly.hpp"
#include "whitney/subspace.hpp"

namespace whitney {

struct Arrangement {
  int ambient = 0;
  std::vector<Subspace> elements;
  std::optional<int> c;  // declared codimension parameter, if any

  void validate() const {
    if (elements.size() > 120)
      throw std::invalid_argument("at most 120 elements supported");
    for (const auto& s : elements) {
      if (s.flat.ambient() != ambient)
        throw std::invalid_argument("element ambient mismatch");
      if (s.flat.dim() >= ambient)
        throw std::invalid_argument("element must be a proper subspace");
      if (c && s.flat.codim() != *c)
        throw std::invalid_argument("element codim does not match declared c");
    }
  }

  bool is_central() const {
    for (const auto& s : elements)
      if (!s.flat.is_central()) return false;
    return true;
  }

  void auto_label() {
    for (size_t i = 0; i < elements.size(); ++i)
      if (elements[i].label.empty()) elements[i].label = "e" + std::to_string(i + 1);
  }

  int index_of(const std::string& label) const {
    for (size_t i = 0; i < elements.size(); ++i)
      if (elements[i].label == label) return static_cast<int>(i);
    throw std::invalid_argument("no element labelled " + label);
  }
};

// Label masks cover up to 120 elements (extension catalogs exceed 64).
using ElemMask = unsigned __int128;

inline Int mask_to_int(ElemMask m) {
  Int hi = static_cast<uint64_t>(m >> 64);
  Int lo = static_cast<uint64_t>(m);
  return (hi << 64) | lo;
}

struct PosetNode {
  AffineFlat flat;
  ElemMask elements_mask = 0;  // elements containing this flat
  int dim = 0;
  Int mobius = 0;
};

// Nonempty intersections ordered by reverse inclusion; nodes[0] is the whole
// space. x <= y in the poset iff x contains y as point sets, which for these
// labels is exactly mask(x) subset-of mask(y).
struct IntersectionPoset {
  int ambient = 0;
  std::vector<PosetNode> nodes;

  int node_index(const AffineFlat& f) const {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].flat == f) return static_cast<int>(i);
    return -1;
  }
};

inline size_t default_poset_limit() {
  if (const char* env = std::getenv("WHITNEY_MAX_POSET_NODES")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<size_t>(v);
  }
  return 50000;
}

inline IntersectionPoset intersection_poset(const Arrangement& arr,
                                            size_t max_nodes = default_poset_limit()) {
  arr.validate();
  int n = static_cast<int>(arr.elements.size());

  auto label_mask = [&](const AffineFlat& f) {
    ElemMask m = 0;
    for (int j = 0; j < n; ++j)
      if (arr.elements[j].flat.contains(f)) m |= ElemMask{1} << j;
    return m;
  };

  std::map<std::string, int> seen;
  std::vector<PosetNode> nodes;
  auto add_node = [&](const AffineFlat& f) -> int {
    std::string k = f.key();
    auto it = seen.find(k);
    if (it != seen.end()) return it->second;
    if (nodes.size() >= max_nodes)
      throw resource_limit_error("intersection poset exceeds node limit");
    int idx = static_cast<int>(nodes.size());
    seen.emplace(std::move(k), idx);
    nodes.push_back(PosetNode{f, label_mask(f), f.dim(), Int(0)});
    return idx;
  };

  add_node(AffineFlat::full_space(arr.ambient));
  // Iterative closure: intersect every known flat with every element until
  // nothing new appears.
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (int j = 0; j < n; ++j) {
      if ((nodes[i].elements_mask >> j) & 1) continue;
      auto inter = nodes[i].flat.intersect(arr.elements[j].flat);
      if (!inter) continue;  // empty in the affine case
      add_node(*inter);
    }
  }

  // Sort by (codim, canonical key) so the Mobius recursion sees all smaller
  // flats first and the node order is reproducible.
  std::sort(nodes.begin(), nodes.end(), [](const PosetNode& a, const PosetNode& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.flat.key() < b.flat.key();
  });
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i == 0) {
      nodes[0].mobius = 1;
      continue;
    }
    Int acc = 0;
    for (size_t j = 0; j < i; ++j)
      if (nodes[j].elements_mask != nodes[i].elements_mask &&
          (nodes[j].elements_mask & ~nodes[i].elements_mask) == 0)
        acc += nodes[j].mobius;
    nodes[i].mobius = -acc;
  }

  IntersectionPoset p;
  p.ambient = arr.ambient;
  p.nodes = std::move(nodes);
  return p;
}

// All elements of codim c and every intersection codim divisible by c.
inline bool is_c_arrangement(const Arrangement& arr, int c,
                             const IntersectionPoset* poset = nullptr) {
  if (!arr.is_central()) throw std::invalid_argument("c-arrangement test needs a central arrangement");
  for (const auto& s : arr.elements)
    if (s.flat.codim() != c) return false;
  IntersectionPoset local;
  if (!poset) {
    local = intersection_poset(arr);
    poset = &local;
  }
  for (const auto& node : poset->nodes)
    if ((arr.ambient - node.dim) % c != 0) return false;
  return true;
}

// rank(S) = codim of the intersection of the chosen elements, divided by c.
inline Matroid matroid_of(const Arrangement& arr, int c) {
  if (!is_c_arrangement(arr, c))
    throw std::invalid_argument("not a c-arrangement for the given c");
  int n = static_cast<int>(arr.elements.size());
  std::vector<std::string> labels;
  for (const auto& s : arr.elements) labels.push_back(s.label);
  Arrangement copy = arr;
  auto fn = [copy, c, n](uint64_t mask) {
    AffineFlat f = AffineFlat::full_space(copy.ambient);
    for (int j = 0; j < n; ++j)
      if ((mask >> j) & 1) f = *f.intersect(copy.elements[j].flat);
    return f.codim() / c;
  };
  return Matroid::from_oracle(n, std::move(fn), labels);
}

struct ArrCharPolys {
  Poly signed_poly;  // sum_x mu(x) L^{dim x}
  Poly absolute;     // sum_x |mu(x)| L^{dim x}
};

inline ArrCharPolys char_poly_arr(const IntersectionPoset& poset) {
  std::vector<Rat> s(static_cast<size_t>(poset.ambient) + 1);
  std::vector<Rat> a(static_cast<size_t>(poset.ambient) + 1);
  for (const auto& node : poset.nodes) {
    Rat mu{node.mobius};
    s[static_cast<size_t>(node.dim)] += mu;
    a[static_cast<size_t>(node.dim)] += mu < 0 ? Rat(-mu) : mu;
  }
  return {Poly(std::move(s)), Poly(std::move(a))};
}

inline ArrCharPolys char_poly_arr(const Arrangement& arr) {
  return char_poly_arr(intersection_poset(arr));
}

// Deletion keeps the elements not contained in H; contraction intersects them
// with H and re-embeds in H's coordinates through its echelon basis.
inline std::pair<Arrangement, Arrangement> delete_contract_arr(const Arrangement& arr,
                                                               int index) {
  if (index < 0 || index >= static_cast<int>(arr.elements.size()))
    throw std::invalid_argument("element index out of range");
  const AffineFlat& h = arr.elements[static_cast<size_t>(index)].flat;

  Arrangement del;
  del.ambient = arr.ambient;
  for (size_t i = 0; i < arr.elements.size(); ++i)
    if (!h.contains(arr.elements[i].flat)) del.elements.push_back(arr.elements[i]);

  Arrangement con;
  con.ambient = h.dim();
  RatMat basis = h.basis();          // rows span the linear part
  std::vector<Rat> p = h.point();    // fixed deterministic base point
  RatMat bt = transpose(basis);
  std::map<std::string, bool> dedup;
  for (const auto& el : del.elements) {
    RatMat c = el.flat.constraint_matrix();
    std::vector<Rat> b = el.flat.constraint_rhs();
    RatMat cb = mat_mul(c, bt);
    std::vector<Rat> cp = mat_vec(c, p);
    for (size_t i = 0; i < b.size(); ++i) b[i] -= cp[i];
    auto f = AffineFlat::from_constraints(cb, b);
    if (!f) continue;                       // empty intersection with H
    if (f->dim() == con.ambient) continue;  // element contained H entirely
    if (dedup.emplace(f->key(), true).second)
      con.elements.push_back(Subspace{*f, el.label});
  }
  return {del, con};
}

// Meet/join existence for every pair of nodes (central arrangements give a
// lattice; affine ones generally do not).
inline bool poset_is_lattice(const IntersectionPoset& poset) {
  size_t n = poset.nodes.size();
  auto leq = [&](size_t x, size_t y) {  // x <= y : x contains y
    return (poset.nodes[x].elements_mask & ~poset.nodes[y].elements_mask) == 0;
  };
  auto has_least = [&](const std::vector<size_t>& set) {
    for (size_t cand : set) {
      bool least = true;
      for (size_t other : set)
        if (!leq(cand, other)) { least = false; break; }
      if (least) return true;
    }
    return false;
  };
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y) {
      std::vector<size_t> uppers, lowers;
      for (size_t z = 0; z < n; ++z) {
        if (leq(x, z) && leq(y, z)) uppers.push_back(z);
        if (leq(z, x) && leq(z, y)) lowers.push_back(z);
      }
      if (uppers.empty() || !has_least(uppers)) return false;
      // greatest lower bound: least in the reversed order
      bool has_greatest = false;
      for (size_t cand : lowers) {
        bool greatest = true;
        for (size_t other : lowers)
          if (!leq(other, cand)) { greatest = false; break; }
        if (greatest) { has_greatest = true; break; }
      }
      if (!has_greatest) return false;
    }
  return true;
}

// --- named arrangements -------------------------------------------------------

inline Subspace hyperplane_subspace(int d, const std::vector<Rat>& normal, Rat rhs = Rat(0),
                                    std::string label = {}) {
  RatMat c(1, d);
  for (int j = 0; j < d; ++j) c.at(0, j) = normal[static_cast<size_t>(j)];
  return Subspace::from_constraints(c, {std::move(rhs)}, std::move(label));
}

inline Arrangement coordinate_arrangement(int d) {
  Arrangement a;
  a.ambient = d;
  a.c = 1;
  for (int i = 0; i < d; ++i) {
    std::vector<Rat> n(static_cast<size_t>(d));
    n[static_cast<size_t>(i)] = 1;
    a.elements.push_back(hyperplane_subspace(d, n));
  }
  a.auto_label();
  return a;
}

// n central hyperplanes with moment-curve normals (1, t, t^2, ...): any d of
// them are independent, which is exactly the generic position needed here.
inline Arrangement generic_arrangement(int n, int d) {
  Arrangement a;
  a.ambient = d;
  a.c = 1;
  for (int t = 1; t <= n; ++t) {
    std::vector<Rat> normal;
    Rat p = 1;
    for (int i = 0; i < d; ++i) {
      normal.push_back(p);
      p *= t;
    }
    a.elements.push_back(hyperplane_subspace(d, normal));
  }
  a.auto_label();
  return a;
}

// x_i = x_j for 1 <= i < j <= m (the graphic arrangement of the complete graph).
inline Arrangement braid_arrangement(int m) {
  Arrangement a;
  a.ambient = m;
  a.c = 1;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::vector<Rat> n(static_cast<size_t>(m));
      n[static_cast<size_t>(i)] = 1;
      n[static_cast<size_t>(j)] = -1;
      a.elements.push_back(
          hyperplane_subspace(m, n, Rat(0), std::to_string(i + 1) + std::to_string(j + 1)));
    }
  return a;
}

// Three pairwise-transverse codimension-2 planes in R^4 (a 2-arrangement
// realizing the rank-2 uniform matroid on three elements).
inline Arrangement transverse_planes_r4() {
  Arrangement a;
  a.ambient = 4;
  a.c = 2;
  auto plane = [](std::vector<std::vector<Rat>> rows, std::string label) {
    return Subspace::from_constraints(RatMat::from_rows(rows),
                                      {Rat(0), Rat(0)}, std::move(label));
  };
  a.elements.push_back(plane({{1, 0, 0, 0}, {0, 1, 0, 0}}, "e1"));
  a.elements.push_back(plane({{0, 0, 1, 0}, {0, 0, 0, 1}}, "e2"));
  a.elements.push_back(plane({{1, 0, -1, 0}, {0, 1, 0, -1}}, "e3"));
  return a;
}

// coordinate(d) | generic(n,d) | braid(m) | transverse-planes
inline Arrangement arrangement_catalog(const std::string& name) {
  if (name == "transverse-planes") return transverse_planes_r4();
  size_t open = name.find('(');
  if (open != std::string::npos && name.back() == ')') {
    std::string head = name.substr(0, open);
    std::string body = name.substr(open + 1, name.size() - open - 2);
    std::vector<int> args;
    size_t pos = 0;
    while (pos < body.size()) {
      size_t comma = body.find(',', pos);
      args.push_back(std::stoi(body.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (head == "coordinate" && args.size() == 1) return coordinate_arrangement(args[0]);
    if (head == "generic" && args.size() == 2) return generic_arrangement(args[0], args[1]);
    if (head == "braid" && args.size() == 1) return braid_arrangement(args[0]);
  }
  throw std::invalid_argument("unknown arrangement: " + name);
}

// Canonical-labeling certificate for poset isomorphism: iterated refinement
// of node labels by (dim, multiset of up-set labels, multiset of down-set
// labels) until stable, then comparison of the sorted label multisets.
inline bool poset_isomorphic(const IntersectionPoset& a, const IntersectionPoset& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  auto refine = [](const IntersectionPoset& p) {
    size_t n = p.nodes.size();
    std::vector<long long> lab(n);
    for (size_t i = 0; i < n; ++i) lab[i] = p.nodes[i].dim - p.ambient;
    for (size_t round = 0; round < n; ++round) {
      std::vector<std::tuple<long long, std::vector<long long>, std::vector<long long>>> sig(n);
      for (size_t i = 0; i < n; ++i) {
        std::vector<long long> up, down;
        for (size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          bool iltj = (p.nodes[i].elements_mask & ~p.nodes[j].elements_mask) == 0;
          bool jlti = (p.nodes[j].elements_mask & ~p.nodes[i].elements_mask) == 0;
          if (iltj) up.push_back(lab[j]);
          else if (jlti) down.push_back(lab[j]);
        }
        std::sort(up.begin(), up.end());
        std::sort(down.begin(), down.end());
        sig[i] = {lab[i], std::move(up), std::move(down)};
      }
      std::vector<std::tuple<long long, std::vector<long long>, std::vector<long long>>> sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      std::vector<long long> next(n);
      for (size_t i = 0; i < n; ++i)
        next[i] = static_cast<long long>(
            std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
      if (next == lab) break;
      lab = std::move(next);
    }
    std::sort(lab.begin(), lab.end());
    return lab;
  };
  return refine(a) == refine(b);
}

}  // namespace whitney
