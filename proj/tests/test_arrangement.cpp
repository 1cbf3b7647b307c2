#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "whitney/arrangement.hpp"

using namespace whitney;

namespace {

RatMat M(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Rat>> r;
  for (auto& row : rows) r.emplace_back(row.begin(), row.end());
  return RatMat::from_rows(r);
}

Subspace hyperplane(int d, std::vector<int> normal, int rhs = 0,
                    std::string label = {}) {
  std::vector<std::vector<Rat>> c{{}};
  c[0].assign(normal.begin(), normal.end());
  return Subspace::from_constraints(RatMat::from_rows(c), {Rat(rhs)},
                                    std::move(label));
}

// Independent poset oracle: enumerate intersections over all 2^n element
// subsets, dedup geometrically, order by pairwise flat containment, and invert
// the zeta matrix for the Mobius values. No label masks, no closure loop.
struct OracleNode {
  AffineFlat flat;
  Int mobius;
};
std::vector<OracleNode> poset_oracle(const Arrangement& arr) {
  int n = static_cast<int>(arr.elements.size());
  std::vector<AffineFlat> flats;
  auto push = [&](const AffineFlat& f) {
    for (const auto& g : flats)
      if (g == f) return;
    flats.push_back(f);
  };
  for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
    std::optional<AffineFlat> f = AffineFlat::full_space(arr.ambient);
    for (int j = 0; f && j < n; ++j)
      if ((s >> j) & 1) f = f->intersect(arr.elements[j].flat);
    if (f) push(*f);
  }
  // order: sort by dim descending (refinement of the poset order)
  std::sort(flats.begin(), flats.end(), [](const AffineFlat& a, const AffineFlat& b) {
    if (a.dim() != b.dim()) return a.dim() > b.dim();
    return a.key() < b.key();
  });
  std::vector<OracleNode> nodes;
  for (const auto& f : flats) nodes.push_back({f, Int(0)});
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i == 0) {
      nodes[0].mobius = 1;
      continue;
    }
    Int acc = 0;
    for (size_t j = 0; j < i; ++j)
      if (nodes[j].flat.contains(nodes[i].flat) && !(nodes[j].flat == nodes[i].flat))
        acc += nodes[j].mobius;
    nodes[i].mobius = -acc;
  }
  return nodes;
}

void check_poset_against_oracle(const Arrangement& arr) {
  auto oracle = poset_oracle(arr);
  auto poset = intersection_poset(arr);
  REQUIRE(poset.nodes.size() == oracle.size());
  for (const auto& node : poset.nodes) {
    bool found = false;
    for (const auto& on : oracle)
      if (on.flat == node.flat) {
        CHECK(on.mobius == node.mobius);
        found = true;
        break;
      }
    CHECK(found);
  }
}

}  // namespace

TEST_CASE("coordinate hyperplanes give the Boolean poset") {
  auto poset = intersection_poset(coordinate_arrangement(3));
  CHECK(poset.nodes.size() == 8);
  check_poset_against_oracle(coordinate_arrangement(3));
  CHECK(poset_is_lattice(poset));
}

TEST_CASE("three lines through the origin in the plane") {
  Arrangement a;
  a.ambient = 2;
  a.elements = {hyperplane(2, {1, 0}), hyperplane(2, {0, 1}), hyperplane(2, {1, 1})};
  a.auto_label();
  auto poset = intersection_poset(a);
  REQUIRE(poset.nodes.size() == 5);
  // origin node carries mu = 2
  for (const auto& node : poset.nodes)
    if (node.dim == 0) CHECK(node.mobius == 2);
  check_poset_against_oracle(a);
  CHECK(poset_is_lattice(poset));
}

TEST_CASE("two parallel affine lines: empty intersection dropped") {
  Arrangement a;
  a.ambient = 2;
  a.elements = {hyperplane(2, {1, 0}, 0), hyperplane(2, {1, 0}, 1)};
  a.auto_label();
  auto poset = intersection_poset(a);
  CHECK(poset.nodes.size() == 3);
  check_poset_against_oracle(a);
}

TEST_CASE("c-arrangement recognition") {
  CHECK(is_c_arrangement(coordinate_arrangement(3), 1));

  // three pairwise-transverse codim-2 planes in R^4
  Arrangement planes;
  planes.ambient = 4;
  planes.elements = {
      Subspace::from_constraints(M({{1, 0, 0, 0}, {0, 1, 0, 0}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{0, 0, 1, 0}, {0, 0, 0, 1}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{1, 0, -1, 0}, {0, 1, 0, -1}}), {Rat(0), Rat(0)})};
  planes.auto_label();
  CHECK(is_c_arrangement(planes, 2));
  CHECK_FALSE(is_c_arrangement(planes, 1));

  // two planes in R^4 meeting in a line: codim-3 node breaks divisibility
  Arrangement badpair;
  badpair.ambient = 4;
  badpair.elements = {
      Subspace::from_constraints(M({{1, 0, 0, 0}, {0, 1, 0, 0}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{1, 0, 0, 0}, {0, 0, 1, 0}}), {Rat(0), Rat(0)})};
  badpair.auto_label();
  CHECK_FALSE(is_c_arrangement(badpair, 2));

  // non-central input is an error
  Arrangement aff;
  aff.ambient = 2;
  aff.elements = {hyperplane(2, {1, 0}, 1)};
  aff.auto_label();
  CHECK_THROWS_AS(is_c_arrangement(aff, 1), std::invalid_argument);
}

TEST_CASE("matroid of a c-arrangement") {
  Matroid bd = matroid_of(coordinate_arrangement(4), 1);
  for (uint64_t s = 0; s <= bd.full_mask(); ++s)
    CHECK(bd.rank(s) == boolean_matroid(4).rank(s));

  Arrangement planes;
  planes.ambient = 4;
  planes.elements = {
      Subspace::from_constraints(M({{1, 0, 0, 0}, {0, 1, 0, 0}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{0, 0, 1, 0}, {0, 0, 0, 1}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{1, 0, -1, 0}, {0, 1, 0, -1}}), {Rat(0), Rat(0)})};
  planes.auto_label();
  Matroid mu = matroid_of(planes, 2);
  for (uint64_t s = 0; s < 8; ++s) CHECK(mu.rank(s) == uniform_matroid(2, 3).rank(s));

  // single codim-c subspace is U_{1,1}
  Arrangement single;
  single.ambient = 4;
  single.elements = {planes.elements[0]};
  single.auto_label();
  Matroid m1 = matroid_of(single, 2);
  CHECK(m1.size() == 1);
  CHECK(m1.rank_full() == 1);

  // poset Mobius values agree with the flat-lattice Mobius values node by node
  auto poset = intersection_poset(planes);
  FlatLattice lat = flats_and_mobius(mu);
  REQUIRE(poset.nodes.size() == lat.flats.size());
  for (const auto& node : poset.nodes) {
    bool matched = false;
    for (size_t i = 0; i < lat.flats.size(); ++i)
      if (lat.flats[i] == node.elements_mask) {
        CHECK(lat.mobius[i] == node.mobius);
        matched = true;
      }
    CHECK(matched);
  }
}

TEST_CASE("arrangement characteristic polynomials") {
  // coordinate arrangement in R^3: absolute = (1+L)^3
  auto polys = char_poly_arr(coordinate_arrangement(3));
  CHECK(polys.absolute == binomial_poly(3));

  // single hyperplane in R^2: absolute = L^2 + L
  Arrangement single;
  single.ambient = 2;
  single.elements = {hyperplane(2, {1, 0})};
  single.auto_label();
  CHECK(char_poly_arr(single).absolute == Poly(std::vector<Rat>{Rat(0), Rat(1), Rat(1)}));

  // 3 transverse codim-2 planes in R^4: absolute = L^4 + 3L^2 + 2,
  // signed alternates
  Arrangement planes;
  planes.ambient = 4;
  planes.elements = {
      Subspace::from_constraints(M({{1, 0, 0, 0}, {0, 1, 0, 0}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{0, 0, 1, 0}, {0, 0, 0, 1}}), {Rat(0), Rat(0)}),
      Subspace::from_constraints(M({{1, 0, -1, 0}, {0, 1, 0, -1}}), {Rat(0), Rat(0)})};
  planes.auto_label();
  auto pp = char_poly_arr(planes);
  CHECK(pp.absolute == Poly(std::vector<Rat>{Rat(2), Rat(0), Rat(3), Rat(0), Rat(1)}));
  CHECK(pp.signed_poly == Poly(std::vector<Rat>{Rat(2), Rat(0), Rat(-3), Rat(0), Rat(1)}));

  // c-relation: absolute = psi(U_{2,3}) with L -> L^2 (ambient 4 = c*r)
  auto u = char_poly(uniform_matroid(2, 3));
  CHECK(pp.absolute == u.psi.substitute_power(2));
  CHECK(pp.signed_poly == u.chi.substitute_power(2));
}

TEST_CASE("deletion and contraction of arrangements") {
  // contract a coordinate hyperplane: coordinate arrangement one dimension down
  auto [del3, con3] = delete_contract_arr(coordinate_arrangement(3), 2);
  CHECK(del3.elements.size() == 2);
  CHECK(con3.ambient == 2);
  CHECK(char_poly_arr(con3).absolute == binomial_poly(2));

  // deleting from a 1-element arrangement leaves the empty arrangement
  Arrangement single;
  single.ambient = 3;
  single.elements = {hyperplane(3, {1, 1, 1})};
  single.auto_label();
  auto [sd, sc] = delete_contract_arr(single, 0);
  CHECK(sd.elements.empty());
  CHECK(char_poly_arr(sd).absolute == Poly::monomial(Rat(1), 3));

  // generic hyperplanes: contraction drops n and d by one; the rank oracle of
  // the contraction matches the expected uniform matroid
  Arrangement gen;
  gen.ambient = 3;
  for (int t = 1; t <= 4; ++t)
    gen.elements.push_back(hyperplane(3, {1, t, t * t}));
  gen.auto_label();
  auto [gdel, gcon] = delete_contract_arr(gen, 0);
  CHECK(gdel.elements.size() == 3);
  CHECK(gcon.ambient == 2);
  CHECK(gcon.elements.size() == 3);
  Matroid mg = matroid_of(gcon, 1);
  for (uint64_t s = 0; s < 8; ++s) CHECK(mg.rank(s) == uniform_matroid(2, 3).rank(s));
}

TEST_CASE("deletion-contraction identity for hyperplane arrangements") {
  std::vector<Arrangement> catalog;
  for (int d = 2; d <= 4; ++d) catalog.push_back(coordinate_arrangement(d));
  // generic (moment-curve normals) arrangements
  for (int d = 2; d <= 3; ++d)
    for (int n = 2; n <= 4; ++n) {
      Arrangement a;
      a.ambient = d;
      for (int t = 1; t <= n; ++t) {
        std::vector<int> normal;
        int p = 1;
        for (int i = 0; i < d; ++i) {
          normal.push_back(p);
          p *= t;
        }
        a.elements.push_back(hyperplane(d, normal));
      }
      a.auto_label();
      catalog.push_back(a);
    }
  // an affine example: two parallel lines and a transversal
  Arrangement aff;
  aff.ambient = 2;
  aff.elements = {hyperplane(2, {1, 0}, 0), hyperplane(2, {1, 0}, 1),
                  hyperplane(2, {0, 1}, 0)};
  aff.auto_label();
  catalog.push_back(aff);

  for (const auto& a : catalog) {
    Poly psi = char_poly_arr(a).absolute;
    for (int e = 0; e < static_cast<int>(a.elements.size()); ++e) {
      auto [del, con] = delete_contract_arr(a, e);
      Poly rhs = char_poly_arr(del).absolute + char_poly_arr(con).absolute;
      INFO("element " << e);
      CHECK(psi == rhs);
    }
  }
}

TEST_CASE("poset node limit raises a resource error") {
  CHECK_THROWS_AS(intersection_poset(coordinate_arrangement(4), 5),
                  resource_limit_error);
}

TEST_CASE("poset isomorphism certificate") {
  // isomorphic: coordinate arrangements with permuted coordinates
  Arrangement a = coordinate_arrangement(3);
  Arrangement b;
  b.ambient = 3;
  b.elements = {hyperplane(3, {0, 0, 1}), hyperplane(3, {1, 0, 0}),
                hyperplane(3, {0, 1, 0})};
  b.auto_label();
  CHECK(poset_isomorphic(intersection_poset(a), intersection_poset(b)));

  // not isomorphic: three coordinate planes vs three planes through a line
  Arrangement pencil;
  pencil.ambient = 3;
  pencil.elements = {hyperplane(3, {1, 0, 0}), hyperplane(3, {0, 1, 0}),
                     hyperplane(3, {1, 1, 0})};
  pencil.auto_label();
  CHECK_FALSE(poset_isomorphic(intersection_poset(a), intersection_poset(pencil)));
}
