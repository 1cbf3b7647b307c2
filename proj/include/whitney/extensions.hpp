#pragma once

#include <string>
#include <vector>

#include "whitney/arrangement.hpp"
#include "whitney/random.hpp"

namespace whitney {

class genericity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replayable description of one extension step: the sampled directions, the
// hyperplane offsets per direction, and the flexed normal space basis.
struct ExtensionRecord {
  std::string kind;  // trivial | large_product | semiflexible | affine_flex
  int k = 0, h = 0, ell = 0;
  uint64_t seed = 0;
  std::vector<std::vector<Rat>> directions;
  std::vector<std::vector<Rat>> offsets;     // per direction
  std::vector<std::vector<Rat>> flex_basis;  // rows spanning the new normal space
  std::vector<Rat> flex_offset;              // nonzero only for the affine variant
  std::string flexed_label;
  std::string new_label;
};

// H_i -> H_i x R^ell: constraint rows padded with ell zero columns.
inline Arrangement trivial_ext(const Arrangement& arr, int ell) {
  if (ell < 0) throw std::invalid_argument("trivial extension needs ell >= 0");
  if (ell == 0) return arr;
  Arrangement out;
  out.ambient = arr.ambient + ell;
  out.c = arr.c;
  for (const auto& el : arr.elements) {
    RatMat c = el.flat.constraint_matrix();
    RatMat cc(c.rows(), c.cols() + ell);
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) cc.at(i, j) = c.at(i, j);
    out.elements.push_back(Subspace::from_constraints(cc, el.flat.constraint_rhs(), el.label));
  }
  return out;
}

namespace detail {

inline bool in_rowspace(const AffineFlat& flat, const std::vector<Rat>& s) {
  RatMat stack = flat.constraint_matrix();
  stack.append_row(s);
  return rank_of(stack) == flat.codim();
}

// Strongest reading of general position: the new hyperplane direction must be
// transverse to every positive-dimensional flat of the current poset, and its
// affine copies at offsets 1..h must miss every point node.
inline bool direction_is_generic(const IntersectionPoset& poset, const std::vector<Rat>& s,
                                 int h) {
  for (const auto& node : poset.nodes) {
    if (node.dim >= 1) {
      if (in_rowspace(node.flat, s)) return false;
    } else {
      std::vector<Rat> p = node.flat.point();
      Rat t{0};
      for (size_t i = 0; i < p.size(); ++i) t += s[i] * p[i];
      if (denominator(t) == 1 && t >= 1 && t <= h) return false;
    }
  }
  return true;
}

inline std::vector<Rat> sample_int_vector(Rng& rng, int d, long bound) {
  std::vector<Rat> v(static_cast<size_t>(d));
  bool nonzero = false;
  for (auto& x : v) {
    long val = static_cast<long>(rng.uniform_int(-bound, bound));
    x = Rat(val);
    if (val != 0) nonzero = true;
  }
  if (!nonzero) v[0] = 1;
  return v;
}

constexpr long kDirectionBound = 10000;
constexpr int kMaxRetries = 50;

}  // namespace detail

// Adds k generic directions, each with h distinct parallel affine hyperplanes
// at offsets 1..h, after padding the ambient space by k. Direction i is
// certified against the full poset that already includes directions < i.
inline std::pair<Arrangement, ExtensionRecord> large_product_ext(const Arrangement& arr,
                                                                 int k, int h,
                                                                 uint64_t seed) {
  if (k < 0 || h < 1) throw std::invalid_argument("large product extension needs k >= 0, h >= 1");
  ExtensionRecord rec;
  rec.kind = "large_product";
  rec.k = k;
  rec.h = h;
  rec.seed = seed;
  Arrangement cur = trivial_ext(arr, k);
  if (arr.c && *arr.c != 1) cur.c.reset();  // mixed codimensions from here on
  Rng rng(mix_seed(seed, 0x1a26e));
  for (int i = 0; i < k; ++i) {
    IntersectionPoset poset = intersection_poset(cur);
    std::vector<Rat> s;
    int tries = 0;
    while (true) {
      s = detail::sample_int_vector(rng, cur.ambient, detail::kDirectionBound);
      if (detail::direction_is_generic(poset, s, h)) break;
      if (++tries > detail::kMaxRetries)
        throw genericity_error("no generic direction found; try another seed");
    }
    rec.directions.push_back(s);
    std::vector<Rat> offs;
    for (int j = 1; j <= h; ++j) {
      offs.emplace_back(j);
      RatMat c(1, cur.ambient);
      for (int t = 0; t < cur.ambient; ++t) c.at(0, t) = s[static_cast<size_t>(t)];
      cur.elements.push_back(Subspace::from_constraints(
          c, {Rat(j)}, "s" + std::to_string(i + 1) + "o" + std::to_string(j)));
    }
    rec.offsets.push_back(std::move(offs));
  }
  return {cur, rec};
}

namespace detail {

// Shared flex machinery: replaces element e of the large product extension by
// a subspace whose normal space is a generically sampled c-dimensional
// subspace of span(H_e-normals, extension directions). When affine is set the
// new element also gets a generic offset (certified against every poset node).
inline std::pair<Arrangement, ExtensionRecord> flex_ext(const Arrangement& arr, int e,
                                                        int k, int h, uint64_t seed,
                                                        bool affine) {
  if (e < 0 || e >= static_cast<int>(arr.elements.size()))
    throw std::invalid_argument("element index out of range");
  // Iterated extensions contain affine hyperplanes, so centrality is only
  // required of the element being flexed.
  if (!arr.elements[static_cast<size_t>(e)].flat.is_central())
    throw std::invalid_argument("semiflexible extension needs a central element");
  auto [prod, rec] = large_product_ext(arr, k, h, mix_seed(seed, 0x5fe1));
  rec.kind = affine ? "affine_flex" : "semiflexible";
  rec.seed = seed;
  int c = arr.elements[static_cast<size_t>(e)].flat.codim();
  int big_d = prod.ambient;

  // span basis rows: extended H_e normals then the k directions
  RatMat span_rows = prod.elements[static_cast<size_t>(e)].flat.constraint_matrix();
  for (const auto& s : rec.directions) span_rows.append_row(s);

  Arrangement rest = prod;
  rest.elements.erase(rest.elements.begin() + e);
  rest.c.reset();
  IntersectionPoset poset = intersection_poset(rest);
  RatMat c_e = prod.elements[static_cast<size_t>(e)].flat.constraint_matrix();

  Rng rng(mix_seed(seed, 0xf1e8));
  RatMat v;
  std::vector<Rat> offset(static_cast<size_t>(c));
  int tries = 0;
  while (true) {
    RatMat u(c, span_rows.rows());
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < span_rows.rows(); ++j)
        u.at(i, j) = Rat(static_cast<long>(rng.uniform_int(-detail::kDirectionBound,
                                                           detail::kDirectionBound)));
    v = mat_mul(u, span_rows);
    bool ok = rank_of(v) == c;
    if (ok && k >= 1) {
      // transverse to the old normal space as far as the span allows
      RatMat both = c_e;
      for (int i = 0; i < v.rows(); ++i) both.append_row(v.row(i));
      ok = rank_of(both) == std::min(2 * c, c + k);
    }
    if (ok) {
      auto central = AffineFlat::from_constraints(v, std::vector<Rat>(static_cast<size_t>(c)));
      for (const auto& node : poset.nodes) {
        RatMat stack = node.flat.constraint_matrix();
        for (int i = 0; i < v.rows(); ++i) stack.append_row(v.row(i));
        int want = std::min(node.flat.codim() + c, big_d);
        if (rank_of(stack) != want) {
          ok = false;
          break;
        }
        // where the rank condition caps at the ambient dimension it says
        // nothing, so rule out the flex subspace swallowing the node (that is
        // how distinct slices would merge)
        if (!affine && want < node.flat.codim() + c && central->contains(node.flat)) {
          ok = false;
          break;
        }
      }
    }
    if (ok && affine) {
      for (auto& t : offset)
        t = Rat(static_cast<long>(rng.uniform_int(1, detail::kDirectionBound)));
      auto eflat = AffineFlat::from_constraints(v, offset);
      // where the linear parts are dependent, a generic offset must give an
      // empty intersection; certify that exactly
      for (const auto& node : poset.nodes) {
        RatMat stack = node.flat.constraint_matrix();
        for (int i = 0; i < v.rows(); ++i) stack.append_row(v.row(i));
        if (rank_of(stack) == node.flat.codim() + c) continue;  // transverse
        if (node.flat.intersect(*eflat)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) break;
    if (++tries > detail::kMaxRetries)
      throw genericity_error("no generic flex subspace found; try another seed");
  }

  std::string old_label = prod.elements[static_cast<size_t>(e)].label;
  rec.flexed_label = old_label;
  rec.new_label = old_label + "'";
  for (int i = 0; i < v.rows(); ++i) rec.flex_basis.push_back(v.row(i));
  if (affine) rec.flex_offset = offset;

  Arrangement out = prod;
  out.c.reset();
  out.elements[static_cast<size_t>(e)] =
      Subspace::from_constraints(v, affine ? offset : std::vector<Rat>(static_cast<size_t>(c)),
                                 rec.new_label);
  return {out, rec};
}

}  // namespace detail

inline std::pair<Arrangement, ExtensionRecord> semiflexible_ext(const Arrangement& arr,
                                                                int e, int k, int h,
                                                                uint64_t seed) {
  auto res = detail::flex_ext(arr, e, k, h, seed, false);
  if (arr.c && *arr.c == 1) res.first.c = 1;
  return res;
}

// Affine variant: the flexed element is moved off the origin by a generic
// offset. This is what a slice of the semiflexible extension along one of its
// extension hyperplanes looks like, so it is the right recursive object for
// the recurrence verifier.
inline std::pair<Arrangement, ExtensionRecord> affine_flex_ext(const Arrangement& arr,
                                                               int e, int k, int h,
                                                               uint64_t seed) {
  return detail::flex_ext(arr, e, k, h, seed, true);
}

// Generic lift contraction: pad the deletion by one dimension, then contract
// onto a generic subspace of the matching codimension. Elements that meet the
// flexed element in a common flat stay distinct here, which is exactly what
// the contraction of the extension onto its flexed element sees.
inline Arrangement generic_lift_contraction(const Arrangement& arr, int e, uint64_t seed) {
  if (e < 0 || e >= static_cast<int>(arr.elements.size()))
    throw std::invalid_argument("element index out of range");
  int c = arr.elements[static_cast<size_t>(e)].flat.codim();
  Arrangement lifted = trivial_ext(delete_contract_arr(arr, e).first, 1);
  lifted.c.reset();
  int big_d = lifted.ambient;
  IntersectionPoset poset = intersection_poset(lifted);
  Rng rng(mix_seed(seed, 0x6c1f7));
  RatMat v;
  int tries = 0;
  while (true) {
    v = RatMat(c, big_d);
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < big_d; ++j)
        v.at(i, j) = Rat(static_cast<long>(rng.uniform_int(-detail::kDirectionBound,
                                                           detail::kDirectionBound)));
    bool ok = rank_of(v) == c;
    if (ok) {
      auto central = AffineFlat::from_constraints(v, std::vector<Rat>(static_cast<size_t>(c)));
      for (const auto& node : poset.nodes) {
        RatMat stack = node.flat.constraint_matrix();
        for (int i = 0; i < c; ++i) stack.append_row(v.row(i));
        int want = std::min(node.flat.codim() + c, big_d);
        if (rank_of(stack) != want ||
            (want < node.flat.codim() + c && central->contains(node.flat))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) break;
    if (++tries > detail::kMaxRetries)
      throw genericity_error("no generic contraction subspace found; try another seed");
  }
  Arrangement with_e = lifted;
  with_e.elements.push_back(Subspace::from_constraints(
      v, std::vector<Rat>(static_cast<size_t>(c)), "gc"));
  return delete_contract_arr(with_e, static_cast<int>(with_e.elements.size()) - 1).second;
}

struct CompositeResult {
  Arrangement arr;
  std::vector<ExtensionRecord> records;
};

// Iterated semiflexible extension over the given element order, each step
// followed by a trivial extension. Element indices stay valid throughout
// because the flexed element is replaced in place.
inline CompositeResult composite_sfe(const Arrangement& arr, const std::vector<int>& order,
                                     int k, int h, int ell, uint64_t seed) {
  std::vector<bool> used(arr.elements.size(), false);
  if (order.size() != arr.elements.size())
    throw std::invalid_argument("order must be a permutation of the elements");
  for (int idx : order) {
    if (idx < 0 || idx >= static_cast<int>(arr.elements.size()) || used[static_cast<size_t>(idx)])
      throw std::invalid_argument("order must be a permutation of the elements");
    used[static_cast<size_t>(idx)] = true;
  }
  CompositeResult res;
  res.arr = arr;
  for (size_t step = 0; step < order.size(); ++step) {
    auto [next, rec] = semiflexible_ext(res.arr, order[step], k, h,
                                        mix_seed(seed, 0xc0423 + step));
    rec.ell = ell;
    res.arr = trivial_ext(next, ell);
    res.records.push_back(std::move(rec));
  }
  return res;
}

// psi(Pr_{k,h}(A)) - (L + h) psi(Pr_{k-1,h}(A)); the zero polynomial under
// genericity. Both sides sample their own directions.
inline Poly lemma_product_residual(const Arrangement& arr, int k, int h, uint64_t seed) {
  if (k < 1) throw std::invalid_argument("lemma needs k >= 1");
  Poly lhs = char_poly_arr(large_product_ext(arr, k, h, mix_seed(seed, 11)).first).absolute;
  Poly rhs = k == 1 ? char_poly_arr(arr).absolute
                    : char_poly_arr(large_product_ext(arr, k - 1, h, mix_seed(seed, 22)).first)
                          .absolute;
  return lhs - Poly(std::vector<Rat>{Rat(h), Rat(1)}) * rhs;
}

// Residual of the recurrence, reported per lambda power:
//
//   psi(Sf_{k,h}(A,e)) - h psi(Af_{k-1,h}(A,e)) - L psi(Pr_{k-1,h}(A\e))
//                      - psi(Pr_{k-1,h}(Gc(A,e)))
//
// where Af is the affine-flex variant (the restriction of Sf_{k,h} to one of
// its extension hyperplanes) and Gc is the generic lift contraction (the
// restriction to the flexed element). The L factor accounts for the
// one-dimension drop of the deletion embedding. Whenever no two elements of A
// meet the flexed element in a common flat, Af_{k-1,h}(A,e) has the poset of
// Sf_{k-1,h}(A,e) and Gc(A,e) has the poset of the padded contraction A/e,
// recovering the plainly stated form of the recurrence.
inline Poly lemma_semiflex_residual(const Arrangement& arr, int e, int k, int h,
                                    uint64_t seed) {
  if (k < 1) throw std::invalid_argument("lemma needs k >= 1");
  Poly lhs = char_poly_arr(semiflexible_ext(arr, e, k, h, mix_seed(seed, 33)).first).absolute;
  Poly af_prev =
      char_poly_arr(affine_flex_ext(arr, e, k - 1, h, mix_seed(seed, 44)).first).absolute;
  Arrangement del = delete_contract_arr(arr, e).first;
  Poly pr_del = k == 1 ? char_poly_arr(del).absolute
                       : char_poly_arr(large_product_ext(del, k - 1, h, mix_seed(seed, 55)).first)
                             .absolute;
  Arrangement gc = generic_lift_contraction(arr, e, mix_seed(seed, 77));
  Poly pr_gc = k == 1 ? char_poly_arr(gc).absolute
                      : char_poly_arr(large_product_ext(gc, k - 1, h, mix_seed(seed, 66)).first)
                            .absolute;
  Poly rhs = af_prev.scale(Rat(h)) + pr_del.shift_by_power(1) + pr_gc;
  return lhs - rhs;
}

struct FlexLimitRow {
  int h = 0;
  std::vector<Rat> deviation;  // per lambda power: |psi(Sf_{k,h})/h^k - psi(A)|
  bool leading_match = false;  // both polynomials are monic
};

// Convergence table for psi(Sf_{k,h}(A,e))/h^k -> psi(A) coefficient-wise.
inline std::vector<FlexLimitRow> flex_limit_probe(const Arrangement& arr, int e, int k,
                                                  const std::vector<int>& h_list,
                                                  uint64_t seed) {
  Poly target = char_poly_arr(arr).absolute;
  std::vector<FlexLimitRow> rows;
  for (size_t idx = 0; idx < h_list.size(); ++idx) {
    int h = h_list[idx];
    Poly psi = k == 0 ? target
                      : char_poly_arr(
                            semiflexible_ext(arr, e, k, h, mix_seed(seed, 77 + idx)).first)
                            .absolute;
    Rat scale = 1;
    for (int i = 0; i < k; ++i) scale *= h;
    Poly q = psi.scale(1 / scale);
    FlexLimitRow row;
    row.h = h;
    int deg = std::max(q.degree(), target.degree());
    for (int j = 0; j <= deg; ++j) {
      Rat dcoef = q.coeff(j) - target.coeff(j);
      row.deviation.push_back(dcoef < 0 ? Rat(-dcoef) : dcoef);
    }
    Rat lead_l = k == 0 ? Rat(1) : psi.coeff(psi.degree());
    row.leading_match = lead_l == target.coeff(target.degree());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace whitney
