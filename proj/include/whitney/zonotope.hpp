#pragma once

#include <cmath>
#include <vector>

#include "whitney/matroid.hpp"
#include "whitney/poly.hpp"

namespace whitney {

// Volume of the unit m-ball.
inline double log_kappa(int m) {
  return 0.5 * m * std::log(M_PI) - std::lgamma(0.5 * m + 1.0);
}
inline double kappa(int m) {
  if (m < 0) throw std::invalid_argument("kappa needs m >= 0");
  return std::exp(log_kappa(m));
}

// Zonotope sum_i [-z_i, z_i]. Generators may repeat or be parallel.
template <class S>
struct ZonotopeT {
  int ambient = 0;
  std::vector<std::vector<S>> generators;

  int size() const { return static_cast<int>(generators.size()); }
};
using Zonotope = ZonotopeT<Rat>;
using ZonotopeF = ZonotopeT<double>;

inline ZonotopeF to_float(const Zonotope& z) {
  ZonotopeF f;
  f.ambient = z.ambient;
  for (const auto& g : z.generators) {
    std::vector<double> v(g.size());
    for (size_t i = 0; i < g.size(); ++i) v[i] = to_double(g[i]);
    f.generators.push_back(std::move(v));
  }
  return f;
}

// Unit cube [0,1]^d up to translation: generators e_i / 2.
inline Zonotope cube_zonotope(int d) {
  Zonotope z;
  z.ambient = d;
  for (int i = 0; i < d; ++i) {
    std::vector<Rat> g(static_cast<size_t>(d));
    g[static_cast<size_t>(i)] = Rat(1, 2);
    z.generators.push_back(std::move(g));
  }
  return z;
}

// Intrinsic volumes nu[k], plus the exact values when every contributing
// square root is rational. grade is the ambient grading used by the
// lambda-polynomial form (coefficient of L^j is nu[grade - j]).
struct WillsPoly {
  int grade = 0;
  std::vector<double> nu;
  std::vector<Rat> nu_exact;
  bool exact = false;
};

// Exact lambda form; only available on the exact path.
inline Poly wills_lambda_poly(const WillsPoly& w) {
  if (!w.exact) throw std::invalid_argument("wills_lambda_poly needs exact values");
  std::vector<Rat> c(static_cast<size_t>(w.grade) + 1);
  for (size_t k = 0; k < w.nu_exact.size(); ++k) {
    int power = w.grade - static_cast<int>(k);
    if (power < 0) {
      if (w.nu_exact[k] != 0)
        throw std::invalid_argument("grade too small for nonzero coefficient");
      continue;
    }
    c[static_cast<size_t>(power)] = w.nu_exact[k];
  }
  return Poly(std::move(c));
}

inline std::vector<double> wills_lambda_coeffs(const WillsPoly& w) {
  std::vector<double> c(static_cast<size_t>(w.grade) + 1, 0.0);
  for (size_t k = 0; k < w.nu.size(); ++k) {
    int power = w.grade - static_cast<int>(k);
    if (power >= 0) c[static_cast<size_t>(power)] = w.nu[k];
  }
  return c;
}

enum class VolumeMethod { subset, belt };

namespace detail {

inline double float_det(std::vector<std::vector<double>> a) {
  int n = static_cast<int>(a.size());
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
    if (a[p][k] == 0.0) return 0.0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Accumulates sqrt(det Gram) of the doubled generators for one index subset.
struct ExactAcc {
  Rat exact{0};
  BigFloat approx{0};
  bool all_exact = true;

  void add_sqrt(const Rat& det) {
    Rat root;
    if (rat_sqrt_exact(det, root)) {
      exact += root;
    } else {
      all_exact = false;
      approx += bigfloat_sqrt(det);
    }
  }
  double value() const { return (to_bigfloat(exact) + approx).convert_to<double>(); }
};

inline Rat subset_gram_det(const Zonotope& z, uint64_t mask) {
  std::vector<std::vector<Rat>> vecs;
  for (int i = 0; i < z.size(); ++i)
    if ((mask >> i) & 1) {
      std::vector<Rat> v = z.generators[static_cast<size_t>(i)];
      for (auto& x : v) x *= 2;  // full segment vector
      vecs.push_back(std::move(v));
    }
  return gram_det(vecs);
}

inline double subset_gram_det(const ZonotopeF& z, uint64_t mask) {
  std::vector<const std::vector<double>*> vecs;
  for (int i = 0; i < z.size(); ++i)
    if ((mask >> i) & 1) vecs.push_back(&z.generators[static_cast<size_t>(i)]);
  int k = static_cast<int>(vecs.size());
  std::vector<std::vector<double>> g(static_cast<size_t>(k),
                                     std::vector<double>(static_cast<size_t>(k)));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      double s = 0;
      for (size_t t = 0; t < vecs[static_cast<size_t>(i)]->size(); ++t)
        s += 4.0 * (*vecs[static_cast<size_t>(i)])[t] * (*vecs[static_cast<size_t>(j)])[t];
      g[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
      g[static_cast<size_t>(j)][static_cast<size_t>(i)] = s;
    }
  return float_det(std::move(g));
}

// Rank of a set of float generators, by elimination with a relative threshold.
inline int float_rank(const ZonotopeF& z, uint64_t mask, double tol = 1e-9) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < z.size(); ++i)
    if ((mask >> i) & 1) {
      const auto& g = z.generators[static_cast<size_t>(i)];
      double n2 = 0;
      for (double v : g) n2 += v * v;
      if (n2 == 0) continue;
      std::vector<double> r(g);
      double inv = 1.0 / std::sqrt(n2);
      for (double& v : r) v *= inv;
      rows.push_back(std::move(r));
    }
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int p = -1;
    double best = tol;
    for (size_t i = static_cast<size_t>(rank); i < rows.size(); ++i)
      if (std::fabs(rows[i][col]) > best) {
        best = std::fabs(rows[i][col]);
        p = static_cast<int>(i);
      }
    if (p < 0) continue;
    std::swap(rows[static_cast<size_t>(p)], rows[static_cast<size_t>(rank)]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == rank) continue;
      double f = rows[i][col] / rows[static_cast<size_t>(rank)][col];
      if (f == 0) continue;
      for (size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[static_cast<size_t>(rank)][j];
    }
    ++rank;
  }
  return rank;
}

template <class Zono, class DetFn>
void enumerate_k_subsets(const Zono& z, uint64_t allowed, int k, DetFn&& fn) {
  // plain recursive enumeration of k-subsets of the allowed index set
  std::vector<int> idx;
  for (int i = 0; i < z.size(); ++i)
    if ((allowed >> i) & 1) idx.push_back(i);
  std::vector<int> pick;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(pick.size()) == k) {
      uint64_t m = 0;
      for (int i : pick) m |= uint64_t{1} << i;
      fn(m);
      return;
    }
    for (size_t i = start; i < idx.size(); ++i) {
      if (idx.size() - i < static_cast<size_t>(k) - pick.size()) break;
      pick.push_back(idx[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Exact intrinsic volumes of a rational zonotope. Both methods compute
// nu_k = sum over independent k-subsets S of vol_k of the parallelotope
// spanned by the doubled generators; the belt method groups the subsets by
// the rank-k flat they span and sums a sub-zonotope volume per flat.
inline WillsPoly zonotope_intrinsic_volumes(const Zonotope& z,
                                            VolumeMethod method = VolumeMethod::subset) {
  if (z.size() > 25) throw resource_limit_error("too many generators for subset enumeration");
  int maxk = std::min(z.ambient, z.size());
  std::vector<detail::ExactAcc> acc(static_cast<size_t>(maxk) + 1);
  acc[0].exact = 1;

  if (method == VolumeMethod::subset) {
    for (int k = 1; k <= maxk; ++k)
      detail::enumerate_k_subsets(z, z.size() == 64 ? ~uint64_t{0} : (uint64_t{1} << z.size()) - 1, k,
                                  [&](uint64_t m) {
                                    Rat det = detail::subset_gram_det(z, m);
                                    if (det != 0) acc[static_cast<size_t>(k)].add_sqrt(det);
                                  });
  } else {
    // Flats of the matroid of generator directions; each rank-k flat
    // contributes the k-volume of the zonotope of its generators.
    RatMat cols(z.ambient, z.size());
    for (int j = 0; j < z.size(); ++j)
      for (int i = 0; i < z.ambient; ++i)
        cols.at(i, j) = z.generators[static_cast<size_t>(j)][static_cast<size_t>(i)];
    Matroid m = Matroid::from_matrix(cols);
    FlatLattice lat = flats_and_mobius(m);
    for (size_t f = 0; f < lat.flats.size(); ++f) {
      int k = lat.rank[f];
      if (k == 0 || k > maxk) continue;
      detail::enumerate_k_subsets(z, lat.flats[f], k, [&](uint64_t sub) {
        Rat det = detail::subset_gram_det(z, sub);
        if (det != 0) acc[static_cast<size_t>(k)].add_sqrt(det);
      });
    }
  }

  WillsPoly w;
  w.grade = z.ambient;
  w.nu.resize(static_cast<size_t>(maxk) + 1);
  w.nu_exact.resize(static_cast<size_t>(maxk) + 1);
  w.exact = true;
  for (int k = 0; k <= maxk; ++k) {
    w.nu[static_cast<size_t>(k)] = acc[static_cast<size_t>(k)].value();
    w.nu_exact[static_cast<size_t>(k)] = acc[static_cast<size_t>(k)].exact;
    if (!acc[static_cast<size_t>(k)].all_exact) w.exact = false;
  }
  if (!w.exact) w.nu_exact.clear();
  return w;
}

inline WillsPoly zonotope_intrinsic_volumes(const ZonotopeF& z,
                                            VolumeMethod method = VolumeMethod::subset) {
  if (z.size() > 25) throw resource_limit_error("too many generators for subset enumeration");
  int maxk = std::min(z.ambient, z.size());
  WillsPoly w;
  w.grade = z.ambient;
  w.nu.assign(static_cast<size_t>(maxk) + 1, 0.0);
  w.nu[0] = 1.0;
  uint64_t full = z.size() == 64 ? ~uint64_t{0} : (uint64_t{1} << z.size()) - 1;
  if (method == VolumeMethod::subset) {
    for (int k = 1; k <= maxk; ++k)
      detail::enumerate_k_subsets(z, full, k, [&](uint64_t m) {
        double det = detail::subset_gram_det(z, m);
        if (det > 0) w.nu[static_cast<size_t>(k)] += std::sqrt(det);
      });
  } else {
    // group subsets by the flat they span: enumerate flats as closures of
    // independent subsets, then sum per flat (float ranks use a tolerance)
    int full_rank = detail::float_rank(z, full);
    std::vector<uint64_t> flats;
    std::map<uint64_t, bool> seen;
    auto closure = [&](uint64_t s) {
      int r = detail::float_rank(z, s);
      uint64_t cl = s;
      for (int e = 0; e < z.size(); ++e)
        if (!((s >> e) & 1) && detail::float_rank(z, s | (uint64_t{1} << e)) == r)
          cl |= uint64_t{1} << e;
      return cl;
    };
    std::vector<uint64_t> queue{closure(0)};
    seen[queue[0]] = true;
    while (!queue.empty()) {
      uint64_t f = queue.back();
      queue.pop_back();
      flats.push_back(f);
      for (int e = 0; e < z.size(); ++e) {
        if ((f >> e) & 1) continue;
        uint64_t g = closure(f | (uint64_t{1} << e));
        if (!seen.count(g)) {
          seen[g] = true;
          queue.push_back(g);
        }
      }
    }
    (void)full_rank;
    for (uint64_t f : flats) {
      int k = detail::float_rank(z, f);
      if (k == 0 || k > maxk) continue;
      detail::enumerate_k_subsets(z, f, k, [&](uint64_t sub) {
        double det = detail::subset_gram_det(z, sub);
        if (det > 0) w.nu[static_cast<size_t>(k)] += std::sqrt(det);
      });
    }
  }
  return w;
}

// Deletion drops generator i; contraction projects the rest onto the
// orthogonal complement of z_i (coordinates stay in the parent ambient, the
// grading of the contraction drops by one).
template <class S>
inline std::pair<ZonotopeT<S>, ZonotopeT<S>> zono_delete_contract(const ZonotopeT<S>& z,
                                                                  int index) {
  if (index < 0 || index >= z.size()) throw std::invalid_argument("generator index");
  const auto& zi = z.generators[static_cast<size_t>(index)];
  S norm2{0};
  for (const auto& v : zi) norm2 += v * v;
  ZonotopeT<S> del;
  del.ambient = z.ambient;
  for (int j = 0; j < z.size(); ++j)
    if (j != index) del.generators.push_back(z.generators[static_cast<size_t>(j)]);
  if (norm2 == S{0}) throw std::invalid_argument("cannot contract a zero generator");
  ZonotopeT<S> con;
  con.ambient = z.ambient;
  for (int j = 0; j < z.size(); ++j) {
    if (j == index) continue;
    const auto& g = z.generators[static_cast<size_t>(j)];
    S dot{0};
    for (size_t t = 0; t < g.size(); ++t) dot += g[t] * zi[t];
    std::vector<S> proj(g);
    S f = dot / norm2;
    for (size_t t = 0; t < proj.size(); ++t) proj[t] -= f * zi[t];
    con.generators.push_back(std::move(proj));
  }
  return {del, con};
}

// Full segment length of generator i: ||2 z_i||. Exact only when the squared
// norm is a rational square.
inline bool segment_length_exact(const Zonotope& z, int i, Rat& out) {
  Rat n2{0};
  for (const auto& v : z.generators[static_cast<size_t>(i)]) n2 += v * v;
  Rat root;
  if (!rat_sqrt_exact(n2, root)) return false;
  out = 2 * root;
  return true;
}

}  // namespace whitney
