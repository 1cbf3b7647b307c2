#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "whitney/linalg.hpp"
#include "whitney/poly.hpp"

namespace whitney {

inline int popcount64(uint64_t m) { return std::popcount(m); }

// A matroid given by its exact rank oracle on subsets (bitmask over the
// ground set). Ranks are tabulated up front for n <= 12 so lookups are O(1);
// larger ground sets stay oracle-backed (pure function, safe to share).
class Matroid {
 public:
  static constexpr int kTableLimit = 12;

  static Matroid from_oracle(int n, std::function<int(uint64_t)> fn,
                             std::vector<std::string> labels = {}) {
    if (n < 0 || n > 63) throw std::invalid_argument("ground set size out of range");
    Matroid m;
    m.n_ = n;
    m.labels_ = normalize_labels(n, std::move(labels));
    if (n <= kTableLimit) {
      m.table_.resize(size_t{1} << n);
      for (uint64_t s = 0; s < (uint64_t{1} << n); ++s)
        m.table_[s] = static_cast<int8_t>(fn(s));
    } else {
      m.fn_ = std::move(fn);
    }
    m.full_rank_ = m.rank(m.full_mask());
    return m;
  }

  static Matroid from_rank_table(int n, std::vector<int> table,
                                 std::vector<std::string> labels = {}) {
    if (table.size() != (size_t{1} << n))
      throw std::invalid_argument("rank table has wrong size");
    return from_oracle(n, [t = std::move(table)](uint64_t s) { return t[s]; },
                       std::move(labels));
  }

  // Rank of a column subset by fraction-free elimination, exactly.
  static Matroid from_matrix(const RatMat& cols,
                             std::vector<std::string> labels = {}) {
    int n = cols.cols();
    int d = cols.rows();
    // Column scaling does not change ranks; clear denominators up front.
    auto icols = std::make_shared<std::vector<std::vector<Int>>>(n, std::vector<Int>(d));
    for (int j = 0; j < n; ++j) {
      Int l = 1;
      for (int i = 0; i < d; ++i) l = lcm(l, denominator(cols.at(i, j)));
      for (int i = 0; i < d; ++i)
        (*icols)[j][i] = numerator(cols.at(i, j)) * (l / denominator(cols.at(i, j)));
    }
    auto fn = [icols, n](uint64_t s) {
      std::vector<std::vector<Int>> rows;
      for (int j = 0; j < n; ++j)
        if ((s >> j) & 1) rows.push_back((*icols)[j]);
      return rank_int_bareiss(std::move(rows));
    };
    return from_oracle(n, std::move(fn), std::move(labels));
  }

  int size() const { return n_; }
  uint64_t full_mask() const { return n_ == 64 ? ~uint64_t{0} : (uint64_t{1} << n_) - 1; }
  int rank_full() const { return full_rank_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int rank(uint64_t mask) const {
    if (!table_.empty()) return table_[mask];
    return fn_(mask);
  }

  bool is_loop(int e) const { return rank(uint64_t{1} << e) == 0; }
  bool is_coloop(int e) const {
    return rank(full_mask() & ~(uint64_t{1} << e)) == full_rank_ - 1;
  }

  // Closure: all elements whose addition does not raise the rank.
  uint64_t closure(uint64_t mask) const {
    int r = rank(mask);
    uint64_t cl = mask;
    for (int e = 0; e < n_; ++e) {
      uint64_t bit = uint64_t{1} << e;
      if ((cl & bit) == 0 && rank(mask | bit) == r) cl |= bit;
    }
    return cl;
  }

  // Deletion and contraction of one element. Indices above e shift down.
  std::pair<Matroid, Matroid> delete_contract(int e) const {
    if (e < 0 || e >= n_) throw std::invalid_argument("element out of range");
    Matroid parent = *this;
    uint64_t ebit = uint64_t{1} << e;
    auto embed = [e](uint64_t s) {
      uint64_t low = s & ((uint64_t{1} << e) - 1);
      uint64_t high = (s >> e) << (e + 1);
      return low | high;
    };
    std::vector<std::string> labels;
    for (int i = 0; i < n_; ++i)
      if (i != e) labels.push_back(labels_[static_cast<size_t>(i)]);
    int erank = rank(ebit);
    Matroid del = from_oracle(
        n_ - 1, [parent, embed](uint64_t s) { return parent.rank(embed(s)); }, labels);
    Matroid con = from_oracle(
        n_ - 1,
        [parent, embed, ebit, erank](uint64_t s) {
          return parent.rank(embed(s) | ebit) - erank;
        },
        labels);
    return {del, con};
  }

  // Full axiom sweep (normalization, unit increase, monotonicity, local
  // submodularity) over all subsets; only sensible for n <= 12.
  bool check_axioms() const {
    if (n_ > kTableLimit) throw std::invalid_argument("axiom sweep needs n <= 12");
    if (rank(0) != 0) return false;
    for (uint64_t s = 0; s <= full_mask(); ++s) {
      int rs = rank(s);
      if (rs < 0 || rs > popcount64(s)) return false;
      for (int e = 0; e < n_; ++e) {
        uint64_t eb = uint64_t{1} << e;
        if (s & eb) continue;
        int rse = rank(s | eb);
        if (rse < rs || rse > rs + 1) return false;
        for (int f = e + 1; f < n_; ++f) {
          uint64_t fb = uint64_t{1} << f;
          if (s & fb) continue;
          if (rank(s | eb) + rank(s | fb) < rank(s | eb | fb) + rs) return false;
        }
      }
      if (s == full_mask()) break;
    }
    return true;
  }

 private:
  static std::vector<std::string> normalize_labels(int n, std::vector<std::string> labels) {
    if (labels.empty()) {
      labels.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
    }
    if (static_cast<int>(labels.size()) != n)
      throw std::invalid_argument("label count mismatch");
    return labels;
  }

  int n_ = 0;
  int full_rank_ = 0;
  std::vector<std::string> labels_;
  std::vector<int8_t> table_;
  std::function<int(uint64_t)> fn_;
};

// Lattice of flats with Mobius values mu(0^, x).
struct FlatLattice {
  std::vector<uint64_t> flats;  // sorted by (rank, mask); flats[0] = closure of empty set
  std::vector<int> rank;
  std::vector<Int> mobius;
  std::vector<std::vector<int>> covers;  // covers[i] = indices covering flat i
};

inline size_t default_flat_limit() { return 200000; }

inline FlatLattice flats_and_mobius(const Matroid& m, int max_ground = 20) {
  if (m.size() > max_ground)
    throw resource_limit_error("ground set too large for flat enumeration");
  // Breadth-first closure starting from cl(empty).
  std::map<uint64_t, int> seen;
  std::vector<uint64_t> flats;
  std::vector<uint64_t> queue{m.closure(0)};
  seen[queue[0]] = 0;
  flats.push_back(queue[0]);
  while (!queue.empty()) {
    uint64_t f = queue.back();
    queue.pop_back();
    for (int e = 0; e < m.size(); ++e) {
      uint64_t bit = uint64_t{1} << e;
      if (f & bit) continue;
      uint64_t g = m.closure(f | bit);
      if (seen.emplace(g, 0).second) {
        flats.push_back(g);
        queue.push_back(g);
        if (flats.size() > default_flat_limit())
          throw resource_limit_error("flat count exceeds limit");
      }
    }
  }
  FlatLattice lat;
  lat.flats = std::move(flats);
  std::sort(lat.flats.begin(), lat.flats.end(), [&](uint64_t a, uint64_t b) {
    int ra = m.rank(a), rb = m.rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  size_t nf = lat.flats.size();
  lat.rank.resize(nf);
  lat.mobius.assign(nf, Int(0));
  lat.covers.resize(nf);
  for (size_t i = 0; i < nf; ++i) lat.rank[i] = m.rank(lat.flats[i]);
  // mu by the standard recursion; flats sorted by rank, so all y < x precede x.
  for (size_t i = 0; i < nf; ++i) {
    if (i == 0) {
      lat.mobius[0] = 1;
      continue;
    }
    Int acc = 0;
    for (size_t j = 0; j < i; ++j) {
      uint64_t fj = lat.flats[j];
      if (fj != lat.flats[i] && (fj & ~lat.flats[i]) == 0) acc += lat.mobius[j];
    }
    lat.mobius[i] = -acc;
  }
  for (size_t i = 0; i < nf; ++i)
    for (size_t j = 0; j < nf; ++j)
      if (lat.rank[j] == lat.rank[i] + 1 && (lat.flats[i] & ~lat.flats[j]) == 0)
        lat.covers[i].push_back(static_cast<int>(j));
  return lat;
}

struct CharPolyResult {
  Poly chi;                 // sum_x mu(x) L^{r - rk(x)}
  Poly psi;                 // coefficient-wise absolute value of chi
  std::vector<Rat> gamma;   // gamma[i] = |coeff of L^{r-i}|, length r+1
};

inline CharPolyResult char_poly(const Matroid& m) {
  FlatLattice lat = flats_and_mobius(m);
  int r = m.rank_full();
  std::vector<Rat> c(static_cast<size_t>(r) + 1);
  for (size_t i = 0; i < lat.flats.size(); ++i)
    c[static_cast<size_t>(r - lat.rank[i])] += Rat(lat.mobius[i]);
  CharPolyResult res;
  res.chi = Poly(std::move(c));
  res.psi = res.chi.abs();
  res.gamma.resize(static_cast<size_t>(r) + 1);
  for (int i = 0; i <= r; ++i) {
    Rat v = res.chi.coeff(r - i);
    res.gamma[static_cast<size_t>(i)] = v < 0 ? Rat(-v) : v;
  }
  return res;
}

struct IngletonResult {
  bool satisfied = true;
  std::array<uint64_t, 4> witness{0, 0, 0, 0};
};

// Evaluates Ingleton's inequality over quadruples of subsets: exhaustively in
// lexicographic order for n <= 8, by seeded uniform sampling above that.
// Returns the first violating quadruple found.
inline IngletonResult ingleton_check(const Matroid& m, uint64_t seed = 1,
                                     uint64_t sample_count = 2000000) {
  int n = m.size();
  if (n > 16) throw resource_limit_error("ingleton check needs n <= 16");
  size_t full = size_t{1} << n;
  std::vector<int8_t> rk(full);
  for (uint64_t s = 0; s < full; ++s) rk[s] = static_cast<int8_t>(m.rank(s));

  auto violated = [&](uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    int lhs = rk[a | b] + rk[a | c] + rk[a | d] + rk[b | c] + rk[b | d];
    int rhs = rk[a] + rk[b] + rk[c | d] + rk[a | b | c] + rk[a | b | d];
    return lhs < rhs;
  };

  if (n <= 8) {
    for (uint64_t a = 0; a < full; ++a)
      for (uint64_t b = 0; b < full; ++b)
        for (uint64_t c = 0; c < full; ++c)
          for (uint64_t d = 0; d < full; ++d)
            if (violated(a, b, c, d)) return {false, {a, b, c, d}};
    return {};
  }
  uint64_t state = seed;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  uint64_t mask = full - 1;
  for (uint64_t i = 0; i < sample_count; ++i) {
    uint64_t a = next() & mask, b = next() & mask, c = next() & mask, d = next() & mask;
    if (violated(a, b, c, d)) return {false, {a, b, c, d}};
  }
  return {};
}

// --- named matroids ---------------------------------------------------------

inline Matroid uniform_matroid(int r, int n) {
  return Matroid::from_oracle(n, [r](uint64_t s) { return std::min(popcount64(s), r); });
}

inline Matroid boolean_matroid(int n) {
  return Matroid::from_oracle(n, [](uint64_t s) { return popcount64(s); });
}

// Rank 4 on 8 elements; the five special 4-element circuits make it violate
// Ingleton's inequality, so it is not representable.
inline Matroid vamos_matroid() {
  static const std::array<uint64_t, 5> planes = {
      0b00001111ull, 0b00110011ull, 0b11000011ull, 0b00111100ull, 0b11001100ull};
  auto fn = [](uint64_t s) {
    int p = popcount64(s);
    if (p <= 3) return p;
    if (p == 4) {
      for (uint64_t pl : planes)
        if (s == pl) return 3;
      return 4;
    }
    return 4;
  };
  return Matroid::from_oracle(8, fn);
}

// Rank table from the seven 3-point lines; defined without a matrix since it
// is not representable over the rationals.
inline Matroid fano_matroid() {
  static const std::array<uint64_t, 7> lines = {
      (1u << 0) | (1u << 1) | (1u << 2), (1u << 0) | (1u << 3) | (1u << 4),
      (1u << 0) | (1u << 5) | (1u << 6), (1u << 1) | (1u << 3) | (1u << 5),
      (1u << 1) | (1u << 4) | (1u << 6), (1u << 2) | (1u << 3) | (1u << 6),
      (1u << 2) | (1u << 4) | (1u << 5)};
  auto fn = [](uint64_t s) {
    int p = popcount64(s);
    if (p <= 2) return p;
    for (uint64_t l : lines)
      if ((s & ~l) == 0) return 2;
    return 3;
  };
  return Matroid::from_oracle(7, fn);
}

// Cycle matroid of the complete graph K_m via the edge-vector realization.
inline Matroid graphic_complete_matroid(int m) {
  int n = m * (m - 1) / 2;
  RatMat cols(m, n);
  std::vector<std::string> labels;
  int col = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      cols.at(i, col) = 1;
      cols.at(j, col) = -1;
      labels.push_back(std::to_string(i + 1) + std::to_string(j + 1));
      ++col;
    }
  return Matroid::from_matrix(cols, labels);
}

// Parses uniform(r,n) | boolean(n) | vamos | fano | graphic-complete(m).
inline Matroid matroid_catalog(const std::string& name) {
  auto args_of = [&](size_t open) {
    if (name.back() != ')') throw std::invalid_argument("unknown matroid: " + name);
    std::vector<int> args;
    std::string body = name.substr(open + 1, name.size() - open - 2);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
      args.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return args;
  };
  if (name == "vamos") return vamos_matroid();
  if (name == "fano") return fano_matroid();
  size_t open = name.find('(');
  if (open != std::string::npos) {
    std::string head = name.substr(0, open);
    auto args = args_of(open);
    if (head == "uniform" && args.size() == 2) return uniform_matroid(args[0], args[1]);
    if (head == "boolean" && args.size() == 1) return boolean_matroid(args[0]);
    if (head == "graphic-complete" && args.size() == 1)
      return graphic_complete_matroid(args[0]);
  }
  throw std::invalid_argument("unknown matroid: " + name);
}

}  // namespace whitney
