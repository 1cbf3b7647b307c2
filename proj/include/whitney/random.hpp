#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

// Self-contained deterministic RNG (splitmix64 stream) so seeded runs are
// byte-identical regardless of standard-library internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // integer in [lo, hi], inclusive
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }

  // standard normal via Box-Muller, one spare cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0;
    while (u1 == 0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0;
};

// Derives independent substreams from (seed, indices).
inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c = 0x1234567887654321ull) {
  auto mix = [](uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(mix(a + 0x9e3779b97f4a7c15ull * b) ^ mix(c + 0x6a09e667f3bcc909ull));
}

inline std::vector<double> gaussian_vector(Rng& rng, int d) {
  std::vector<double> v(static_cast<size_t>(d));
  for (auto& x : v) x = rng.normal();
  return v;
}

inline double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return s;
}

inline void normalize(std::vector<double>& v) {
  double n = std::sqrt(norm2(v));
  for (double& x : v) x /= n;
}

inline std::vector<double> unit_vector(Rng& rng, int d) {
  std::vector<double> v = gaussian_vector(rng, d);
  normalize(v);
  return v;
}

// n_vectors points drawn uniformly from the unit sphere in R^d.
inline std::vector<std::vector<double>> sample_sphere(int n_vectors, int d,
                                                      uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_sphere needs d >= 1");
  Rng rng(mix_seed(seed, 0x5f3759df));
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<size_t>(n_vectors));
  for (int i = 0; i < n_vectors; ++i) out.push_back(unit_vector(rng, d));
  return out;
}

// Haar-uniform r-dimensional subspace of R^d, returned as r orthonormal rows:
// Gram-Schmidt on the columns of a d x r Gaussian matrix (the triangular
// factor has positive diagonal, which pins the distribution).
inline std::vector<std::vector<double>> sample_grassmann(int r, int d, uint64_t seed) {
  if (r < 1 || r > d) throw std::invalid_argument("sample_grassmann needs 1 <= r <= d");
  Rng rng(mix_seed(seed, 0x47726173));
  std::vector<std::vector<double>> q;
  for (int j = 0; j < r; ++j) {
    std::vector<double> v = gaussian_vector(rng, d);
    for (const auto& prev : q) {
      double dot = 0;
      for (int t = 0; t < d; ++t) dot += prev[static_cast<size_t>(t)] * v[static_cast<size_t>(t)];
      for (int t = 0; t < d; ++t) v[static_cast<size_t>(t)] -= dot * prev[static_cast<size_t>(t)];
    }
    normalize(v);
    q.push_back(std::move(v));
  }
  return q;
}

// Jacobi eigenvalues of a small symmetric matrix.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  int n = static_cast<int>(a.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = a[i][i];
  return ev;
}

// Projection-operator-norm metric between equal-dimensional subspaces:
// sin of the largest principal angle.
inline double grassmann_distance(const std::vector<std::vector<double>>& u,
                                 const std::vector<std::vector<double>>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("subspace dimension mismatch");
  int r = static_cast<int>(u.size());
  if (r == 0) return 0;
  int d = static_cast<int>(u[0].size());
  // m = U V^T; smallest singular value gives cos of the largest angle
  std::vector<std::vector<double>> m(static_cast<size_t>(r),
                                     std::vector<double>(static_cast<size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      double s = 0;
      for (int t = 0; t < d; ++t) s += u[static_cast<size_t>(i)][static_cast<size_t>(t)] *
                                       v[static_cast<size_t>(j)][static_cast<size_t>(t)];
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
    }
  std::vector<std::vector<double>> mtm(static_cast<size_t>(r),
                                       std::vector<double>(static_cast<size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      double s = 0;
      for (int k = 0; k < r; ++k) s += m[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                                       m[static_cast<size_t>(k)][static_cast<size_t>(j)];
      mtm[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
    }
  std::vector<double> ev = symmetric_eigenvalues(std::move(mtm));
  double lmin = 1.0;
  for (double e : ev) lmin = std::min(lmin, e);
  lmin = std::max(0.0, std::min(1.0, lmin));
  return std::sqrt(1.0 - lmin);
}

}  // namespace whitney
