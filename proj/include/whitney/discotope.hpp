#pragma once

#include <thread>
#include <vector>

#include "whitney/arrangement.hpp"
#include "whitney/random.hpp"
#include "whitney/zonotope.hpp"

namespace whitney {

// A ball living in a subspace: orthonormal rows spanning it, and a radius.
struct Disk {
  std::vector<std::vector<double>> basis;
  double radius = 0;
  int dim() const { return static_cast<int>(basis.size()); }
};

// Minkowski sum of disks. For an arrangement, one unit-volume ball per
// element, placed in the orthogonal complement of the element.
struct Discotope {
  int ambient = 0;
  std::vector<Disk> disks;
};

// Radius that makes the m-ball have volume 1.
inline double unit_volume_radius(int m) { return std::exp(-log_kappa(m) / m); }

inline Discotope discotope_of(const Arrangement& arr) {
  if (!arr.is_central())
    throw std::invalid_argument("discotope construction needs a central arrangement");
  Discotope d;
  d.ambient = arr.ambient;
  for (const auto& el : arr.elements) {
    // H^perp is spanned by the constraint rows; orthonormalize in doubles.
    RatMat c = el.flat.constraint_matrix();
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < c.rows(); ++i) {
      std::vector<double> v(static_cast<size_t>(c.cols()));
      for (int j = 0; j < c.cols(); ++j) v[static_cast<size_t>(j)] = to_double(c.at(i, j));
      for (const auto& prev : rows) {
        double dot = 0;
        for (size_t t = 0; t < v.size(); ++t) dot += prev[t] * v[t];
        for (size_t t = 0; t < v.size(); ++t) v[t] -= dot * prev[t];
      }
      normalize(v);
      rows.push_back(std::move(v));
    }
    int m = static_cast<int>(rows.size());
    d.disks.push_back(Disk{std::move(rows), unit_volume_radius(m)});
  }
  return d;
}

inline Discotope ball_discotope(int d, double radius) {
  Discotope disco;
  disco.ambient = d;
  std::vector<std::vector<double>> id(static_cast<size_t>(d),
                                      std::vector<double>(static_cast<size_t>(d), 0.0));
  for (int i = 0; i < d; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
  disco.disks.push_back(Disk{std::move(id), radius});
  return disco;
}

namespace detail {
// h(u) = sum_i r_i ||P_i u||; positively homogeneous, no unit check.
inline double support_any(const Discotope& d, const std::vector<double>& u) {
  double h = 0;
  for (const auto& disk : d.disks) {
    double s = 0;
    for (const auto& row : disk.basis) {
      double dot = 0;
      for (size_t t = 0; t < row.size(); ++t) dot += row[t] * u[t];
      s += dot * dot;
    }
    h += disk.radius * std::sqrt(s);
  }
  return h;
}
}  // namespace detail

inline double support_function(const Discotope& d, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != d.ambient)
    throw std::invalid_argument("support_function: dimension mismatch");
  if (std::fabs(std::sqrt(norm2(u)) - 1.0) > 1e-12)
    throw std::invalid_argument("support_function expects a unit direction");
  return detail::support_any(d, u);
}

struct DistanceOptions {
  int starts = 20;
  int max_iters = 300;
  double tol = 1e-10;
  uint64_t seed = 12345;
};

struct DistanceResult {
  double dist = 0;
  bool converged = true;
};

// dist(x, D) = max_{||u|| <= 1} <x,u> - h(u), by projected supergradient
// ascent with backtracking. The objective is concave, so multi-start only
// guards numerical stalls.
inline DistanceResult distance_to_body(const Discotope& d, const std::vector<double>& x,
                                       DistanceOptions opts = {}) {
  int n = d.ambient;
  auto f = [&](const std::vector<double>& u) {
    double dot = 0;
    for (int t = 0; t < n; ++t) dot += x[static_cast<size_t>(t)] * u[static_cast<size_t>(t)];
    return dot - detail::support_any(d, u);
  };
  auto supergrad = [&](const std::vector<double>& u) {
    std::vector<double> g(x);
    for (const auto& disk : d.disks) {
      std::vector<double> proj_coords(disk.basis.size());
      double s = 0;
      for (size_t i = 0; i < disk.basis.size(); ++i) {
        double dot = 0;
        for (int t = 0; t < n; ++t)
          dot += disk.basis[i][static_cast<size_t>(t)] * u[static_cast<size_t>(t)];
        proj_coords[i] = dot;
        s += dot * dot;
      }
      s = std::sqrt(s);
      if (s < 1e-300) continue;  // 0 is a valid supergradient term here
      for (size_t i = 0; i < disk.basis.size(); ++i) {
        double w = disk.radius * proj_coords[i] / s;
        for (int t = 0; t < n; ++t)
          g[static_cast<size_t>(t)] -= w * disk.basis[i][static_cast<size_t>(t)];
      }
    }
    return g;
  };
  auto project_ball = [&](std::vector<double>& u) {
    double nn = std::sqrt(norm2(u));
    if (nn > 1.0)
      for (double& v : u) v /= nn;
  };

  Rng rng(mix_seed(opts.seed, 0xd157));
  double best = 0;  // u = 0 gives f = 0, always feasible
  bool best_converged = true;
  for (int s = 0; s < opts.starts; ++s) {
    std::vector<double> u;
    if (s == 0 && norm2(x) > 0) {
      u = x;
      normalize(u);
    } else {
      u = unit_vector(rng, n);
    }
    double fu = f(u);
    bool converged = false;
    double step = 1.0;
    for (int it = 0; it < opts.max_iters; ++it) {
      std::vector<double> g = supergrad(u);
      step = std::min(1.0, step * 4.0);  // warm start from the last good step
      std::vector<double> cand(u);
      double fc = fu;
      while (step > 1e-14) {
        for (int t = 0; t < n; ++t)
          cand[static_cast<size_t>(t)] = u[static_cast<size_t>(t)] + step * g[static_cast<size_t>(t)];
        project_ball(cand);
        fc = f(cand);
        if (fc > fu) break;
        step /= 2;
      }
      if (fc <= fu + opts.tol) {
        if (fc > fu) fu = fc;
        converged = true;
        break;
      }
      u = cand;
      fu = fc;
    }
    if (fu > best) {
      best = fu;
      best_converged = converged;
    }
  }
  return {std::max(0.0, best), best_converged};
}

// Hit-or-miss classification of one point against D + lam B. f(u) is a lower
// bound on the distance; the support point in direction u lies in D and gives
// an upper bound, so most points classify after a handful of iterations.
enum class PointClass { hit, miss, flagged };

inline PointClass classify_point(const Discotope& d, const std::vector<double>& x,
                                 double lam, uint64_t seed) {
  int n = d.ambient;
  auto f = [&](const std::vector<double>& u) {
    double dot = 0;
    for (int t = 0; t < n; ++t) dot += x[static_cast<size_t>(t)] * u[static_cast<size_t>(t)];
    return dot - detail::support_any(d, u);
  };
  // distance from x to the support point of D in direction u
  auto upper_via = [&](const std::vector<double>& u) {
    std::vector<double> y(static_cast<size_t>(n), 0.0);
    for (const auto& disk : d.disks) {
      std::vector<double> coords(disk.basis.size());
      double s = 0;
      for (size_t i = 0; i < disk.basis.size(); ++i) {
        double dot = 0;
        for (int t = 0; t < n; ++t)
          dot += disk.basis[i][static_cast<size_t>(t)] * u[static_cast<size_t>(t)];
        coords[i] = dot;
        s += dot * dot;
      }
      s = std::sqrt(s);
      if (s < 1e-300) continue;
      for (size_t i = 0; i < disk.basis.size(); ++i) {
        double w = disk.radius * coords[i] / s;
        for (int t = 0; t < n; ++t) y[static_cast<size_t>(t)] += w * disk.basis[i][static_cast<size_t>(t)];
      }
    }
    double dist2 = 0;
    for (int t = 0; t < n; ++t) {
      double dd = x[static_cast<size_t>(t)] - y[static_cast<size_t>(t)];
      dist2 += dd * dd;
    }
    return std::sqrt(dist2);
  };
  auto supergrad = [&](const std::vector<double>& u) {
    std::vector<double> g(x);
    for (const auto& disk : d.disks) {
      std::vector<double> coords(disk.basis.size());
      double s = 0;
      for (size_t i = 0; i < disk.basis.size(); ++i) {
        double dot = 0;
        for (int t = 0; t < n; ++t)
          dot += disk.basis[i][static_cast<size_t>(t)] * u[static_cast<size_t>(t)];
        coords[i] = dot;
        s += dot * dot;
      }
      s = std::sqrt(s);
      if (s < 1e-300) continue;
      for (size_t i = 0; i < disk.basis.size(); ++i) {
        double w = disk.radius * coords[i] / s;
        for (int t = 0; t < n; ++t)
          g[static_cast<size_t>(t)] -= w * disk.basis[i][static_cast<size_t>(t)];
      }
    }
    return g;
  };

  if (norm2(x) == 0) return PointClass::hit;
  std::vector<double> u = x;
  normalize(u);
  double fu = f(u);
  if (fu > lam) return PointClass::miss;
  if (upper_via(u) <= lam) return PointClass::hit;
  Rng rng(mix_seed(seed, 0xc1a55));
  double step = 1.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> g = supergrad(u);
    step = std::min(1.0, step * 4.0);
    std::vector<double> cand(u);
    double fc = fu;
    while (step > 1e-14) {
      for (int t = 0; t < n; ++t)
        cand[static_cast<size_t>(t)] = u[static_cast<size_t>(t)] + step * g[static_cast<size_t>(t)];
      double nn = std::sqrt(norm2(cand));
      if (nn > 1.0)
        for (double& v : cand) v /= nn;
      fc = f(cand);
      if (fc > fu) break;
      step /= 2;
    }
    if (fc > fu) {
      u = cand;
      fu = fc;
    } else {
      // no ascent step improves: the lower bound has converged to the distance
      return fu <= lam ? PointClass::hit : PointClass::miss;
    }
    if (fu > lam) return PointClass::miss;
    if (upper_via(u) <= lam) return PointClass::hit;
  }
  (void)rng;
  return PointClass::flagged;
}

struct McResult {
  int d = 0;
  std::vector<double> lambdas;
  std::vector<double> raw_volume;   // hit-or-miss estimate of vol(D + lambda B)
  std::vector<double> raw_stderr;
  std::vector<double> nu;           // fitted intrinsic volumes
  std::vector<double> nu_stderr;
  long long flagged = 0;            // non-converged distance evaluations
};

// Hit-or-miss estimates of vol(D + lambda B) on a lambda grid, then a
// weighted least-squares fit of the Steiner coefficients nu_i kappa_{d-i}.
// Deterministic for fixed (seed, N, grid): every sample index owns its RNG
// substream and workers merge integer counts.
inline McResult estimate_intrinsic_volumes_mc(const Discotope& d,
                                              const std::vector<double>& grid, long n_samples,
                                              uint64_t seed, int jobs = 1) {
  int dim = d.ambient;
  {
    std::vector<double> distinct;
    for (double l : grid)
      if (std::find(distinct.begin(), distinct.end(), l) == distinct.end())
        distinct.push_back(l);
    if (static_cast<int>(distinct.size()) < dim + 1)
      throw std::invalid_argument("lambda grid needs at least d+1 distinct values");
  }
  double big_r = 0;
  for (int i = 0; i < dim; ++i) {
    std::vector<double> e(static_cast<size_t>(dim), 0.0);
    e[static_cast<size_t>(i)] = 1.0;
    big_r = std::max(big_r, detail::support_any(d, e));
    e[static_cast<size_t>(i)] = -1.0;
    big_r = std::max(big_r, detail::support_any(d, e));
  }

  McResult res;
  res.d = dim;
  res.lambdas = grid;
  if (jobs < 1) jobs = 1;

  for (size_t j = 0; j < grid.size(); ++j) {
    double lam = grid[j];
    double half = big_r + lam;
    std::vector<long long> hits(static_cast<size_t>(jobs), 0);
    std::vector<long long> flagged(static_cast<size_t>(jobs), 0);
    auto worker = [&](int w) {
      long lo = n_samples * w / jobs, hi = n_samples * (w + 1) / jobs;
      for (long i = lo; i < hi; ++i) {
        Rng rng(mix_seed(seed, j * 1000003ull + static_cast<uint64_t>(i), 0xabcdef));
        std::vector<double> x(static_cast<size_t>(dim));
        for (auto& v : x) v = rng.uniform(-half, half);
        PointClass pc =
            classify_point(d, x, lam, mix_seed(seed, 0xd15c0, static_cast<uint64_t>(i)));
        if (pc == PointClass::flagged) ++flagged[static_cast<size_t>(w)];
        else if (pc == PointClass::hit) ++hits[static_cast<size_t>(w)];
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }
    long long hit_total = 0, flag_total = 0;
    for (int w = 0; w < jobs; ++w) {
      hit_total += hits[static_cast<size_t>(w)];
      flag_total += flagged[static_cast<size_t>(w)];
    }
    res.flagged += flag_total;
    long long n_eff = n_samples - flag_total;
    double box = std::pow(2.0 * half, dim);
    double p = n_eff > 0 ? static_cast<double>(hit_total) / static_cast<double>(n_eff) : 0.0;
    res.raw_volume.push_back(box * p);
    // half-count smoothing keeps the stderr positive at p = 0 or 1
    double ps = (static_cast<double>(hit_total) + 0.5) / (static_cast<double>(n_eff) + 1.0);
    res.raw_stderr.push_back(box * std::sqrt(ps * (1.0 - ps) / static_cast<double>(std::max<long long>(n_eff, 1))));
  }

  // Weighted least squares for vol(lam) = sum_i nu_i kappa_{d-i} lam^{d-i}.
  int unknowns = dim + 1;
  std::vector<std::vector<double>> xtx(static_cast<size_t>(unknowns),
                                       std::vector<double>(static_cast<size_t>(unknowns), 0.0));
  std::vector<double> xty(static_cast<size_t>(unknowns), 0.0);
  for (size_t j = 0; j < grid.size(); ++j) {
    double wgt = 1.0 / (res.raw_stderr[j] * res.raw_stderr[j]);
    std::vector<double> row(static_cast<size_t>(unknowns));
    for (int i = 0; i <= dim; ++i)
      row[static_cast<size_t>(i)] = kappa(dim - i) * std::pow(grid[j], dim - i);
    for (int a = 0; a <= dim; ++a) {
      for (int b = 0; b <= dim; ++b)
        xtx[static_cast<size_t>(a)][static_cast<size_t>(b)] +=
            wgt * row[static_cast<size_t>(a)] * row[static_cast<size_t>(b)];
      xty[static_cast<size_t>(a)] += wgt * row[static_cast<size_t>(a)] * res.raw_volume[j];
    }
  }
  // solve xtx * beta = xty and invert for the stderr diagonal
  std::vector<std::vector<double>> aug(static_cast<size_t>(unknowns),
                                       std::vector<double>(static_cast<size_t>(2 * unknowns), 0.0));
  for (int i = 0; i < unknowns; ++i) {
    for (int j2 = 0; j2 < unknowns; ++j2) aug[static_cast<size_t>(i)][static_cast<size_t>(j2)] = xtx[static_cast<size_t>(i)][static_cast<size_t>(j2)];
    aug[static_cast<size_t>(i)][static_cast<size_t>(unknowns + i)] = 1.0;
  }
  for (int col = 0; col < unknowns; ++col) {
    int p = col;
    for (int i = col + 1; i < unknowns; ++i)
      if (std::fabs(aug[static_cast<size_t>(i)][static_cast<size_t>(col)]) >
          std::fabs(aug[static_cast<size_t>(p)][static_cast<size_t>(col)]))
        p = i;
    std::swap(aug[static_cast<size_t>(p)], aug[static_cast<size_t>(col)]);
    double piv = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
    if (piv == 0) throw std::invalid_argument("singular normal equations in the MC fit");
    for (int j2 = 0; j2 < 2 * unknowns; ++j2) aug[static_cast<size_t>(col)][static_cast<size_t>(j2)] /= piv;
    for (int i = 0; i < unknowns; ++i) {
      if (i == col) continue;
      double f = aug[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j2 = 0; j2 < 2 * unknowns; ++j2)
        aug[static_cast<size_t>(i)][static_cast<size_t>(j2)] -= f * aug[static_cast<size_t>(col)][static_cast<size_t>(j2)];
    }
  }
  res.nu.resize(static_cast<size_t>(unknowns));
  res.nu_stderr.resize(static_cast<size_t>(unknowns));
  for (int i = 0; i < unknowns; ++i) {
    double v = 0;
    for (int j2 = 0; j2 < unknowns; ++j2)
      v += aug[static_cast<size_t>(i)][static_cast<size_t>(unknowns + j2)] * xty[static_cast<size_t>(j2)];
    res.nu[static_cast<size_t>(i)] = v;
    res.nu_stderr[static_cast<size_t>(i)] =
        std::sqrt(std::max(0.0, aug[static_cast<size_t>(i)][static_cast<size_t>(unknowns + i)]));
  }
  return res;
}

}  // namespace whitney
