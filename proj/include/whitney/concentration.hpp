#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include "whitney/discotope.hpp"
#include "whitney/extensions.hpp"
#include "whitney/random.hpp"
#include "whitney/sequences.hpp"
#include "whitney/zonotope.hpp"

namespace whitney {

// Contiguous-range worker pool; results land in caller-owned storage indexed
// by item, so the outcome does not depend on the worker count.
inline void parallel_for(long n_items, int jobs, const std::function<void(long)>& body) {
  if (jobs < 1) jobs = 1;
  jobs = static_cast<int>(std::min<long>(jobs, std::max<long>(n_items, 1)));
  if (jobs == 1) {
    for (long i = 0; i < n_items; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w]() {
      long lo = n_items * w / jobs, hi = n_items * (w + 1) / jobs;
      for (long i = lo; i < hi; ++i) body(i);
    });
  for (auto& t : pool) t.join();
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// FNV-1a over the canonical config string; identifies runs in the CSVs.
inline std::string config_hash(const std::string& canonical) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// --- Levy concentration on the sphere ---------------------------------------

struct LevyRow {
  double eps = 0;
  double neighborhood_measure = 0;  // empirical mu(A_eps), A the hemisphere x1 <= 0
  double neighborhood_se = 0;
  double bound = 0;                 // 1 - sqrt(pi/8) exp(-d eps^2 / 8)
  double deviation_prob = 0;        // empirical P(|x1 - M| > eps), M the sample median
  double deviation_bound = 0;       // 2 sqrt(pi/8) exp(-d eps^2 / 8)
};

// Sphere S^d lives in R^{d+1}; distance is the angular metric.
inline std::vector<LevyRow> levy_demo(int d, const std::vector<double>& eps_grid,
                                      long num_samples, uint64_t seed, int jobs = 1) {
  if (d < 2) throw std::invalid_argument("levy_demo needs d >= 2");
  std::vector<double> first_coord(static_cast<size_t>(num_samples));
  parallel_for(num_samples, jobs, [&](long i) {
    Rng rng(mix_seed(seed, 0x1e71, static_cast<uint64_t>(i)));
    std::vector<double> x = unit_vector(rng, d + 1);
    first_coord[static_cast<size_t>(i)] = x[0];
  });
  double median = median_of(first_coord);
  std::vector<LevyRow> rows;
  for (double eps : eps_grid) {
    LevyRow row;
    row.eps = eps;
    double thresh = eps >= M_PI / 2 ? 2.0 : std::sin(eps);
    long inside = 0, deviate = 0;
    for (double x1 : first_coord) {
      if (x1 < thresh) ++inside;
      if (std::fabs(x1 - median) > eps) ++deviate;
    }
    double alpha = std::sqrt(M_PI / 8.0) * std::exp(-d * eps * eps / 8.0);
    row.neighborhood_measure = static_cast<double>(inside) / static_cast<double>(num_samples);
    row.neighborhood_se = std::sqrt(row.neighborhood_measure *
                                    (1.0 - row.neighborhood_measure) /
                                    static_cast<double>(num_samples));
    row.bound = 1.0 - alpha;
    row.deviation_prob = static_cast<double>(deviate) / static_cast<double>(num_samples);
    row.deviation_bound = 2.0 * alpha;
    rows.push_back(row);
  }
  return rows;
}

// Empirical measure of the eps-neighborhood of a (d-k)-dimensional great
// subsphere of S^d (the points with the last k coordinates zero).
inline double orthogonal_concentration_demo(int d, int k, double eps, long num_samples,
                                            uint64_t seed, int jobs = 1) {
  if (k < 0 || k >= d) throw std::invalid_argument("needs 0 <= k < d");
  std::vector<long long> counts(static_cast<size_t>(std::max(jobs, 1)), 0);
  int lanes = std::max(jobs, 1);
  parallel_for(lanes, lanes, [&](long w) {
    long lo = num_samples * w / lanes, hi = num_samples * (w + 1) / lanes;
    long long local = 0;
    for (long i = lo; i < hi; ++i) {
      Rng rng(mix_seed(seed, 0x0a7e, static_cast<uint64_t>(i)));
      std::vector<double> x = unit_vector(rng, d + 1);
      double tail2 = 0;
      for (int t = d + 1 - k; t < d + 1; ++t) tail2 += x[static_cast<size_t>(t)] * x[static_cast<size_t>(t)];
      double dist = std::asin(std::min(1.0, std::sqrt(tail2)));
      if (dist < eps) ++local;
    }
    counts[static_cast<size_t>(w)] = local;
  });
  long long inside = 0;
  for (long long c : counts) inside += c;
  return static_cast<double>(inside) / static_cast<double>(num_samples);
}

// --- uniform-matroid concentration experiment --------------------------------

struct CoeffStats {
  double mean = 0, median = 0, std_dev = 0;
};

struct UniformExperimentConfig {
  int n = 4;
  std::vector<int> d_list{16, 64};
  int num_samples = 40;
  uint64_t seed = 1;
  int jobs = 1;
  // acceptance thresholds (defaults match the shipped acceptance suite)
  double mean_tolerance = 0.6;    // |mean nu_2 - binom(n,2)| at the largest d
  double std_ratio_bound = 0.7;   // std at largest d vs smallest d
};

struct UniformExperimentResult {
  int d = 0;
  std::vector<std::vector<double>> per_sample;  // [sample][coeff 0..n]
  std::vector<CoeffStats> stats;
  std::vector<double> target;  // binomial(n, i): the expected orthogonal limit
  bool per_sample_checks = true;  // Hadamard bound and top-volume identity
};

// Random zonotopes from n uniform unit directions (unit-volume segments,
// half-length 1/2): exact subset-formula volumes per sample, never MC.
inline std::vector<UniformExperimentResult> uniform_matroid_experiment(
    const UniformExperimentConfig& cfg) {
  for (int d : cfg.d_list)
    if (cfg.n >= d) throw std::invalid_argument("needs n < every d in d_list");
  std::vector<UniformExperimentResult> results;
  for (int d : cfg.d_list) {
    UniformExperimentResult res;
    res.d = d;
    res.per_sample.assign(static_cast<size_t>(cfg.num_samples),
                          std::vector<double>(static_cast<size_t>(cfg.n) + 1, 0.0));
    std::vector<char> ok(static_cast<size_t>(cfg.num_samples), 1);
    parallel_for(cfg.num_samples, cfg.jobs, [&](long s) {
      Rng rng(mix_seed(cfg.seed, static_cast<uint64_t>(d), static_cast<uint64_t>(s)));
      ZonotopeF z;
      z.ambient = d;
      for (int i = 0; i < cfg.n; ++i) {
        std::vector<double> u = unit_vector(rng, d);
        for (double& v : u) v *= 0.5;
        z.generators.push_back(std::move(u));
      }
      WillsPoly w = zonotope_intrinsic_volumes(z);
      res.per_sample[static_cast<size_t>(s)] = w.nu;
      // top volume is a single Gram determinant; Hadamard-bounded by the
      // product of the full segment lengths (= 1 here)
      double topfromgram = std::sqrt(std::max(0.0, detail::subset_gram_det(
                                                       z, (uint64_t{1} << cfg.n) - 1)));
      double top = w.nu[static_cast<size_t>(cfg.n)];
      if (std::fabs(top - topfromgram) > 1e-9 || top > 1.0 + 1e-12)
        ok[static_cast<size_t>(s)] = 0;
      // Steiner coefficients are log-concave with zero slack
      std::vector<double> weighted;
      for (size_t kk = 0; kk < w.nu.size(); ++kk)
        weighted.push_back(w.nu[kk] * kappa(d - static_cast<int>(kk)));
      if (!is_log_concave_approx(weighted, 1e-12).ok) ok[static_cast<size_t>(s)] = 0;
    });
    for (char c : ok)
      if (!c) res.per_sample_checks = false;
    res.stats.resize(static_cast<size_t>(cfg.n) + 1);
    double binom = 1;
    for (int i = 0; i <= cfg.n; ++i) {
      std::vector<double> coeff;
      for (const auto& row : res.per_sample) coeff.push_back(row[static_cast<size_t>(i)]);
      res.stats[static_cast<size_t>(i)] = {mean_of(coeff), median_of(coeff), stddev_of(coeff)};
      res.target.push_back(binom);
      binom = binom * (cfg.n - i) / (i + 1);
    }
    results.push_back(std::move(res));
  }
  return results;
}

// --- theorem-main probe -------------------------------------------------------

struct MainExperimentConfig {
  Arrangement base;       // c-arrangement whose Whitney numbers are the target
  int c = 1;
  int k = 1;
  int h = 3;
  int ell = 8;
  int num_samples = 40;
  uint64_t seed = 1;
  int jobs = 1;
  // MC controls, used only on the c >= 2 path
  long mc_budget = 20000;
  std::vector<double> lambda_grid;  // empty: d+3 points in [0.2 R, 2 R]
};

struct MainCoeffRow {
  int i = 0;              // gamma index
  int nu_index = 0;       // aligned intrinsic-volume index nk + i c
  double mean = 0, median = 0, std_dev = 0;
  double raw_mean = 0;    // un-normalized nu at the aligned index
  double target = 0;      // gamma_i of the base arrangement
  double deviation = 0;   // |mean - target|
};

struct MainExperimentResult {
  std::vector<MainCoeffRow> rows;
  std::vector<double> residual;  // measure-relation residual per coefficient
  std::vector<std::vector<double>> per_sample;  // normalized coefficients
  int nk = 0;
  int rank = 0;
  std::string alignment;
};

namespace detail {

// One floating realization of the iterated semiflexible extension: extension
// directions drawn uniformly in the final ambient space (the parameter space
// of the construction), flexed normal spaces uniform in span(old normals,
// step directions).
struct CompositeSample {
  int ambient = 0;
  int h = 1;
  int c = 1;
  std::vector<std::vector<std::vector<double>>> flex_disks;  // per element, c rows
  std::vector<std::vector<double>> directions;               // nk unit rows
};

inline CompositeSample sample_composite_float(const Arrangement& base, int c, int k,
                                              int h, int ell, Rng& rng) {
  int n = static_cast<int>(base.elements.size());
  int d = base.ambient;
  int big_d = d + n * (k + ell);
  CompositeSample cs;
  cs.ambient = big_d;
  cs.h = h;
  cs.c = c;
  for (int i = 0; i < n; ++i) {
    // orthonormal rows of the element's normal space, padded to big_d
    RatMat cm = base.elements[static_cast<size_t>(i)].flat.constraint_matrix();
    std::vector<std::vector<double>> span_rows;
    for (int r = 0; r < cm.rows(); ++r) {
      std::vector<double> v(static_cast<size_t>(big_d), 0.0);
      for (int j = 0; j < cm.cols(); ++j) v[static_cast<size_t>(j)] = to_double(cm.at(r, j));
      span_rows.push_back(std::move(v));
    }
    std::vector<std::vector<double>> dirs;
    for (int t = 0; t < k; ++t) {
      dirs.push_back(unit_vector(rng, big_d));
      span_rows.push_back(dirs.back());
    }
    // orthonormalize the span, then draw c uniform directions inside it
    std::vector<std::vector<double>> onb;
    for (auto& v : span_rows) {
      for (const auto& prev : onb) {
        double dot = 0;
        for (size_t t = 0; t < v.size(); ++t) dot += prev[t] * v[t];
        for (size_t t = 0; t < v.size(); ++t) v[t] -= dot * prev[t];
      }
      double nn = std::sqrt(norm2(v));
      if (nn > 1e-12) {
        for (double& x : v) x /= nn;
        onb.push_back(v);
      }
    }
    std::vector<std::vector<double>> flex;
    for (int r = 0; r < c; ++r) {
      std::vector<double> combo(static_cast<size_t>(big_d), 0.0);
      for (const auto& row : onb) {
        double g = rng.normal();
        for (size_t t = 0; t < combo.size(); ++t) combo[t] += g * row[t];
      }
      for (const auto& prev : flex) {
        double dot = 0;
        for (size_t t = 0; t < combo.size(); ++t) dot += prev[t] * combo[t];
        for (size_t t = 0; t < combo.size(); ++t) combo[t] -= dot * prev[t];
      }
      normalize(combo);
      flex.push_back(std::move(combo));
    }
    cs.flex_disks.push_back(std::move(flex));
    for (auto& s : dirs) cs.directions.push_back(std::move(s));
  }
  return cs;
}

// c = 1: exact subset-formula volumes of the zonotope of unit segments.
// The h parallel copies of a direction are collapsed into one segment of
// length h: parallelepiped volumes are multilinear in the segment lengths and
// repeated directions contribute nothing, so this is an identity, not an
// approximation.
inline std::vector<double> composite_nu_exact_path(const CompositeSample& cs) {
  ZonotopeF z;
  z.ambient = cs.ambient;
  for (const auto& disks : cs.flex_disks) {
    std::vector<double> g = disks[0];
    for (double& v : g) v *= 0.5;
    z.generators.push_back(std::move(g));
  }
  for (const auto& s : cs.directions) {
    std::vector<double> g = s;
    for (double& v : g) v *= 0.5 * cs.h;
    z.generators.push_back(std::move(g));
  }
  return zonotope_intrinsic_volumes(z).nu;
}

// c >= 2: Monte Carlo on the discotope of the sampled composite.
inline std::vector<double> composite_nu_mc_path(const CompositeSample& cs,
                                                const MainExperimentConfig& cfg,
                                                uint64_t sample_seed) {
  Discotope d;
  d.ambient = cs.ambient;
  for (const auto& disks : cs.flex_disks)
    d.disks.push_back(Disk{disks, unit_volume_radius(cs.c)});
  // h identical unit segments sum to one segment of length h
  for (const auto& s : cs.directions) d.disks.push_back(Disk{{s}, 0.5 * cs.h});
  std::vector<double> grid = cfg.lambda_grid;
  if (grid.empty()) {
    double big_r = 0;
    for (int i = 0; i < d.ambient; ++i) {
      std::vector<double> e(static_cast<size_t>(d.ambient), 0.0);
      e[static_cast<size_t>(i)] = 1.0;
      big_r = std::max(big_r, detail::support_any(d, e));
    }
    if (big_r <= 0) big_r = 1.0;
    int points = d.ambient + 3;
    for (int j = 0; j < points; ++j)
      grid.push_back(0.2 * big_r + (2.0 * big_r - 0.2 * big_r) * j / (points - 1));
  }
  McResult mc = estimate_intrinsic_volumes_mc(d, grid, cfg.mc_budget, sample_seed, 1);
  return mc.nu;
}

}  // namespace detail

inline std::vector<Rat> whitney_numbers_of(const Arrangement& arr, int c) {
  return char_poly(matroid_of(arr, c)).gamma;
}

// Samples the composite extension and reports the h^{-kn}-normalized
// intrinsic volumes against the Whitney numbers of the base arrangement.
// Coefficient alignment: the highest nonzero index of nu is nk + rc
// (the extension directions add nk to the rank); gamma_i is read at
// nu index nk + i c. Raw values are reported alongside.
inline MainExperimentResult theorem_main_experiment(const MainExperimentConfig& cfg) {
  const Arrangement& base = cfg.base;
  int n = static_cast<int>(base.elements.size());
  if (cfg.c != 1) {
    int big_d = base.ambient + n * (cfg.k + cfg.ell);
    if (big_d > 6)
      throw std::invalid_argument("MC path needs composite ambient <= 6; shrink k/ell");
  }
  std::vector<Rat> gamma = whitney_numbers_of(base, cfg.c);
  int r = static_cast<int>(gamma.size()) - 1;
  int nk = n * cfg.k;
  double norm = std::pow(static_cast<double>(cfg.h), -static_cast<double>(cfg.k) * n);

  MainExperimentResult res;
  res.nk = nk;
  res.rank = r;
  res.alignment = "nu index nk + i*c, normalized by h^(-k n)";
  res.per_sample.assign(static_cast<size_t>(cfg.num_samples),
                        std::vector<double>(static_cast<size_t>(r) + 1, 0.0));
  std::vector<std::vector<double>> raw(static_cast<size_t>(cfg.num_samples),
                                       std::vector<double>(static_cast<size_t>(r) + 1, 0.0));

  parallel_for(cfg.num_samples, cfg.jobs, [&](long s) {
    Rng rng(mix_seed(cfg.seed, 0x7a11, static_cast<uint64_t>(s)));
    detail::CompositeSample cs =
        detail::sample_composite_float(base, cfg.c, cfg.k, cfg.h, cfg.ell, rng);
    std::vector<double> nu = cfg.c == 1
                                 ? detail::composite_nu_exact_path(cs)
                                 : detail::composite_nu_mc_path(
                                       cs, cfg, mix_seed(cfg.seed, 0x3c, static_cast<uint64_t>(s)));
    for (int i = 0; i <= r; ++i) {
      size_t idx = static_cast<size_t>(nk + i * cfg.c);
      double v = idx < nu.size() ? nu[idx] : 0.0;
      raw[static_cast<size_t>(s)][static_cast<size_t>(i)] = v;
      res.per_sample[static_cast<size_t>(s)][static_cast<size_t>(i)] = v * norm;
    }
  });

  for (int i = 0; i <= r; ++i) {
    std::vector<double> col, rawcol;
    for (long s = 0; s < cfg.num_samples; ++s) {
      col.push_back(res.per_sample[static_cast<size_t>(s)][static_cast<size_t>(i)]);
      rawcol.push_back(raw[static_cast<size_t>(s)][static_cast<size_t>(i)]);
    }
    MainCoeffRow row;
    row.i = i;
    row.nu_index = nk + i * cfg.c;
    row.mean = mean_of(col);
    row.median = median_of(col);
    row.std_dev = stddev_of(col);
    row.raw_mean = mean_of(rawcol);
    row.target = to_double(gamma[static_cast<size_t>(i)]);
    row.deviation = std::fabs(row.mean - row.target);
    res.rows.push_back(row);
  }

  // measure-relation residual: normalized coefficients of the composite of A
  // against the sum for the composites of A \ e_n and A / e_n.
  if (n >= 1 && cfg.c == 1) {
    auto [adel, acon] = delete_contract_arr(base, n - 1);
    double norm_small = std::pow(static_cast<double>(cfg.h),
                                 -static_cast<double>(cfg.k) * (n - 1));
    int nk_small = (n - 1) * cfg.k;
    std::vector<std::vector<double>> rhs(static_cast<size_t>(cfg.num_samples),
                                         std::vector<double>(static_cast<size_t>(r) + 1, 0.0));
    parallel_for(cfg.num_samples, cfg.jobs, [&](long s) {
      Rng rng(mix_seed(cfg.seed, 0x9d, static_cast<uint64_t>(s)));
      auto nu_of = [&](const Arrangement& minor) {
        detail::CompositeSample cs =
            detail::sample_composite_float(minor, cfg.c, cfg.k, cfg.h, cfg.ell, rng);
        return detail::composite_nu_exact_path(cs);
      };
      std::vector<double> nu_del = nu_of(adel);
      std::vector<double> nu_con = nu_of(acon);
      for (int i = 0; i <= r; ++i) {
        size_t idx = static_cast<size_t>(nk_small + i * cfg.c);
        double v = (idx < nu_del.size() ? nu_del[idx] : 0.0) +
                   (idx < nu_con.size() ? nu_con[idx] : 0.0);
        rhs[static_cast<size_t>(s)][static_cast<size_t>(i)] = v * norm_small;
      }
    });
    for (int i = 0; i <= r; ++i) {
      std::vector<double> col;
      for (long s = 0; s < cfg.num_samples; ++s)
        col.push_back(rhs[static_cast<size_t>(s)][static_cast<size_t>(i)]);
      res.residual.push_back(res.rows[static_cast<size_t>(i)].mean - mean_of(col));
    }
  }
  return res;
}

// --- CSV rendering ------------------------------------------------------------

inline void write_per_sample_csv(std::ostream& os, const std::string& hash,
                                 const std::vector<std::vector<double>>& per_sample) {
  os << "config,sample,coeff,value\n";
  for (size_t s = 0; s < per_sample.size(); ++s)
    for (size_t i = 0; i < per_sample[s].size(); ++i)
      os << hash << "," << s << "," << i << "," << format_double(per_sample[s][i]) << "\n";
}

inline void write_summary_csv(std::ostream& os,
                              const std::vector<CoeffStats>& stats,
                              const std::vector<double>& target) {
  os << "coeff,mean,median,std,target,deviation\n";
  for (size_t i = 0; i < stats.size(); ++i) {
    double t = i < target.size() ? target[i] : 0.0;
    os << i << "," << format_double(stats[i].mean) << "," << format_double(stats[i].median)
       << "," << format_double(stats[i].std_dev) << "," << format_double(t) << ","
       << format_double(std::fabs(stats[i].mean - t)) << "\n";
  }
}

inline void write_main_summary_csv(std::ostream& os, const MainExperimentResult& res) {
  os << "coeff,nu_index,mean,median,std,raw_mean,target,deviation\n";
  for (const auto& row : res.rows)
    os << row.i << "," << row.nu_index << "," << format_double(row.mean) << ","
       << format_double(row.median) << "," << format_double(row.std_dev) << ","
       << format_double(row.raw_mean) << "," << format_double(row.target) << ","
       << format_double(row.deviation) << "\n";
}

inline void write_levy_csv(std::ostream& os, const std::vector<LevyRow>& rows) {
  os << "eps,neighborhood_measure,neighborhood_se,bound,deviation_prob,deviation_bound\n";
  for (const auto& r : rows)
    os << format_double(r.eps) << "," << format_double(r.neighborhood_measure) << ","
       << format_double(r.neighborhood_se) << "," << format_double(r.bound) << ","
       << format_double(r.deviation_prob) << "," << format_double(r.deviation_bound) << "\n";
}

}  // namespace whitney
