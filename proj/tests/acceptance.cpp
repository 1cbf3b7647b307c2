// Acceptance suite: runs every shipped correctness and experiment criterion
// at its pinned tolerance and prints one pass/fail line per criterion.
// Exit code is the number of failed criteria.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "whitney/concentration.hpp"
#include "whitney/json_io.hpp"

using namespace whitney;

namespace {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

std::vector<CriterionResult> g_results;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void record(int number, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
  g_results.push_back({number, name, pass, seconds, detail});
  std::cerr << "[criterion " << number << "] " << (pass ? "pass" : "FAIL") << " ("
            << std::fixed << std::setprecision(2) << seconds << "s) " << detail << "\n";
}

int g_jobs = 2;

// ---------------------------------------------------------------------------

void criterion_1_cube_identity() {
  Timer t;
  bool ok = true;
  std::ostringstream detail;
  for (int d = 1; d <= 8; ++d) {
    Poly reference = binomial_poly(d);
    Poly psi = char_poly_arr(coordinate_arrangement(d)).absolute;
    WillsPoly w = zonotope_intrinsic_volumes(cube_zonotope(d));
    if (!(psi == reference) || !w.exact || !(wills_lambda_poly(w) == reference)) {
      ok = false;
      detail << " d=" << d;
    }
  }
  ok = ok && t.seconds() < 1.0;
  record(1, "cube identity d=1..8", ok, t.seconds(), detail.str());
}

void criterion_2_deletion_contraction() {
  Timer t;
  std::vector<Arrangement> catalog;
  for (int d = 1; d <= 6; ++d) catalog.push_back(coordinate_arrangement(d));
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 6; ++n) catalog.push_back(generic_arrangement(n, d));
  catalog.push_back(braid_arrangement(4));
  bool ok = true;
  std::ostringstream detail;
  for (size_t a = 0; a < catalog.size(); ++a) {
    Poly psi = char_poly_arr(catalog[a]).absolute;
    for (int e = 0; e < static_cast<int>(catalog[a].elements.size()); ++e) {
      auto [del, con] = delete_contract_arr(catalog[a], e);
      if (!(psi == char_poly_arr(del).absolute + char_poly_arr(con).absolute)) {
        ok = false;
        detail << " arr#" << a << ":e" << e;
      }
    }
  }
  ok = ok && t.seconds() < 5.0;
  record(2, "deletion-contraction identity on the catalog", ok, t.seconds(), detail.str());
}

void criterion_3_c_relation() {
  Timer t;
  Arrangement a = transverse_planes_r4();
  auto polys = char_poly_arr(a);
  auto mat = char_poly(matroid_of(a, 2));
  Poly expect_abs = mat.psi.substitute_power(2);      // d - c r = 0 here
  Poly expect_signed = mat.chi.substitute_power(2);
  bool ok = polys.absolute == expect_abs && polys.signed_poly == expect_signed;
  // the stated exponent d - r = 2 does not match degrees; report the residual
  Poly stated_residual =
      polys.absolute - mat.psi.substitute_power(2).shift_by_power(a.ambient - 2);
  std::ostringstream detail;
  detail << "stated-exponent residual: " << stated_residual.to_string();
  record(3, "c-relation for the transverse-planes 2-arrangement", ok, t.seconds(),
         detail.str());
}

std::vector<Arrangement> lemma_grid_arrangements() {
  std::vector<Arrangement> out;
  for (int d : {2, 3})
    for (int n : {1, 2, 3}) out.push_back(generic_arrangement(n, d));
  return out;
}

void criterion_4_product_lemma() {
  Timer t;
  std::vector<Arrangement> arrs = lemma_grid_arrangements();
  struct Task {
    int arr, k, h;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int a = 0; a < static_cast<int>(arrs.size()); ++a)
    for (int k : {1, 2})
      for (int h = 1; h <= 4; ++h)
        for (uint64_t seed = 1; seed <= 20; ++seed)
          tasks.push_back({a, k, h, seed});
  std::vector<char> zero(tasks.size(), 0);
  parallel_for(static_cast<long>(tasks.size()), g_jobs, [&](long i) {
    const Task& task = tasks[static_cast<size_t>(i)];
    Poly r = lemma_product_residual(arrs[static_cast<size_t>(task.arr)], task.k, task.h,
                                    mix_seed(0xac4, task.seed, static_cast<uint64_t>(i)));
    zero[static_cast<size_t>(i)] = r.is_zero() ? 1 : 0;
  });
  long bad = 0;
  for (char z : zero)
    if (!z) ++bad;
  bool ok = bad == 0 && t.seconds() < 60.0;
  std::ostringstream detail;
  detail << tasks.size() << " grid points, " << bad << " nonzero residuals";
  record(4, "product extension recurrence (zero residual on the grid)", ok, t.seconds(),
         detail.str());
}

void criterion_5_semiflexible_lemma() {
  Timer t;
  std::vector<Arrangement> arrs = lemma_grid_arrangements();
  struct Task {
    int arr, e, k, h;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int a = 0; a < static_cast<int>(arrs.size()); ++a)
    for (int e = 0; e < static_cast<int>(arrs[static_cast<size_t>(a)].elements.size()); ++e)
      for (int k : {1, 2})
        for (int h = 1; h <= 4; ++h)
          for (uint64_t seed = 1; seed <= 20; ++seed) tasks.push_back({a, e, k, h, seed});
  std::vector<char> zero(tasks.size(), 0);
  parallel_for(static_cast<long>(tasks.size()), g_jobs, [&](long i) {
    const Task& task = tasks[static_cast<size_t>(i)];
    Poly r = lemma_semiflex_residual(arrs[static_cast<size_t>(task.arr)], task.e, task.k,
                                     task.h, mix_seed(0xac5, task.seed, static_cast<uint64_t>(i)));
    zero[static_cast<size_t>(i)] = r.is_zero() ? 1 : 0;
  });
  long bad_k1 = 0, bad_k2 = 0;
  for (size_t i = 0; i < tasks.size(); ++i)
    if (!zero[i]) (tasks[i].k == 1 ? bad_k1 : bad_k2)++;
  // nonzero residuals at k >= 2 would be logged as open-question instances;
  // k = 1 must be clean
  bool ok = bad_k1 == 0 && bad_k2 == 0;
  std::ostringstream detail;
  detail << tasks.size() << " grid points, k=1 nonzero: " << bad_k1
         << ", k>=2 nonzero (logged): " << bad_k2;
  record(5, "semiflexible recurrence (residual per lambda power)", ok, t.seconds(),
         detail.str());
}

void criterion_6_flex_limit() {
  Timer t;
  Arrangement a = generic_arrangement(2, 2);
  auto rows = flex_limit_probe(a, 0, 1, {4, 16, 64}, 0x6e);
  bool ok = rows.size() == 3;
  std::ostringstream detail;
  for (size_t r = 0; ok && r + 1 < rows.size(); ++r) {
    bool some_strict = false;
    size_t len = std::max(rows[r].deviation.size(), rows[r + 1].deviation.size());
    for (size_t j = 0; j < len; ++j) {
      Rat prev = j < rows[r].deviation.size() ? rows[r].deviation[j] : Rat(0);
      Rat next = j < rows[r + 1].deviation.size() ? rows[r + 1].deviation[j] : Rat(0);
      if (prev == 0) {
        if (next != 0) ok = false;
      } else {
        if (!(next < prev)) ok = false;
        some_strict = true;
      }
    }
    if (!some_strict) ok = false;
  }
  for (const auto& row : rows) {
    detail << " h=" << row.h << " max=";
    Rat mx = 0;
    for (const auto& d : row.deviation) mx = std::max(mx, d);
    detail << rat_to_string(mx);
    if (!row.leading_match) ok = false;
  }
  ok = ok && t.seconds() < 120.0;
  record(6, "flex-limit deviation strictly decreases along h=4,16,64", ok, t.seconds(),
         detail.str());
}

// stashed for the log-concavity suite
std::vector<std::vector<double>> g_estimated_sequences;

void criterion_7_mc_estimator() {
  Timer t;
  bool ok = true;
  std::ostringstream detail;
  {
    Discotope cube = discotope_of(coordinate_arrangement(3));
    std::vector<double> grid;
    for (int j = 1; j <= 8; ++j) grid.push_back(0.25 * j);
    McResult res = estimate_intrinsic_volumes_mc(cube, grid, 100000, 0x7c, g_jobs);
    std::vector<double> target{1, 3, 3, 1};
    detail << "cube nu:";
    for (size_t i = 0; i < res.nu.size(); ++i) {
      detail << " " << std::setprecision(4) << res.nu[i];
      if (std::fabs(res.nu[i] - target[i]) > 0.05 * target[i]) ok = false;
    }
    g_estimated_sequences.push_back(res.nu);
  }
  for (int d = 2; d <= 4; ++d) {
    // the cube budget and grid are pinned above; for the balls a wide grid
    // and a budget sized so the fitted standard errors sit near 1-3% keep the
    // ill-conditioned low-order coefficients inside 5%
    Discotope ball = ball_discotope(d, 1.0);
    std::vector<double> grid;
    for (int j = 0; j < 12; ++j) grid.push_back(0.2 + (6.0 - 0.2) * j / 11);
    long budget = d == 4 ? 2000000 : 1000000;
    McResult res = estimate_intrinsic_volumes_mc(ball, grid, budget, 0x7d + d, g_jobs);
    double binom = 1;
    detail << " | ball d=" << d << ":";
    for (int j = 0; j <= d; ++j) {
      double expect = binom * kappa(d) / kappa(d - j);
      detail << " " << std::setprecision(4) << res.nu[static_cast<size_t>(j)];
      if (std::fabs(res.nu[static_cast<size_t>(j)] - expect) > 0.05 * expect) ok = false;
      binom = binom * (d - j) / (j + 1);
    }
    g_estimated_sequences.push_back(res.nu);
  }
  ok = ok && t.seconds() < 300.0;
  record(7, "MC estimator within 5% on the cube and balls", ok, t.seconds(), detail.str());
}

std::vector<std::vector<std::vector<double>>> g_uniform_per_sample;

void criterion_10_uniform_concentration() {
  Timer t;
  UniformExperimentConfig cfg;
  cfg.n = 4;
  cfg.d_list = {16, 64};
  cfg.num_samples = 40;
  cfg.seed = 0xa10;
  cfg.jobs = g_jobs;
  auto results = uniform_matroid_experiment(cfg);
  double mean64 = results[1].stats[2].mean;
  double std16 = results[0].stats[2].std_dev;
  double std64 = results[1].stats[2].std_dev;
  bool ok = std::fabs(mean64 - 6.0) <= cfg.mean_tolerance &&
            std64 < cfg.std_ratio_bound * std16 && results[0].per_sample_checks &&
            results[1].per_sample_checks;
  for (const auto& r : results) g_uniform_per_sample.push_back(r.per_sample);
  std::ostringstream detail;
  detail << "mean nu_2(d=64)=" << std::setprecision(4) << mean64 << " std16=" << std16
         << " std64=" << std64;
  ok = ok && t.seconds() < 120.0;
  record(10, "uniform-matroid concentration trend", ok, t.seconds(), detail.str());
}

void criterion_8_log_concavity_suite() {
  Timer t;
  bool ok = true;
  std::ostringstream detail;
  // Whitney numbers of the matroid catalog, exactly
  std::vector<std::string> names{"graphic-complete(4)", "fano", "vamos"};
  for (int n = 1; n <= 8; ++n) names.push_back("boolean(" + std::to_string(n) + ")");
  for (int r = 1; r <= 5; ++r)
    for (int n = r; n <= 8; ++n)
      names.push_back("uniform(" + std::to_string(r) + "," + std::to_string(n) + ")");
  for (const auto& name : names) {
    auto res = char_poly(matroid_catalog(name));
    if (!is_log_concave(res.gamma).ok) {
      ok = false;
      detail << " matroid:" << name;
    }
  }
  // exact Wills coefficients of the cubes
  for (int d = 1; d <= 8; ++d) {
    WillsPoly w = zonotope_intrinsic_volumes(cube_zonotope(d));
    if (!is_log_concave(w.nu_exact).ok) {
      ok = false;
      detail << " cube:" << d;
    }
  }
  // estimated sequences from the MC runs and the uniform experiment
  size_t checked = 0;
  for (const auto& seq : g_estimated_sequences) {
    std::vector<double> clipped;
    for (double v : seq) clipped.push_back(std::max(v, 0.0));
    if (!is_log_concave_approx(clipped, 1e-9).ok) {
      ok = false;
      detail << " mc-seq#" << checked;
    }
    ++checked;
  }
  for (const auto& block : g_uniform_per_sample)
    for (const auto& seq : block) {
      if (!is_log_concave_approx(seq, 1e-9).ok) {
        ok = false;
        detail << " uniform-sample";
      }
      ++checked;
    }
  std::ostringstream head;
  head << names.size() << " matroids, 8 cubes, " << checked << " estimated sequences;";
  record(8, "log-concavity suite", ok, t.seconds(), head.str() + detail.str());
}

void criterion_9_ingleton() {
  Timer t;
  bool ok = true;
  std::ostringstream detail;
  Matroid vamos = vamos_matroid();
  auto v = ingleton_check(vamos);
  if (v.satisfied) {
    ok = false;
  } else {
    auto [a, b, c, d] = v.witness;
    int lhs = vamos.rank(a | b) + vamos.rank(a | c) + vamos.rank(a | d) +
              vamos.rank(b | c) + vamos.rank(b | d);
    int rhs = vamos.rank(a) + vamos.rank(b) + vamos.rank(c | d) + vamos.rank(a | b | c) +
              vamos.rank(a | b | d);
    if (lhs >= rhs) ok = false;
    detail << "witness (" << a << "," << b << "," << c << "," << d << ")";
  }
  for (const char* name : {"uniform(2,4)", "boolean(4)", "graphic-complete(4)"})
    if (!ingleton_check(matroid_catalog(name)).satisfied) {
      ok = false;
      detail << " unexpected violation: " << name;
    }
  ok = ok && t.seconds() < 60.0;
  record(9, "Ingleton screening (violation witness and exhaustive passes)", ok,
         t.seconds(), detail.str());
}

void criterion_11_theorem_main_probe() {
  Timer t;
  // The probed statement needs growing parameter sequences; h = 3, ell = 8
  // are their values at k = 1 and they scale geometrically, matching the
  // config default pattern (h_k = h^k, ell_k = ell^k).
  MainExperimentConfig cfg;
  cfg.base = generic_arrangement(2, 2);
  cfg.c = 1;
  cfg.num_samples = 40;
  cfg.seed = 0xa11;
  cfg.jobs = g_jobs;
  cfg.k = 1;
  cfg.h = 3;
  cfg.ell = 8;
  MainExperimentResult r1 = theorem_main_experiment(cfg);
  cfg.k = 2;
  cfg.h = 9;
  cfg.ell = 64;
  MainExperimentResult r2 = theorem_main_experiment(cfg);
  auto maxdev = [](const MainExperimentResult& r) {
    double m = 0;
    for (const auto& row : r.rows) m = std::max(m, row.deviation);
    return m;
  };
  double d1 = maxdev(r1), d2 = maxdev(r2);
  bool ok = d2 < d1;
  std::ostringstream detail;
  detail << std::setprecision(4) << "maxdev k=1: " << d1 << ", k=2: " << d2 << "; means k=1:";
  for (const auto& row : r1.rows) detail << " " << row.mean;
  detail << " k=2:";
  for (const auto& row : r2.rows) detail << " " << row.mean;
  ok = ok && t.seconds() < 600.0;
  record(11, "normalized coefficient deviation decreases from k=1 to k=2", ok, t.seconds(),
         detail.str());
}

void criterion_12_levy() {
  Timer t;
  std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5};
  auto rows = levy_demo(50, grid, 100000, 0xa12, g_jobs);
  const double se_multiplier = 3.0;
  bool ok = true;
  std::ostringstream detail;
  for (const auto& row : rows) {
    if (row.neighborhood_measure < row.bound - se_multiplier * row.neighborhood_se) {
      ok = false;
      detail << " eps=" << row.eps;
    }
  }
  ok = ok && t.seconds() < 60.0;
  record(12, "hemisphere neighborhood measure beats the bound", ok, t.seconds(),
         detail.str());
}

void criterion_13_determinism() {
  Timer t;
  bool ok = true;
  std::ostringstream detail;
  // uniform experiment CSV bytes
  {
    UniformExperimentConfig cfg;
    cfg.n = 3;
    cfg.d_list = {8};
    cfg.num_samples = 10;
    cfg.seed = 0xd13;
    cfg.jobs = 1;
    auto render = [&](int jobs) {
      cfg.jobs = jobs;
      auto res = uniform_matroid_experiment(cfg);
      std::ostringstream os;
      write_per_sample_csv(os, "h", res[0].per_sample);
      write_summary_csv(os, res[0].stats, res[0].target);
      return os.str();
    };
    std::string a = render(1), b = render(1), c = render(2);
    if (a != b || a != c) {
      ok = false;
      detail << " uniform-csv";
    }
  }
  // theorem-main summary CSV bytes
  {
    MainExperimentConfig cfg;
    cfg.base = generic_arrangement(2, 2);
    cfg.h = 2;
    cfg.k = 1;
    cfg.ell = 2;
    cfg.num_samples = 6;
    cfg.seed = 0xd14;
    auto render = [&](int jobs) {
      cfg.jobs = jobs;
      MainExperimentResult res = theorem_main_experiment(cfg);
      std::ostringstream os;
      write_main_summary_csv(os, res);
      write_per_sample_csv(os, "h", res.per_sample);
      return os.str();
    };
    std::string a = render(1), b = render(2);
    if (a != b) {
      ok = false;
      detail << " main-csv";
    }
  }
  // MC raw estimates
  {
    Discotope cube = discotope_of(coordinate_arrangement(2));
    std::vector<double> grid{0.3, 0.6, 0.9, 1.2};
    McResult a = estimate_intrinsic_volumes_mc(cube, grid, 3000, 0xd15, 1);
    McResult b = estimate_intrinsic_volumes_mc(cube, grid, 3000, 0xd15, 2);
    if (a.raw_volume != b.raw_volume || a.nu != b.nu) {
      ok = false;
      detail << " mc";
    }
  }
  // levy CSV bytes
  {
    auto render = [&](int jobs) {
      std::ostringstream os;
      write_levy_csv(os, levy_demo(20, {0.1, 0.3}, 5000, 0xd16, jobs));
      return os.str();
    };
    if (render(1) != render(2)) {
      ok = false;
      detail << " levy-csv";
    }
  }
  record(13, "seeded runs produce byte-identical CSV", ok, t.seconds(), detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_jobs = std::max(1, std::atoi(argv[1]));
  else {
    unsigned hw = std::thread::hardware_concurrency();
    g_jobs = hw ? static_cast<int>(hw) : 2;
  }
  std::cerr << "acceptance suite, " << g_jobs << " worker(s)\n";

  criterion_1_cube_identity();
  criterion_2_deletion_contraction();
  criterion_3_c_relation();
  criterion_4_product_lemma();
  criterion_5_semiflexible_lemma();
  criterion_6_flex_limit();
  criterion_7_mc_estimator();
  criterion_9_ingleton();
  criterion_10_uniform_concentration();
  criterion_8_log_concavity_suite();  // consumes sequences from 7 and 10
  criterion_11_theorem_main_probe();
  criterion_12_levy();
  criterion_13_determinism();

  std::sort(g_results.begin(), g_results.end(),
            [](const CriterionResult& a, const CriterionResult& b) {
              return a.number < b.number;
            });
  int failures = 0;
  for (const auto& r : g_results) {
    std::cout << "criterion " << std::setw(2) << r.number << " ["
              << (r.pass ? "PASS" : "FAIL") << "] " << r.name << " ("
              << std::fixed << std::setprecision(2) << r.seconds << "s)";
    if (!r.detail.empty()) std::cout << " -- " << r.detail;
    std::cout << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
