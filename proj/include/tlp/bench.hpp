#pragma once

// Timing harness: KTNS vs. GPCA (objective only) vs. ToFullMag(GPCA) (full
// optimal sequence) over random job orders of one instance per family.
// Only solver calls are timed; every run cross-checks the three objectives.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tlp/core.hpp"
#include "tlp/gpca.hpp"
#include "tlp/instances.hpp"
#include "tlp/ktns.hpp"
#include "tlp/tofullmag.hpp"

namespace tlp {

struct FamilySpec {
  std::string name;
  std::optional<GeneratorConfig> generator;  // used when dataset is empty
  std::string dataset;                        // instance file path
  int permutations = 1;
  int repeats = 1;
  std::uint64_t seed = 0;
};

struct FamilyReport {
  std::string name;
  int n = 0;
  int m = 0;
  int capacity = 0;
  std::int64_t permutations = 0;
  std::int64_t repeats = 0;
  double ktns_s = 0;  // totals over all timed calls
  double gpca_s = 0;
  double tofullmag_gpca_s = 0;
  double ktns_median_s = 0;  // per call
  double gpca_median_s = 0;
  double tofullmag_gpca_median_s = 0;
  std::int64_t objective_sum = 0;

  /// KTNS time divided by GPCA time.
  double ratio() const { return gpca_s > 0 ? ktns_s / gpca_s : 0.0; }
};

struct BenchReport {
  std::vector<FamilyReport> families;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

template <class F>
double time_call(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

inline FamilyReport run_family(const Instance& base, const std::string& name,
                               int permutations, int repeats, std::uint64_t seed) {
  if (permutations < 1 || repeats < 1) {
    throw Error(ErrorKind::InfeasibleConfig, "permutations and repeats must be >= 1");
  }
  FamilyReport rep;
  rep.name = name;
  rep.n = base.n();
  rep.m = base.m();
  rep.capacity = base.capacity();
  rep.permutations = permutations;
  rep.repeats = repeats;

  std::mt19937_64 rng(seed);
  std::vector<Instance> orders;
  orders.reserve(static_cast<std::size_t>(permutations));
  for (int p = 0; p < permutations; ++p) {
    orders.push_back(permute_jobs(base, random_permutation(rng, base.n())));
  }

  const GpcaOptions count_only{.keep_states = false, .keep_pipes = false};
  const GpcaOptions with_states{.keep_states = true, .keep_pipes = false};

  // Warmup.
  (void)ktns_solve(orders.front());
  (void)gpca_fast(orders.front(), count_only);
  (void)to_full_mag(gpca_fast(orders.front(), with_states).states, orders.front());

  std::vector<double> t_ktns, t_gpca, t_full;
  const auto calls = static_cast<std::size_t>(permutations) * static_cast<std::size_t>(repeats);
  t_ktns.reserve(calls);
  t_gpca.reserve(calls);
  t_full.reserve(calls);

  for (int p = 0; p < permutations; ++p) {
    const Instance& inst = orders[static_cast<std::size_t>(p)];
    for (int r = 0; r < repeats; ++r) {
      SolveResult k;
      GpcaResult g;
      MagazineSequence full;
      t_ktns.push_back(time_call([&] { k = ktns_solve(inst); }));
      t_gpca.push_back(time_call([&] { g = gpca_fast(inst, count_only); }));
      t_full.push_back(time_call(
          [&] { full = to_full_mag(gpca_fast(inst, with_states).states, inst); }));

      const std::int64_t gpca_obj = switches_from_pipes(inst, g.pipes_count);
      const std::int64_t full_obj = switches(full);
      if (k.min_switches != gpca_obj || gpca_obj != full_obj) {
        throw Error(ErrorKind::ObjectiveMismatch,
                    name + " permutation " + std::to_string(p) + ": ktns=" +
                        std::to_string(k.min_switches) + " gpca=" +
                        std::to_string(gpca_obj) + " tofullmag=" +
                        std::to_string(full_obj) + "\n" + write_canonical(inst),
                    p);
      }
      if (r == 0) rep.objective_sum += gpca_obj;
    }
  }

  for (double t : t_ktns) rep.ktns_s += t;
  for (double t : t_gpca) rep.gpca_s += t;
  for (double t : t_full) rep.tofullmag_gpca_s += t;
  rep.ktns_median_s = median(std::move(t_ktns));
  rep.gpca_median_s = median(std::move(t_gpca));
  rep.tofullmag_gpca_median_s = median(std::move(t_full));
  return rep;
}

inline Instance load_instance_file(const std::string& path,
                                   InstanceFormat format = InstanceFormat::Auto) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::MalformedHeader, "cannot open instance file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), format);
}

inline FamilyReport run_family(const FamilySpec& spec) {
  if (!spec.dataset.empty()) {
    return run_family(load_instance_file(spec.dataset), spec.name,
                      spec.permutations, spec.repeats, spec.seed);
  }
  if (!spec.generator) {
    throw Error(ErrorKind::InfeasibleConfig,
                "family '" + spec.name + "' has neither a dataset nor a generator");
  }
  return run_family(generate(*spec.generator), spec.name, spec.permutations,
                    spec.repeats, spec.seed);
}

/// Runs families on up to `threads` workers; each family is timed on one
/// worker.  Rows are ordered by family name.  The first error is rethrown.
inline BenchReport run_families(const std::vector<FamilySpec>& specs,
                                int threads = 1) {
  BenchReport report;
  report.families.resize(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < specs.size(); k = next++) {
      try {
        report.families[k] = run_family(specs[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || specs.size() <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, specs.size()); ++w) {
      pool.emplace_back(worker);
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::stable_sort(report.families.begin(), report.families.end(),
                   [](const FamilyReport& a, const FamilyReport& b) {
                     return a.name < b.name;
                   });
  return report;
}

inline std::string emit_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "family,n,m,C,ktns_s,gpca_s,tofullmag_gpca_s,ratio\n";
  out << std::setprecision(9);
  for (const auto& f : report.families) {
    out << f.name << ',' << f.n << ',' << f.m << ',' << f.capacity << ','
        << f.ktns_s << ',' << f.gpca_s << ',' << f.tofullmag_gpca_s << ','
        << f.ratio() << '\n';
  }
  return out.str();
}

inline std::string format_table(const BenchReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "family" << std::right << std::setw(6) << "n"
      << std::setw(6) << "m" << std::setw(5) << "C" << std::setw(12) << "KTNS, s"
      << std::setw(12) << "GPCA, s" << std::setw(14) << "ToFull, s"
      << std::setw(9) << "ratio" << '\n';
  out << std::fixed;
  for (const auto& f : report.families) {
    out << std::left << std::setw(10) << f.name << std::right << std::setw(6) << f.n
        << std::setw(6) << f.m << std::setw(5) << f.capacity << std::setprecision(4)
        << std::setw(12) << f.ktns_s << std::setw(12) << f.gpca_s << std::setw(14)
        << f.tofullmag_gpca_s << std::setprecision(2) << std::setw(9) << f.ratio()
        << '\n';
  }
  return out.str();
}

struct ScalingPoint {
  int n = 0;
  double median_s = 0;
  std::int64_t max_insertions = 0;  // over all timed runs
};

/// Median gpca_fast time (count-only mode) for each job count at fixed
/// capacity and fixed per-job tool count.
inline std::vector<ScalingPoint> measure_gpca_scaling(const std::vector<int>& job_counts,
                                                      int capacity, int tools_per_job,
                                                      int tool_universe, int runs,
                                                      std::uint64_t seed) {
  std::vector<ScalingPoint> out;
  const GpcaOptions count_only{.keep_states = false, .keep_pipes = false};
  for (int n : job_counts) {
    GeneratorConfig cfg{n, tool_universe, capacity, tools_per_job, tools_per_job, seed};
    const Instance inst = generate(cfg);
    (void)gpca_fast(inst, count_only);
    std::vector<double> times;
    ScalingPoint point;
    point.n = n;
    for (int r = 0; r < runs; ++r) {
      GpcaResult g;
      times.push_back(time_call([&] { g = gpca_fast(inst, count_only); }));
      point.max_insertions = std::max(point.max_insertions, g.stats.insertions);
    }
    point.median_s = median(std::move(times));
    out.push_back(point);
  }
  return out;
}

}  // namespace tlp
