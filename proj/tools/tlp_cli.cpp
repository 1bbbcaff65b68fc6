// tlp: command-line front end for the tool loading solvers.
//
// Exit codes: 0 success, 1 verification failure, 2 input/config error,
// 3 solver error.  Diagnostics go to stderr, data to stdout or files.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlp/tlp.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kSolverError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::int64_t oracle_budget(std::int64_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("TLP_ORACLE_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw InputError(std::string("TLP_ORACLE_BUDGET is not an integer: ") + env);
    }
  }
  return tlp::kDefaultOracleBudget;
}

tlp::InstanceFormat format_from(const std::string& name) {
  if (name == "canonical") return tlp::InstanceFormat::Canonical;
  if (name == "incidence") return tlp::InstanceFormat::Incidence;
  return tlp::InstanceFormat::Auto;
}

tlp::Instance load(const std::string& path, tlp::InstanceFormat format) {
  try {
    return tlp::load_instance_file(path, format);
  } catch (const tlp::Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << data;
}

// "n=5,m=7,C=4[,min=1,max=4]"
tlp::GeneratorConfig parse_random_spec(const std::string& spec) {
  std::map<std::string, long long> kv;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("bad --random item '" + item + "'");
    try {
      kv[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("bad --random value in '" + item + "'");
    }
  }
  for (const char* key : {"n", "m", "C"}) {
    if (!kv.count(key)) throw InputError(std::string("--random needs ") + key + "=");
  }
  tlp::GeneratorConfig cfg;
  cfg.n = static_cast<int>(kv["n"]);
  cfg.m = static_cast<int>(kv["m"]);
  cfg.capacity = static_cast<int>(kv["C"]);
  cfg.min_tools = static_cast<int>(kv.count("min") ? kv["min"] : 1);
  cfg.max_tools = static_cast<int>(kv.count("max") ? kv["max"] : cfg.capacity);
  try {
    tlp::check_config(cfg);
  } catch (const tlp::Error& e) {
    throw InputError(e.what());
  }
  return cfg;
}

std::string state_line(const tlp::Instance& inst, std::vector<tlp::ToolId> tools) {
  std::vector<std::int64_t> ids;
  for (tlp::ToolId t : tools) ids.push_back(inst.original_id(t));
  std::sort(ids.begin(), ids.end());
  std::string line;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) line += ' ';
    line += std::to_string(ids[k]);
  }
  return line;
}

int cmd_solve(const std::string& path, const std::string& algorithm,
              const std::string& format, bool emit_states, bool emit_pipes,
              std::int64_t budget_flag) {
  const tlp::Instance inst = load(path, format_from(format));
  const std::int64_t budget = oracle_budget(budget_flag);
  tlp::SolveResult result;
  try {
    if (algorithm == "ktns") {
      result = tlp::ktns_solve(inst);
    } else if (algorithm == "oracle") {
      tlp::ExactResult exact = tlp::exact_min_switches(inst, budget);
      result.min_switches = exact.min_switches;
      result.pipes_count =
          inst.total_demand() - inst.effective_capacity() - exact.min_switches;
      result.sequence = std::move(exact.sequence);
    } else {
      result = tlp::solve(inst);
    }
  } catch (const tlp::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverError;
  }
  std::cout << "switches=" << result.min_switches << " pipes=" << result.pipes_count
            << '\n';
  if (emit_states) {
    for (tlp::Moment i = 1; i <= inst.n(); ++i) {
      std::cout << state_line(inst, result.sequence.sorted_state(i)) << '\n';
    }
  }
  if (emit_pipes) {
    for (const tlp::Pipe& p : tlp::enumerate_pipes(result.sequence, inst)) {
      std::cout << "pipe " << p.start << ' ' << p.end << ' ' << inst.original_id(p.tool)
                << '\n';
    }
  }
  return kOk;
}

int report_violation(const tlp::Instance& inst, const tlp::Violation& v,
                     const std::string& origin) {
  std::cerr << "property violated: " << v.property << " (" << v.detail << ") on "
            << origin << '\n';
  std::cout << tlp::write_canonical(inst);
  return kVerifyFailed;
}

int cmd_verify(const std::string& path, const std::string& random_spec, int trials,
               std::uint64_t seed, const std::string& format, std::int64_t budget_flag) {
  const std::int64_t budget = oracle_budget(budget_flag);
  if (!path.empty()) {
    const tlp::Instance inst = load(path, format_from(format));
    try {
      if (auto v = tlp::verify_instance(inst, budget)) {
        return report_violation(inst, *v, path);
      }
    } catch (const tlp::Error& e) {
      std::cerr << "solver error: " << e.what() << '\n';
      return kSolverError;
    }
    std::cerr << "ok: " << path << '\n';
    return kOk;
  }
  if (random_spec.empty()) throw InputError("verify needs an instance path or --random");
  tlp::GeneratorConfig cfg = parse_random_spec(random_spec);
  for (int k = 0; k < trials; ++k) {
    cfg.seed = seed + static_cast<std::uint64_t>(k);
    const tlp::Instance inst = tlp::generate(cfg);
    try {
      if (auto v = tlp::verify_instance(inst, budget)) {
        return report_violation(inst, *v, "trial " + std::to_string(k) + ", seed " +
                                              std::to_string(cfg.seed));
      }
    } catch (const tlp::Error& e) {
      std::cerr << "solver error on seed " << cfg.seed << ": " << e.what() << '\n';
      std::cout << tlp::write_canonical(inst);
      return e.kind() == tlp::ErrorKind::BudgetExceeded ? kSolverError : kVerifyFailed;
    }
  }
  std::cerr << "ok: " << trials << " trials\n";
  return kOk;
}

int cmd_bench(const std::string& config_path, const std::string& output_flag,
              bool table) {
  std::ifstream in(config_path);
  if (!in) throw InputError("cannot open bench config '" + config_path + "'");
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bench config: ") + e.what());
  }
  const auto base = std::filesystem::path(config_path).parent_path();
  std::vector<tlp::FamilySpec> specs;
  int threads = 1;
  std::string output;
  try {
    threads = cfg.value("threads", 1);
    output = cfg.value("output", std::string("-"));
    for (const auto& f : cfg.value("families", nlohmann::json::array())) {
      tlp::FamilySpec s;
      s.name = f.at("name").get<std::string>();
      s.permutations = f.value("permutations", 1);
      s.repeats = f.value("repeats", 1);
      s.seed = f.value("seed", cfg.value("seed", std::uint64_t{0}));
      if (f.contains("dataset")) {
        auto p = std::filesystem::path(f.at("dataset").get<std::string>());
        if (p.is_relative()) p = base / p;
        if (!std::filesystem::exists(p)) {
          throw InputError("dataset not found: " + p.string());
        }
        s.dataset = p.string();
      } else {
        tlp::GeneratorConfig g;
        g.n = f.at("n").get<int>();
        g.m = f.at("m").get<int>();
        g.capacity = f.at("C").get<int>();
        g.min_tools = f.value("min_tools", 1);
        g.max_tools = f.value("max_tools", g.capacity);
        g.seed = s.seed;
        tlp::check_config(g);
        s.generator = g;
      }
      specs.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bench config: ") + e.what());
  } catch (const tlp::Error& e) {
    throw InputError(std::string("bench config: ") + e.what());
  }
  if (!output_flag.empty()) output = output_flag;
  else if (output != "-" && std::filesystem::path(output).is_relative()) {
    output = (base / output).string();
  }

  tlp::BenchReport report;
  try {
    report = tlp::run_families(specs, threads);
  } catch (const tlp::Error& e) {
    std::cerr << "bench failed: " << e.what() << '\n';
    return e.kind() == tlp::ErrorKind::ObjectiveMismatch ? kSolverError : kInputError;
  }
  write_output(output, tlp::emit_csv(report));
  if (table) std::cout << tlp::format_table(report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tool loading problem solvers"};
  app.require_subcommand(1);

  std::string path, algorithm = "gpca", format = "auto";
  bool emit_states = false, emit_pipes = false;
  std::int64_t budget = 0;
  auto* solve = app.add_subcommand("solve", "Optimal switch count for a job sequence");
  solve->add_option("path", path, "Instance file")->required();
  solve->add_option("--algorithm", algorithm)
      ->check(CLI::IsMember({"gpca", "ktns", "oracle"}));
  solve->add_option("--format", format)->check(CLI::IsMember({"auto", "canonical", "incidence"}));
  solve->add_flag("--emit-states", emit_states, "Print one sorted state per moment");
  solve->add_flag("--emit-pipes", emit_pipes, "Print the pipes of the solution");
  solve->add_option("--budget", budget, "Oracle DP cell budget");

  std::string random_spec;
  int trials = 100;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Cross-check GPCA, KTNS and the exact oracle");
  verify->add_option("path", path, "Instance file");
  verify->add_option("--random", random_spec, "Random corpus, e.g. n=5,m=7,C=4");
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--format", format)->check(CLI::IsMember({"auto", "canonical", "incidence"}));
  verify->add_option("--budget", budget, "Oracle DP cell budget");

  std::string config, output;
  bool table = false;
  auto* bench = app.add_subcommand("bench", "Timing comparison driven by a JSON config");
  bench->add_option("config", config, "Bench config (JSON)")->required();
  bench->add_option("-o,--output", output, "CSV path, overrides the config");
  bench->add_flag("--table", table, "Also print a table to stdout");

  tlp::GeneratorConfig gen_cfg{10, 10, 4, 1, 0, 42};
  auto* gen = app.add_subcommand("gen", "Write a random instance in canonical form");
  gen->add_option("--n", gen_cfg.n)->required();
  gen->add_option("--m", gen_cfg.m)->required();
  gen->add_option("--C", gen_cfg.capacity)->required();
  gen->add_option("--min-tools", gen_cfg.min_tools);
  gen->add_option("--max-tools", gen_cfg.max_tools, "Defaults to C");
  gen->add_option("--seed", gen_cfg.seed);
  gen->add_option("-o,--output", output);

  std::string to = "canonical";
  auto* convert = app.add_subcommand("convert", "Transcode between instance formats");
  convert->add_option("path", path, "Instance file")->required();
  convert->add_option("--to", to)->check(CLI::IsMember({"canonical", "incidence"}));
  convert->add_option("--from", format)->check(CLI::IsMember({"auto", "canonical", "incidence"}));
  convert->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*solve) return cmd_solve(path, algorithm, format, emit_states, emit_pipes, budget);
    if (*verify) return cmd_verify(path, random_spec, trials, seed, format, budget);
    if (*bench) return cmd_bench(config, output, table);
    if (*gen) {
      if (gen_cfg.max_tools == 0) gen_cfg.max_tools = gen_cfg.capacity;
      tlp::Instance inst = [&] {
        try {
          return tlp::generate(gen_cfg);
        } catch (const tlp::Error& e) {
          throw InputError(e.what());
        }
      }();
      write_output(output, tlp::write_canonical(inst));
      return kOk;
    }
    if (*convert) {
      const tlp::Instance inst = load(path, format_from(format));
      write_output(output, to == "incidence" ? tlp::write_incidence(inst)
                                             : tlp::write_canonical(inst));
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const tlp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverError;
  }
  return kOk;
}
