#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "skedc/bench.hpp"
#include "skedc/gantt.hpp"
#include "skedc/lp_writer.hpp"
#include "skedc/milp.hpp"
#include "skedc/parse.hpp"
#include "skedc/schedule_json.hpp"
#include "skedc/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kParse = 2;
constexpr int kInfeasible = 3;
constexpr int kTimeout = 4;

struct Case {
  skedc::Instance in;
  std::vector<skedc::ScenarioConstraint> cs;
};

// Parses instance and optional constraint file; exit-code style result,
// 0 meaning loaded. Parse diagnostics go to stderr as path:line:col: text.
int load_case(const std::string& instance_path, const std::string& constraints_path, Case& out) {
  auto text = skedc::detail::read_file(instance_path);
  if (!text) {
    std::cerr << instance_path << ": cannot read file\n";
    return kParse;
  }
  try {
    out.in = skedc::parse_fjs(*text);
  } catch (const skedc::ParseError& e) {
    std::cerr << instance_path << ":" << e.what() << "\n";
    return kParse;
  }
  if (!constraints_path.empty()) {
    auto ctext = skedc::detail::read_file(constraints_path);
    if (!ctext) {
      std::cerr << constraints_path << ": cannot read file\n";
      return kParse;
    }
    try {
      out.cs = skedc::parse_constraints(*ctext);
    } catch (const skedc::ParseError& e) {
      std::cerr << constraints_path << ":" << e.what() << "\n";
      return kParse;
    }
  }
  return kOk;
}

int report_violations(const std::vector<skedc::Violation>& vs) {
  for (const auto& v : vs) std::cout << v.code << ": " << v.message << "\n";
  return vs.empty() ? kOk : kViolation;
}

int load_valid_case(const std::string& instance_path, const std::string& constraints_path,
                    Case& out) {
  int rc = load_case(instance_path, constraints_path, out);
  if (rc != kOk) return rc;
  auto vs = skedc::validate_instance(out.in);
  auto cvs = skedc::validate_constraints(out.in, out.cs);
  vs.insert(vs.end(), cvs.begin(), cvs.end());
  return report_violations(vs);
}

int worker_count(int flag_value) {
  if (const char* env = std::getenv("SKEDC_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return flag_value;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << content;
  return f.good();
}

int cmd_validate(const std::string& instance_path, const std::string& constraints_path) {
  Case c;
  return load_valid_case(instance_path, constraints_path, c);
}

int cmd_build(const std::string& instance_path, const std::string& constraints_path,
              const std::string& emit, const std::string& out_path) {
  Case c;
  int rc = load_valid_case(instance_path, constraints_path, c);
  if (rc != kOk) return rc;
  skedc::MilpModel model = skedc::build_model(c.in, c.cs);

  std::string artifact;
  try {
    artifact = emit == "json" ? skedc::write_json(model) : skedc::write_lp(model);
  } catch (const skedc::UnrepresentableCoefficient& e) {
    std::cerr << "cannot emit: " << e.what() << "\n";
    return kViolation;
  }
  if (!write_file(out_path, artifact)) {
    std::cerr << out_path << ": cannot write file\n";
    return kViolation;
  }

  std::map<std::string, long long> var_count;
  std::vector<std::string> var_order;
  for (const auto& v : model.vars) {
    std::string key;
    switch (v.sym) {
      case skedc::Var::Sym::B: key = "B"; break;
      case skedc::Var::Sym::X: key = "X"; break;
      case skedc::Var::Sym::Y: key = "Y"; break;
      case skedc::Var::Sym::Cmax: key = "Cmax"; break;
    }
    if (!var_count.count(key)) var_order.push_back(key);
    ++var_count[key];
  }
  std::cout << "vars " << model.vars.size() << " (";
  for (size_t p = 0; p < var_order.size(); ++p)
    std::cout << (p ? ", " : "") << var_order[p] << " " << var_count[var_order[p]];
  std::cout << ")\n";

  std::map<std::string, long long> row_count;
  std::vector<std::string> row_order;
  for (const auto& r : model.constraints) {
    std::string key = skedc::family_label(r.family);
    if (!row_count.count(key)) row_order.push_back(key);
    ++row_count[key];
  }
  std::cout << "rows " << model.constraints.size() << " (";
  for (size_t p = 0; p < row_order.size(); ++p)
    std::cout << (p ? ", " : "") << row_order[p] << " " << row_count[row_order[p]];
  std::cout << ")\n";
  return kOk;
}

int cmd_solve(const std::string& instance_path, const std::string& constraints_path,
              double time_limit, bool oracle, bool canonicalize, int workers,
              std::string out_path) {
  Case c;
  int rc = load_valid_case(instance_path, constraints_path, c);
  if (rc != kOk) return rc;

  skedc::SolveReport rep;
  if (oracle) {
    try {
      rep = skedc::brute_force(c.in, c.cs);
    } catch (const skedc::OracleTooLarge& e) {
      std::cerr << "oracle refused: " << e.what() << "\n";
      return kViolation;
    }
  } else {
    skedc::SolveParams params;
    params.time_limit_seconds = time_limit;
    params.workers = worker_count(workers);
    params.canonicalize = canonicalize;
    rep = skedc::branch_and_bound(c.in, c.cs, params);
  }

  if (rep.best) {
    auto vs = skedc::verify_schedule(c.in, c.cs, *rep.best);
    if (!vs.empty()) {
      for (const auto& v : vs) std::cerr << v.code << ": " << v.message << "\n";
      return kViolation;
    }
    if (out_path.empty()) {
      std::filesystem::path p(instance_path);
      p.replace_extension(".schedule.json");
      out_path = p.string();
    }
    if (!write_file(out_path, skedc::write_schedule_json(*rep.best))) {
      std::cerr << out_path << ": cannot write file\n";
      return kViolation;
    }
  }

  std::cout << skedc::status_text(rep.status);
  if (rep.best) std::cout << " " << rep.best->makespan.str();
  std::cout << "\n";
  std::cout << "bound " << rep.lower_bound.str() << "\n";
  std::cout << "nodes " << rep.nodes << "\n";
  std::cout << "time " << skedc::detail::format_seconds(rep.wall_time_seconds) << "s\n";
  for (const auto& w : rep.witness) std::cout << "witness: " << w << "\n";

  switch (rep.status) {
    case skedc::SolveStatus::Infeasible: return kInfeasible;
    case skedc::SolveStatus::TimeLimit: return kTimeout;
    default: return kOk;
  }
}

int cmd_bench(const std::string& dir, double time_limit, const std::string& format, int workers) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    std::cerr << dir << ": not a directory\n";
    return kParse;
  }
  skedc::BenchOptions opt;
  opt.time_limit_seconds = time_limit;
  opt.workers = worker_count(workers);
  auto rows = skedc::run_bench(dir, opt);
  std::cout << (format == "csv" ? skedc::bench_csv(rows) : skedc::bench_text(rows));
  for (const auto& r : rows)
    if (r.status == "ParseError") return kParse;
  return kOk;
}

int cmd_gantt(const std::string& schedule_path, const std::string& format,
              const std::string& out_path, const std::string& instance_path,
              const std::string& constraints_path) {
  auto text = skedc::detail::read_file(schedule_path);
  if (!text) {
    std::cerr << schedule_path << ": cannot read file\n";
    return kParse;
  }
  skedc::Schedule s;
  try {
    s = skedc::parse_schedule_json(*text);
  } catch (const std::runtime_error& e) {
    std::cerr << schedule_path << ": " << e.what() << "\n";
    return kParse;
  }
  if (!instance_path.empty()) {
    Case c;
    int rc = load_valid_case(instance_path, constraints_path, c);
    if (rc != kOk) return rc;
    auto vs = skedc::verify_schedule(c.in, c.cs, s);
    if (!vs.empty()) return report_violations(vs);
  }
  std::string rendered = format == "svg" ? skedc::gantt_svg(s) : skedc::gantt_text(s);
  if (out_path.empty()) {
    std::cout << rendered;
  } else if (!write_file(out_path, rendered)) {
    std::cerr << out_path << ": cannot write file\n";
    return kViolation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scheduling model compiler and exact solver"};
  app.require_subcommand(1);

  std::string instance_path, constraints_path, out_path, emit = "lp", format;
  double time_limit = 100.0;
  bool oracle = false, canonicalize = false;
  int workers = 1;

  CLI::App* validate = app.add_subcommand("validate", "check an instance and constraints");
  validate->add_option("instance", instance_path, "instance file (.fjs)")->required();
  validate->add_option("constraints", constraints_path, "constraint file (.sched)");

  CLI::App* build = app.add_subcommand("build", "compile the model and write LP or JSON");
  build->add_option("instance", instance_path, "instance file (.fjs)")->required();
  build->add_option("constraints", constraints_path, "constraint file (.sched)");
  build->add_option("--emit", emit, "artifact kind")
      ->check(CLI::IsMember({"lp", "json"}))
      ->capture_default_str();
  build->add_option("--out", out_path, "output path")->required();

  CLI::App* solve = app.add_subcommand("solve", "find a provably optimal schedule");
  solve->add_option("instance", instance_path, "instance file (.fjs)")->required();
  solve->add_option("constraints", constraints_path, "constraint file (.sched)");
  solve->add_option("--time-limit", time_limit, "seconds before giving up")
      ->capture_default_str();
  solve->add_flag("--oracle", oracle, "use exhaustive enumeration instead of branch and bound");
  solve->add_flag("--canonicalize", canonicalize,
                  "rewrite a parallel result as the single-worker schedule");
  solve->add_option("--workers", workers, "search threads (SKEDC_THREADS overrides)")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  solve->add_option("--out", out_path, "schedule JSON path (default: instance stem)");

  CLI::App* bench = app.add_subcommand("bench", "solve every case in a directory");
  bench->add_option("dir", instance_path, "directory of .fjs cases")->required();
  bench->add_option("--time-limit", time_limit, "seconds per case")->capture_default_str();
  bench->add_option("--format", format, "table format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->default_val("text");
  bench->add_option("--workers", workers, "search threads (SKEDC_THREADS overrides)")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  CLI::App* gantt = app.add_subcommand("gantt", "render a schedule JSON as text or SVG");
  gantt->add_option("schedule", instance_path, "schedule JSON path")->required();
  gantt->add_option("--format", format, "rendering")
      ->check(CLI::IsMember({"text", "svg"}))
      ->default_val("text");
  gantt->add_option("--out", out_path, "write rendering here instead of stdout");
  gantt->add_option("--instance", constraints_path, "verify against this instance first");
  std::string gantt_cs;
  gantt->add_option("--constraints", gantt_cs, "constraints for verification");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(validate)) return cmd_validate(instance_path, constraints_path);
  if (app.got_subcommand(build)) return cmd_build(instance_path, constraints_path, emit, out_path);
  if (app.got_subcommand(solve))
    return cmd_solve(instance_path, constraints_path, time_limit, oracle, canonicalize, workers,
                     out_path);
  if (app.got_subcommand(bench)) return cmd_bench(instance_path, time_limit, format, workers);
  if (app.got_subcommand(gantt))
    return cmd_gantt(instance_path, format, out_path, constraints_path, gantt_cs);
  return kOk;
}
