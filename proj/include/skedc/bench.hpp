#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "skedc/parse.hpp"
#include "skedc/solver.hpp"

namespace skedc {

// One result line of the benchmark table. makespan is the proven optimum,
// best_solution the incumbent; "-" marks an absent value, so Optimal rows
// carry the same text in both columns.
struct BenchRow {
  std::string name;
  std::string makespan = "-";
  std::string best_solution = "-";
  std::string status;
  double wall_time = 0.0;
};

struct BenchOptions {
  double time_limit_seconds = 100.0;
  int workers = 1;
};

namespace detail {

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline std::string format_seconds(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", t);
  return buf;
}

}  // namespace detail

inline BenchRow run_bench_case(const std::filesystem::path& fjs, const BenchOptions& opt) {
  BenchRow row;
  row.name = fjs.stem().string();
  auto text = detail::read_file(fjs);
  if (!text) {
    row.status = "ParseError";
    return row;
  }
  Instance in;
  std::vector<ScenarioConstraint> cs;
  try {
    in = parse_fjs(*text);
    std::filesystem::path sidecar = fjs;
    sidecar.replace_extension(".sched");
    if (std::filesystem::exists(sidecar)) {
      auto side = detail::read_file(sidecar);
      if (!side) {
        row.status = "ParseError";
        return row;
      }
      cs = parse_constraints(*side);
    }
  } catch (const ParseError&) {
    row.status = "ParseError";
    return row;
  }
  if (!validate_instance(in).empty() || !validate_constraints(in, cs).empty()) {
    row.status = "Invalid";
    return row;
  }
  SolveParams params;
  params.time_limit_seconds = opt.time_limit_seconds;
  params.workers = opt.workers;
  params.canonicalize = opt.workers > 1;
  SolveReport rep = branch_and_bound(in, cs, params);
  row.status = status_text(rep.status);
  row.wall_time = rep.wall_time_seconds;
  if (rep.best) {
    if (!verify_schedule(in, cs, *rep.best).empty()) {
      row.status = "VerifyFailed";
      return row;
    }
    row.best_solution = rep.best->makespan.str();
    if (rep.status == SolveStatus::Optimal) row.makespan = rep.best->makespan.str();
  }
  return row;
}

// Every .fjs in the directory is a case; <name>.sched next to it supplies
// scenario constraints. Rows come back ordered by case name.
inline std::vector<BenchRow> run_bench(const std::filesystem::path& dir,
                                       const BenchOptions& opt = {}) {
  std::vector<std::filesystem::path> cases;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".fjs")
      cases.push_back(entry.path());
  std::sort(cases.begin(), cases.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  std::vector<BenchRow> rows;
  for (const auto& c : cases) rows.push_back(run_bench_case(c, opt));
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "case,makespan,best_solution,status,wall_time\n";
  for (const auto& r : rows)
    out += r.name + "," + r.makespan + "," + r.best_solution + "," + r.status + "," +
           detail::format_seconds(r.wall_time) + "\n";
  return out;
}

// Inverse of bench_csv for the emitted format; wall_time keeps the printed
// millisecond precision.
inline std::vector<BenchRow> parse_bench_csv(const std::string& text) {
  std::vector<BenchRow> rows;
  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line) || line != "case,makespan,best_solution,status,wall_time")
    throw std::runtime_error("bench CSV: missing header");
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t pos = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(pos));
        break;
      }
      cells.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (cells.size() != 5) throw std::runtime_error("bench CSV: expected 5 cells per row");
    BenchRow r;
    r.name = cells[0];
    r.makespan = cells[1];
    r.best_solution = cells[2];
    r.status = cells[3];
    try {
      r.wall_time = std::stod(cells[4]);
    } catch (const std::exception&) {
      throw std::runtime_error("bench CSV: malformed wall_time \"" + cells[4] + "\"");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string bench_text(const std::vector<BenchRow>& rows) {
  const std::array<std::string, 5> head = {"case", "makespan", "best_solution", "status",
                                           "wall_time"};
  std::vector<std::array<std::string, 5>> cells;
  for (const auto& r : rows)
    cells.push_back({r.name, r.makespan, r.best_solution, r.status,
                     detail::format_seconds(r.wall_time)});
  std::array<size_t, 5> width{};
  for (size_t c = 0; c < 5; ++c) width[c] = head[c].size();
  for (const auto& row : cells)
    for (size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
  auto emit = [&](const std::array<std::string, 5>& row) {
    std::string line;
    for (size_t c = 0; c < 5; ++c) {
      line += row[c];
      if (c + 1 < 5) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    return line + "\n";
  };
  std::string out = emit(head);
  for (const auto& row : cells) out += emit(row);
  return out;
}

}  // namespace skedc
