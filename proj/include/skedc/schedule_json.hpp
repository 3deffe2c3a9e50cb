#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skedc/instance.hpp"
#include "skedc/lp_writer.hpp"
#include "skedc/rational.hpp"

namespace skedc {

namespace detail {

inline Rational rational_from_json(const nlohmann::json& v, const char* where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    size_t slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error(std::string(where) + ": malformed rational \"" + s + "\"");
    }
  }
  throw std::runtime_error(std::string(where) + ": expected integer or \"p/q\" string");
}

}  // namespace detail

inline std::string write_schedule_json(const Schedule& s) {
  nlohmann::ordered_json j;
  j["makespan"] = json_number(s.makespan);
  j["items"] = nlohmann::ordered_json::array();
  for (size_t i0 = 0; i0 < s.assignments.size(); ++i0)
    for (size_t j0 = 0; j0 < s.assignments[i0].size(); ++j0) {
      const ScheduleEntry& e = s.assignments[i0][j0];
      nlohmann::ordered_json item;
      item["i"] = static_cast<long long>(i0 + 1);
      item["j"] = static_cast<long long>(j0 + 1);
      item["k"] = e.machine;
      item["start"] = json_number(e.start);
      item["end"] = json_number(e.end);
      j["items"].push_back(std::move(item));
    }
  return j.dump(2) + "\n";
}

// Strict reader for the writer's format: items must tile jobs 1..n with
// subtasks 1..n_i, each exactly once. Throws std::runtime_error otherwise.
inline Schedule parse_schedule_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed schedule JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("makespan") || !j.contains("items") ||
      !j["items"].is_array())
    throw std::runtime_error("malformed schedule JSON: expected {makespan, items}");
  Schedule s;
  s.makespan = detail::rational_from_json(j["makespan"], "makespan");
  struct Row {
    int i, j, k;
    Rational start, end;
  };
  std::vector<Row> rows;
  int max_i = 0;
  for (const auto& item : j["items"]) {
    if (!item.is_object() || !item.contains("i") || !item.contains("j") ||
        !item.contains("k") || !item.contains("start") || !item.contains("end"))
      throw std::runtime_error("malformed schedule JSON: item needs i, j, k, start, end");
    if (!item["i"].is_number_integer() || !item["j"].is_number_integer() ||
        !item["k"].is_number_integer())
      throw std::runtime_error("malformed schedule JSON: i, j, k must be integers");
    Row r{item["i"].get<int>(), item["j"].get<int>(), item["k"].get<int>(),
          detail::rational_from_json(item["start"], "start"),
          detail::rational_from_json(item["end"], "end")};
    if (r.i < 1 || r.j < 1 || r.k < 1)
      throw std::runtime_error("malformed schedule JSON: indices must be positive");
    max_i = std::max(max_i, r.i);
    rows.push_back(std::move(r));
  }
  std::vector<int> max_j(max_i, 0);
  for (const auto& r : rows) max_j[r.i - 1] = std::max(max_j[r.i - 1], r.j);
  s.assignments.resize(max_i);
  std::vector<std::vector<char>> seen(max_i);
  for (int i0 = 0; i0 < max_i; ++i0) {
    if (max_j[i0] == 0)
      throw std::runtime_error("malformed schedule JSON: job " + std::to_string(i0 + 1) +
                               " has no items");
    s.assignments[i0].resize(max_j[i0]);
    seen[i0].assign(max_j[i0], 0);
  }
  for (const auto& r : rows) {
    if (seen[r.i - 1][r.j - 1]++)
      throw std::runtime_error("malformed schedule JSON: duplicate item " + std::to_string(r.i) +
                               "." + std::to_string(r.j));
    s.assignments[r.i - 1][r.j - 1] = {r.k, r.start, r.end};
  }
  for (int i0 = 0; i0 < max_i; ++i0)
    for (int j0 = 0; j0 < max_j[i0]; ++j0)
      if (!seen[i0][j0])
        throw std::runtime_error("malformed schedule JSON: missing item " +
                                 std::to_string(i0 + 1) + "." + std::to_string(j0 + 1));
  return s;
}

}  // namespace skedc
