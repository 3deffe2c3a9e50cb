#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "skedc/instance.hpp"

namespace skedc {

// Knobs for random instances. Defaults give the small fuzzing shape:
// up to 3 jobs, 3 subtasks, 3 machines, times in [1,9], each constraint
// family present with probability 0.3.
struct GenConfig {
  int min_jobs = 1, max_jobs = 3;
  int min_subtasks = 1, max_subtasks = 3;
  int min_machines = 1, max_machines = 3;
  long long min_time = 1, max_time = 9;
  int max_eligible = 0;  // 0 means up to the machine count
  double family_prob = 0.3;
};

namespace detail {

// Rejection-sampled bounded draw; identical sequences on every platform.
inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  unsigned long long range = static_cast<unsigned long long>(hi - lo) + 1;
  unsigned long long limit = ~0ULL - ~0ULL % range;
  unsigned long long draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<long long>(draw % range);
}

inline bool coin(std::mt19937_64& rng, double p) {
  return uniform_int(rng, 0, 999) < static_cast<long long>(p * 1000.0 + 0.5);
}

}  // namespace detail

inline Instance random_instance(std::mt19937_64& rng, const GenConfig& cfg = {}) {
  Instance in;
  in.machine_count = static_cast<int>(detail::uniform_int(rng, cfg.min_machines, cfg.max_machines));
  int jobs = static_cast<int>(detail::uniform_int(rng, cfg.min_jobs, cfg.max_jobs));
  int cap = cfg.max_eligible > 0 ? std::min(cfg.max_eligible, in.machine_count)
                                 : in.machine_count;
  std::vector<int> pool(in.machine_count);
  for (int k = 0; k < in.machine_count; ++k) pool[k] = k + 1;
  in.jobs.resize(jobs);
  for (auto& job : in.jobs) {
    int n_i = static_cast<int>(detail::uniform_int(rng, cfg.min_subtasks, cfg.max_subtasks));
    job.subtasks.resize(n_i);
    for (auto& sub : job.subtasks) {
      int width = static_cast<int>(detail::uniform_int(rng, 1, cap));
      for (int p = 0; p < width; ++p) {
        int swap = static_cast<int>(detail::uniform_int(rng, p, in.machine_count - 1));
        std::swap(pool[p], pool[swap]);
      }
      std::vector<int> chosen(pool.begin(), pool.begin() + width);
      std::sort(chosen.begin(), chosen.end());
      for (int k : chosen)
        sub.options.push_back({k, detail::uniform_int(rng, cfg.min_time, cfg.max_time)});
    }
  }
  return in;
}

// At most one constraint per family, each present with cfg.family_prob and
// parameterized so the constraint is satisfiable on its own. Families that
// need structure the instance lacks (gaps without a second subtask, sync
// without a pair of jobs whose last subtasks can run apart) are skipped.
inline std::vector<ScenarioConstraint> random_constraints(std::mt19937_64& rng,
                                                          const Instance& in,
                                                          const GenConfig& cfg = {}) {
  std::vector<ScenarioConstraint> cs;
  int n = in.job_count();
  if (n == 0) return cs;

  auto pick_job = [&] { return static_cast<int>(detail::uniform_int(rng, 1, n)); };
  std::vector<int> with_chain;
  for (int i0 = 0; i0 < n; ++i0)
    if (in.jobs[i0].subtasks.size() >= 2) with_chain.push_back(i0 + 1);

  if (detail::coin(rng, cfg.family_prob))
    cs.push_back(Release{pick_job(), detail::uniform_int(rng, 0, 15)});

  if (detail::coin(rng, cfg.family_prob)) {
    int i = pick_job();
    long long chain_min = 0;
    for (const auto& sub : in.jobs[i - 1].subtasks) chain_min += sub.min_time();
    cs.push_back(Deadline{i, chain_min + detail::uniform_int(rng, 0, 10)});
  }

  if (detail::coin(rng, cfg.family_prob)) {
    long long t1 = detail::uniform_int(rng, 0, 10);
    cs.push_back(Window{pick_job(), t1, t1 + detail::uniform_int(rng, 0, 10)});
  }

  if (!with_chain.empty() && detail::coin(rng, cfg.family_prob)) {
    int i = with_chain[detail::uniform_int(rng, 0, with_chain.size() - 1)];
    int j = static_cast<int>(
        detail::uniform_int(rng, 1, in.jobs[i - 1].subtasks.size() - 1));
    cs.push_back(MinGap{i, j, detail::uniform_int(rng, 0, 10)});
  }

  if (!with_chain.empty() && detail::coin(rng, cfg.family_prob)) {
    int i = with_chain[detail::uniform_int(rng, 0, with_chain.size() - 1)];
    int j = static_cast<int>(
        detail::uniform_int(rng, 1, in.jobs[i - 1].subtasks.size() - 1));
    cs.push_back(MaxGap{i, j, detail::uniform_int(rng, 0, 10)});
  }

  if (detail::coin(rng, cfg.family_prob)) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const auto& la = in.jobs[a].subtasks.back().options;
        const auto& lb = in.jobs[b].subtasks.back().options;
        bool apart = false;
        for (const auto& oa : la)
          for (const auto& ob : lb)
            if (oa.machine != ob.machine) apart = true;
        if (apart) pairs.emplace_back(a + 1, b + 1);
      }
    if (!pairs.empty()) {
      auto [a, b] = pairs[detail::uniform_int(rng, 0, pairs.size() - 1)];
      cs.push_back(Sync{a, b});
    }
  }
  return cs;
}

}  // namespace skedc
