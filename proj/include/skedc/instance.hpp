#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "skedc/rational.hpp"

namespace skedc {

// Core domain types for flexible job-shop instances with scenario
// constraints. Jobs are chains of subtasks; each subtask picks one machine
// from its eligible option list. Storage is 0-based; every external format
// and every message uses 1-based job/subtask/machine indices.

struct MachineOption {
  int machine = 0;       // 1..m
  long long time = 0;    // processing time, integer units
  friend bool operator==(const MachineOption&, const MachineOption&) = default;
};

struct Subtask {
  std::vector<MachineOption> options;  // file order preserved; machines distinct
  long long min_time() const {
    long long best = options.front().time;
    for (const auto& o : options) best = std::min(best, o.time);
    return best;
  }
  long long max_time() const {
    long long best = options.front().time;
    for (const auto& o : options) best = std::max(best, o.time);
    return best;
  }
  // Processing time on machine k, or -1 when k is not eligible.
  long long time_on(int k) const {
    for (const auto& o : options)
      if (o.machine == k) return o.time;
    return -1;
  }
  friend bool operator==(const Subtask&, const Subtask&) = default;
};

struct Job {
  std::vector<Subtask> subtasks;  // list order is the mandatory processing order
  friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
  std::vector<Job> jobs;
  int machine_count = 0;

  int job_count() const { return static_cast<int>(jobs.size()); }
  int total_subtasks() const {
    int n = 0;
    for (const auto& j : jobs) n += static_cast<int>(j.subtasks.size());
    return n;
  }
  friend bool operator==(const Instance&, const Instance&) = default;
};

// The six scenario constraint families. Indices are 1-based, matching the
// constraint file grammar. For MinGap/MaxGap, j names the subtask after
// whose completion the gap to subtask j+1 is measured.
struct Release {
  int job = 0;
  long long t = 0;
  friend bool operator==(const Release&, const Release&) = default;
};
struct Deadline {
  int job = 0;
  long long t = 0;
  friend bool operator==(const Deadline&, const Deadline&) = default;
};
struct Window {
  int job = 0;
  long long t1 = 0;
  long long t2 = 0;
  friend bool operator==(const Window&, const Window&) = default;
};
struct MinGap {
  int job = 0;
  int subtask = 0;
  long long t = 0;
  friend bool operator==(const MinGap&, const MinGap&) = default;
};
struct MaxGap {
  int job = 0;
  int subtask = 0;
  long long t = 0;
  friend bool operator==(const MaxGap&, const MaxGap&) = default;
};
struct Sync {
  int job_a = 0;
  int job_b = 0;
  friend bool operator==(const Sync&, const Sync&) = default;
};

using ScenarioConstraint = std::variant<Release, Deadline, Window, MinGap, MaxGap, Sync>;

// One assigned subtask in a schedule.
struct ScheduleEntry {
  int machine = 0;
  Rational start;
  Rational end;
  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct Schedule {
  std::vector<std::vector<ScheduleEntry>> assignments;  // [job][subtask]
  Rational makespan;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Violations are data, not failures: validation and the schedule verifier
// report every broken invariant with a stable machine-readable code plus a
// human message.
struct Violation {
  std::string code;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {
inline std::string ij(int i, int j) {
  return "job " + std::to_string(i) + " subtask " + std::to_string(j);
}
}  // namespace detail

inline std::vector<Violation> validate_instance(const Instance& in) {
  std::vector<Violation> out;
  if (in.machine_count < 1)
    out.push_back({"NoMachines", "machine_count must be >= 1, got " +
                                     std::to_string(in.machine_count)});
  if (in.jobs.empty()) out.push_back({"NoJobs", "instance has no jobs"});
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    const Job& job = in.jobs[i0];
    int i = i0 + 1;
    if (job.subtasks.empty()) {
      out.push_back({"NoSubtasks", "job " + std::to_string(i) + " has no subtasks"});
      continue;
    }
    for (int j0 = 0; j0 < static_cast<int>(job.subtasks.size()); ++j0) {
      const Subtask& st = job.subtasks[j0];
      int j = j0 + 1;
      if (st.options.empty()) {
        out.push_back({"EmptyEligibleSet",
                       detail::ij(i, j) + ": eligible machine set is empty"});
        continue;
      }
      std::vector<int> seen;
      for (const auto& opt : st.options) {
        if (opt.machine < 1 || opt.machine > in.machine_count)
          out.push_back({"MachineOutOfRange",
                         detail::ij(i, j) + ": machine " + std::to_string(opt.machine) +
                             " outside 1.." + std::to_string(in.machine_count)});
        else if (std::find(seen.begin(), seen.end(), opt.machine) != seen.end())
          out.push_back({"DuplicateMachine",
                         detail::ij(i, j) + ": machine " + std::to_string(opt.machine) +
                             " listed twice in eligible set"});
        else
          seen.push_back(opt.machine);
        if (opt.time <= 0)
          out.push_back({"NonPositiveTime",
                         detail::ij(i, j) + ": processing time " + std::to_string(opt.time) +
                             " on machine " + std::to_string(opt.machine) +
                             " must be positive"});
      }
    }
  }
  return out;
}

inline std::vector<Violation> validate_constraints(const Instance& in,
                                                   const std::vector<ScenarioConstraint>& cs) {
  std::vector<Violation> out;
  auto job_ok = [&](int i) { return i >= 1 && i <= in.job_count(); };
  auto bad_job = [&](int i, const char* fam) {
    out.push_back({"JobOutOfRange", std::string(fam) + ": job " + std::to_string(i) +
                                        " outside 1.." + std::to_string(in.job_count())});
  };
  auto check_gap = [&](int i, int j, const char* fam) {
    if (!job_ok(i)) {
      bad_job(i, fam);
      return;
    }
    int n_i = static_cast<int>(in.jobs[i - 1].subtasks.size());
    if (j < 1 || j > n_i)
      out.push_back({"SubtaskOutOfRange", std::string(fam) + ": " + detail::ij(i, j) +
                                              " outside 1.." + std::to_string(n_i)});
    else if (j == n_i)
      out.push_back({"NoNextSubtask", std::string(fam) + ": subtask " + std::to_string(j) +
                                          " is the last of job " + std::to_string(i) +
                                          "; no next subtask to bound"});
  };
  auto neg = [&](long long t, const char* fam) {
    if (t < 0)
      out.push_back({"NegativeTime",
                     std::string(fam) + ": t = " + std::to_string(t) + " must be >= 0"});
  };
  for (const auto& c : cs) {
    if (const auto* r = std::get_if<Release>(&c)) {
      if (!job_ok(r->job)) bad_job(r->job, "release");
      neg(r->t, "release");
    } else if (const auto* d = std::get_if<Deadline>(&c)) {
      if (!job_ok(d->job)) bad_job(d->job, "deadline");
      if (d->t <= 0)
        out.push_back({"NonPositiveDeadline",
                       "deadline: t = " + std::to_string(d->t) + " must be positive"});
    } else if (const auto* w = std::get_if<Window>(&c)) {
      if (!job_ok(w->job)) bad_job(w->job, "window");
      neg(w->t1, "window");
      neg(w->t2, "window");
      if (w->t1 > w->t2)
        out.push_back({"WindowReversed", "window: t1 = " + std::to_string(w->t1) +
                                             " exceeds t2 = " + std::to_string(w->t2)});
    } else if (const auto* g = std::get_if<MinGap>(&c)) {
      check_gap(g->job, g->subtask, "min_gap");
      neg(g->t, "min_gap");
    } else if (const auto* g2 = std::get_if<MaxGap>(&c)) {
      check_gap(g2->job, g2->subtask, "max_gap");
      neg(g2->t, "max_gap");
    } else if (const auto* s = std::get_if<Sync>(&c)) {
      if (!job_ok(s->job_a)) bad_job(s->job_a, "sync");
      if (!job_ok(s->job_b)) bad_job(s->job_b, "sync");
      if (s->job_a == s->job_b)
        out.push_back({"SyncSameJob",
                       "sync: jobs must be distinct, both are " + std::to_string(s->job_a)});
    }
  }
  return out;
}

// Finite stand-in for the formulation's "extremely large" big-M:
//   H = sum of per-subtask worst-case times + all min/max gap allowances
//       + the largest release / window-start / deadline offset.
// H bounds every start and completion of at least one optimal schedule,
// so it is safe both as big-M and as a search horizon.
inline long long horizon(const Instance& in, const std::vector<ScenarioConstraint>& cs) {
  long long h = 0;
  for (const auto& job : in.jobs)
    for (const auto& st : job.subtasks) h += st.max_time();
  long long offset = 0;
  for (const auto& c : cs) {
    if (const auto* g = std::get_if<MinGap>(&c)) h += g->t;
    if (const auto* g = std::get_if<MaxGap>(&c)) h += g->t;
    if (const auto* r = std::get_if<Release>(&c)) offset = std::max(offset, r->t);
    if (const auto* w = std::get_if<Window>(&c)) offset = std::max(offset, w->t2);
    if (const auto* d = std::get_if<Deadline>(&c)) offset = std::max(offset, d->t);
  }
  return h + offset;
}

}  // namespace skedc
