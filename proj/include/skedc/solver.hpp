#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "skedc/instance.hpp"
#include "skedc/rational.hpp"

namespace skedc {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

inline const char* status_text(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "?";
}

// A complete set of decisions: one eligible machine per subtask and a total
// processing order per machine. Pairs in `order` are 1-based (job, subtask).
struct FixedDecisions {
  std::vector<std::vector<int>> machine;                    // [job0][subtask0] -> machine 1..m
  std::vector<std::vector<std::pair<int, int>>> order;      // [machine0] -> (i, j) sequence
};

struct EvalResult {
  bool feasible = false;
  Schedule schedule;                  // earliest schedule when feasible
  std::vector<std::string> witness;   // one positive cycle's constraint names otherwise
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Schedule> best;
  Rational lower_bound;
  long long nodes = 0;
  double wall_time_seconds = 0.0;
  std::vector<std::string> witness;   // filled for Infeasible
};

struct OracleLimits {
  long long max_leaves = 10'000'000;
};

class OracleTooLarge : public std::runtime_error {
 public:
  OracleTooLarge(long long count, bool exact)
      : std::runtime_error(std::string("enumeration needs ") + (exact ? "" : "at least ") +
                           std::to_string(count) + " leaves"),
        leaves(count),
        is_exact(exact) {}
  long long leaves;
  bool is_exact;
};

struct SolveParams {
  double time_limit_seconds = 100.0;
  int workers = 1;
  bool canonicalize = false;  // post-pass: rewrite a parallel incumbent as the lex-min optimum
};

namespace detail {

// Subtasks flattened job-major: q runs over (i,j) ascending.
struct Flat {
  std::vector<std::pair<int, int>> op;  // q -> (i0, j0)
  std::vector<std::vector<int>> q_of;   // [i0][j0] -> q
  int count = 0;

  explicit Flat(const Instance& in) {
    q_of.resize(in.jobs.size());
    for (int i0 = 0; i0 < in.job_count(); ++i0) {
      q_of[i0].resize(in.jobs[i0].subtasks.size());
      for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
        q_of[i0][j0] = count++;
        op.emplace_back(i0, j0);
      }
    }
  }
};

// Difference-constraint graph in longest-path form: an edge u -> v with
// weight w states time(v) >= time(u) + w. Node 0 is the zero source; B
// nodes follow (one per subtask, flat order), then one completion node per
// job. A positive cycle is an infeasibility witness.
enum class EdgeKind : unsigned char {
  NonNeg,
  Precedence,
  MinGapEdge,
  MaxGapEdge,
  MachineOrder,
  Completion,
  ReleaseEdge,
  WindowLoEdge,
  WindowHiEdge,
  DeadlineEdge,
  SyncEdge,
};

struct EdgeTag {
  EdgeKind kind = EdgeKind::NonNeg;
  int i = 0, j = 0, i2 = 0, j2 = 0, k = 0;  // 1-based context, unused fields 0
};

struct DiffEdge {
  int from = 0, to = 0;
  long long w = 0;
  EdgeTag tag;
};

inline std::string op_ref(int i, int j) {
  return std::to_string(i) + "." + std::to_string(j);
}

inline std::string tag_text(const EdgeTag& t) {
  switch (t.kind) {
    case EdgeKind::NonNeg: return "nonneg(" + op_ref(t.i, t.j) + ")";
    case EdgeKind::Precedence: return "precedence(" + op_ref(t.i, t.j) + ")";
    case EdgeKind::MinGapEdge: return "min_gap(" + op_ref(t.i, t.j) + ")";
    case EdgeKind::MaxGapEdge: return "max_gap(" + op_ref(t.i, t.j) + ")";
    case EdgeKind::MachineOrder:
      return "machine " + std::to_string(t.k) + ": " + op_ref(t.i, t.j) + " before " +
             op_ref(t.i2, t.j2);
    case EdgeKind::Completion: return "completion(" + std::to_string(t.i) + ")";
    case EdgeKind::ReleaseEdge: return "release(" + std::to_string(t.i) + ")";
    case EdgeKind::WindowLoEdge: return "window_lo(" + std::to_string(t.i) + ")";
    case EdgeKind::WindowHiEdge: return "window_hi(" + std::to_string(t.i) + ")";
    case EdgeKind::DeadlineEdge: return "deadline(" + std::to_string(t.i) + ")";
    case EdgeKind::SyncEdge:
      return "sync(" + std::to_string(t.i) + "," + std::to_string(t.i2) + ")";
  }
  return "?";
}

// Builds the whole edge set for per-subtask processing-time bounds
// [lo_q, hi_q] and a set of committed machine-order links (q_a before q_b on
// machine k). Lower-bound rows use lo, upper-bound rows use hi, so any
// completion of the decisions satisfies the system (relaxation).
inline void build_edges(const Instance& in, const std::vector<ScenarioConstraint>& cs,
                        const Flat& F, const std::vector<long long>& lo,
                        const std::vector<long long>& hi,
                        const std::vector<std::array<int, 3>>& order_links,
                        std::vector<DiffEdge>& edges) {
  edges.clear();
  const int N = F.count;
  auto B = [](int q) { return 1 + q; };
  auto C = [N](int i0) { return 1 + N + i0; };
  for (int q = 0; q < N; ++q)
    edges.push_back({0, B(q), 0,
                     {EdgeKind::NonNeg, F.op[q].first + 1, F.op[q].second + 1}});
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    const int n_i = static_cast<int>(in.jobs[i0].subtasks.size());
    for (int j0 = 0; j0 + 1 < n_i; ++j0) {
      int q = F.q_of[i0][j0];
      edges.push_back({B(q), B(F.q_of[i0][j0 + 1]), lo[q],
                       {EdgeKind::Precedence, i0 + 1, j0 + 1}});
    }
    int q_last = F.q_of[i0][n_i - 1];
    edges.push_back({B(q_last), C(i0), lo[q_last], {EdgeKind::Completion, i0 + 1, n_i}});
    edges.push_back({C(i0), B(q_last), -hi[q_last], {EdgeKind::Completion, i0 + 1, n_i}});
  }
  for (const auto& c : cs) {
    if (const auto* r = std::get_if<Release>(&c)) {
      edges.push_back({0, B(F.q_of[r->job - 1][0]), r->t, {EdgeKind::ReleaseEdge, r->job}});
    } else if (const auto* d = std::get_if<Deadline>(&c)) {
      edges.push_back({C(d->job - 1), 0, -d->t, {EdgeKind::DeadlineEdge, d->job}});
    } else if (const auto* w = std::get_if<Window>(&c)) {
      edges.push_back({0, B(F.q_of[w->job - 1][0]), w->t1, {EdgeKind::WindowLoEdge, w->job}});
      edges.push_back({B(F.q_of[w->job - 1][0]), 0, -w->t2, {EdgeKind::WindowHiEdge, w->job}});
    } else if (const auto* g = std::get_if<MinGap>(&c)) {
      int q = F.q_of[g->job - 1][g->subtask - 1];
      edges.push_back({B(q), B(F.q_of[g->job - 1][g->subtask]), lo[q] + g->t,
                       {EdgeKind::MinGapEdge, g->job, g->subtask}});
    } else if (const auto* g2 = std::get_if<MaxGap>(&c)) {
      int q = F.q_of[g2->job - 1][g2->subtask - 1];
      edges.push_back({B(F.q_of[g2->job - 1][g2->subtask]), B(q), -(hi[q] + g2->t),
                       {EdgeKind::MaxGapEdge, g2->job, g2->subtask}});
    } else if (const auto* s = std::get_if<Sync>(&c)) {
      edges.push_back({C(s->job_a - 1), C(s->job_b - 1), 0,
                       {EdgeKind::SyncEdge, s->job_a, 0, s->job_b}});
      edges.push_back({C(s->job_b - 1), C(s->job_a - 1), 0,
                       {EdgeKind::SyncEdge, s->job_a, 0, s->job_b}});
    }
  }
  for (const auto& link : order_links) {
    int qa = link[0], qb = link[1];
    edges.push_back({B(qa), B(qb), lo[qa],
                     {EdgeKind::MachineOrder, F.op[qa].first + 1, F.op[qa].second + 1,
                      F.op[qb].first + 1, F.op[qb].second + 1, link[2]}});
  }
}

// Bellman-Ford longest path from node 0. Returns false on a positive cycle
// and, when `witness` is given, fills it with the cycle's constraint names
// in traversal order. Labels are the componentwise-minimal solution.
inline bool longest_path(int nodes, const std::vector<DiffEdge>& edges,
                         std::vector<long long>& label, std::vector<int>& pred,
                         std::vector<std::string>* witness) {
  constexpr long long kUnset = std::numeric_limits<long long>::min();
  label.assign(nodes, kUnset);
  pred.assign(nodes, -1);
  label[0] = 0;
  int cycle_seed = -1;
  for (int round = 0; round <= nodes; ++round) {
    bool changed = false;
    for (size_t e = 0; e < edges.size(); ++e) {
      const DiffEdge& ed = edges[e];
      if (label[ed.from] == kUnset) continue;
      long long cand = label[ed.from] + ed.w;
      if (cand > label[ed.to]) {
        label[ed.to] = cand;
        pred[ed.to] = static_cast<int>(e);
        changed = true;
        if (round == nodes) cycle_seed = ed.to;
      }
    }
    if (!changed) return true;
  }
  if (witness) {
    int v = cycle_seed;
    for (int step = 0; step < nodes; ++step) v = edges[pred[v]].from;
    std::vector<int> cyc;
    int u = v;
    do {
      cyc.push_back(pred[u]);
      u = edges[pred[u]].from;
    } while (u != v);
    std::reverse(cyc.begin(), cyc.end());
    for (int e : cyc) witness->push_back(tag_text(edges[e].tag));
  }
  return false;
}

}  // namespace detail

// Once machines and machine orders are fixed, Eqs. (3)-(5) and every
// scenario family reduce to difference constraints. Infeasibility shows up
// as a positive cycle; otherwise the longest-path labels are the earliest
// (componentwise-minimal) schedule, whose makespan is minimal for these
// decisions.
inline EvalResult evaluate_fixed(const Instance& in, const std::vector<ScenarioConstraint>& cs,
                                 const FixedDecisions& fixed) {
  detail::Flat F(in);
  const int N = F.count;
  const int m = in.machine_count;
  if (static_cast<int>(fixed.machine.size()) != in.job_count())
    throw std::invalid_argument("assignment shape does not match instance");
  std::vector<long long> pt(N);
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    if (fixed.machine[i0].size() != in.jobs[i0].subtasks.size())
      throw std::invalid_argument("assignment shape does not match instance");
    for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
      long long t = in.jobs[i0].subtasks[j0].time_on(fixed.machine[i0][j0]);
      if (t < 0)
        throw std::invalid_argument("job " + std::to_string(i0 + 1) + " subtask " +
                                    std::to_string(j0 + 1) + " is not eligible on machine " +
                                    std::to_string(fixed.machine[i0][j0]));
      pt[F.q_of[i0][j0]] = t;
    }
  }
  if (static_cast<int>(fixed.order.size()) != m)
    throw std::invalid_argument("order must list every machine");
  std::vector<int> seen(N, 0);
  std::vector<std::array<int, 3>> links;
  for (int k0 = 0; k0 < m; ++k0) {
    int prev_q = -1;
    for (const auto& [i, j] : fixed.order[k0]) {
      if (i < 1 || i > in.job_count() || j < 1 ||
          j > static_cast<int>(in.jobs[i - 1].subtasks.size()))
        throw std::invalid_argument("order names a missing subtask");
      if (fixed.machine[i - 1][j - 1] != k0 + 1)
        throw std::invalid_argument("subtask sequenced on a machine it is not assigned to");
      int q = F.q_of[i - 1][j - 1];
      ++seen[q];
      if (prev_q >= 0) links.push_back({prev_q, q, k0 + 1});
      prev_q = q;
    }
  }
  for (int q = 0; q < N; ++q)
    if (seen[q] != 1)
      throw std::invalid_argument("every subtask must appear exactly once across sequences");

  std::vector<detail::DiffEdge> edges;
  detail::build_edges(in, cs, F, pt, pt, links, edges);
  std::vector<long long> label;
  std::vector<int> pred;
  EvalResult res;
  if (!detail::longest_path(1 + N + in.job_count(), edges, label, pred, &res.witness)) {
    res.feasible = false;
    return res;
  }
  res.feasible = true;
  res.schedule.assignments.resize(in.jobs.size());
  long long mk = 0;
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    res.schedule.assignments[i0].resize(in.jobs[i0].subtasks.size());
    for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
      int q = F.q_of[i0][j0];
      long long start = label[1 + q];
      res.schedule.assignments[i0][j0] = {fixed.machine[i0][j0], Rational(start),
                                          Rational(start + pt[q])};
    }
    mk = std::max(mk, label[1 + N + i0]);
  }
  res.schedule.makespan = Rational(mk);
  return res;
}

// Exhaustive oracle: every assignment (machines ascending per subtask),
// every per-machine total order (lexicographic permutations), one
// evaluate_fixed call per leaf. First strict improvement wins, so the
// reported schedule is the lexicographically smallest optimum in
// enumeration order.
inline SolveReport brute_force(const Instance& in, const std::vector<ScenarioConstraint>& cs,
                               const OracleLimits& limits = {}) {
  auto t0 = std::chrono::steady_clock::now();
  detail::Flat F(in);
  const int N = F.count;
  const int m = in.machine_count;

  std::vector<std::vector<int>> opts(N);  // option positions, machine ascending
  for (int q = 0; q < N; ++q) {
    const auto& options = in.jobs[F.op[q].first].subtasks[F.op[q].second].options;
    opts[q].resize(options.size());
    for (size_t o = 0; o < options.size(); ++o) opts[q][o] = static_cast<int>(o);
    std::sort(opts[q].begin(), opts[q].end(),
              [&](int a, int b) { return options[a].machine < options[b].machine; });
  }

  constexpr long long kSat = std::numeric_limits<long long>::max() / 4;
  auto sat_mul = [](long long a, long long b) {
    return (b != 0 && a > kSat / b) ? kSat : a * b;
  };
  long long assign_product = 1;
  for (int q = 0; q < N; ++q)
    assign_product = sat_mul(assign_product, static_cast<long long>(opts[q].size()));
  if (assign_product > limits.max_leaves) throw OracleTooLarge(assign_product, false);

  // Exact leaf count: sum over assignments of the per-machine factorial
  // product, saturating far above any usable limit.
  std::vector<long long> loads(m, 0);
  long long total = 0;
  auto count_rec = [&](auto&& self, int q) -> void {
    if (q == N) {
      long long leaves = 1;
      for (int k0 = 0; k0 < m; ++k0)
        for (long long f = 2; f <= loads[k0]; ++f) leaves = sat_mul(leaves, f);
      total = total > kSat - leaves ? kSat : total + leaves;
      return;
    }
    const auto& options = in.jobs[F.op[q].first].subtasks[F.op[q].second].options;
    for (int o : opts[q]) {
      ++loads[options[o].machine - 1];
      self(self, q + 1);
      --loads[options[o].machine - 1];
    }
  };
  count_rec(count_rec, 0);
  if (total > limits.max_leaves) throw OracleTooLarge(total, total < kSat);

  SolveReport rep;
  std::vector<int> choice(N);
  std::vector<std::vector<int>> base(m), work(m);
  std::optional<Rational> best;
  Schedule best_sched;
  std::vector<std::string> first_witness;

  FixedDecisions fd;
  fd.machine.resize(in.jobs.size());
  for (int i0 = 0; i0 < in.job_count(); ++i0)
    fd.machine[i0].resize(in.jobs[i0].subtasks.size());
  fd.order.resize(m);

  auto leaf = [&]() {
    for (int k0 = 0; k0 < m; ++k0) {
      fd.order[k0].clear();
      for (int q : work[k0]) fd.order[k0].emplace_back(F.op[q].first + 1, F.op[q].second + 1);
    }
    ++rep.nodes;
    EvalResult ev = evaluate_fixed(in, cs, fd);
    if (!ev.feasible) {
      if (rep.nodes == 1) first_witness = ev.witness;
      return;
    }
    if (!best || ev.schedule.makespan < *best) {
      best = ev.schedule.makespan;
      best_sched = std::move(ev.schedule);
    }
  };
  auto perm_rec = [&](auto&& self, int k0) -> void {
    if (k0 == m) {
      leaf();
      return;
    }
    work[k0] = base[k0];
    do {
      self(self, k0 + 1);
    } while (std::next_permutation(work[k0].begin(), work[k0].end()));
  };
  auto assign_rec = [&](auto&& self, int q) -> void {
    if (q == N) {
      for (int k0 = 0; k0 < m; ++k0) base[k0].clear();
      for (int q2 = 0; q2 < N; ++q2) {
        const auto& options = in.jobs[F.op[q2].first].subtasks[F.op[q2].second].options;
        int k = options[choice[q2]].machine;
        fd.machine[F.op[q2].first][F.op[q2].second] = k;
        base[k - 1].push_back(q2);
      }
      perm_rec(perm_rec, 0);
      return;
    }
    for (int o : opts[q]) {
      choice[q] = o;
      self(self, q + 1);
    }
  };
  assign_rec(assign_rec, 0);

  if (best) {
    rep.status = SolveStatus::Optimal;
    rep.best = std::move(best_sched);
    rep.lower_bound = *best;
  } else {
    rep.status = SolveStatus::Infeasible;
    rep.lower_bound = Rational(0);
    rep.witness = std::move(first_witness);
  }
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace detail {

struct SharedIncumbent {
  std::atomic<long long> value{std::numeric_limits<long long>::max()};
  std::mutex mu;
  bool has = false;
  Schedule sched;
};

// Depth-first search state for one worker. Branch order is fixed: subtasks
// in flat order, machines ascending, insertion positions ascending; with a
// single worker and strict incumbent improvement the first optimum found is
// the lexicographically smallest one.
class BnbWorker {
 public:
  BnbWorker(const Instance& in, const std::vector<ScenarioConstraint>& cs, const Flat& flat,
            SharedIncumbent* shared, std::chrono::steady_clock::time_point deadline)
      : in_(in), cs_(cs), F_(flat), shared_(shared), deadline_(deadline) {
    const int N = F_.count;
    const int m = in_.machine_count;
    lo_.resize(N);
    hi_.resize(N);
    opts_.resize(N);
    singleton_.resize(N);
    for (int q = 0; q < N; ++q) {
      const auto& options = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].options;
      lo_[q] = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].min_time();
      hi_[q] = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].max_time();
      opts_[q].resize(options.size());
      for (size_t o = 0; o < options.size(); ++o) opts_[q][o] = static_cast<int>(o);
      std::sort(opts_[q].begin(), opts_[q].end(),
                [&](int a, int b) { return options[a].machine < options[b].machine; });
      singleton_[q] = options.size() == 1;
    }
    seq_.resize(m);
    committed_.assign(m, 0);
    pool_.assign(m, 0);
    for (int q = 0; q < N; ++q)
      if (singleton_[q]) {
        const auto& opt = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].options[0];
        pool_[opt.machine - 1] += opt.time;
      }
    assigned_.assign(N, 0);
  }

  // Main search. split_mod/split_id partition the depth-0 branches among
  // parallel workers; 1/0 means the whole tree.
  void run(int split_mod, int split_id) {
    split_mod_ = split_mod;
    split_id_ = split_id;
    visit(0);
  }

  // Canonicalization mode: prune strictly above cap, stop at the first leaf
  // at or below it.
  void run_canonical(long long cap) {
    canonical_ = true;
    cap_ = cap;
    visit(0);
  }

  long long nodes = 0;
  bool timed_out = false;
  long long min_cut = std::numeric_limits<long long>::max();
  std::vector<std::string> first_witness;
  bool found_cap = false;
  Schedule canonical_sched;

 private:
  void fold(long long lb) { min_cut = std::min(min_cut, lb); }

  Schedule schedule_from_labels() {
    Schedule s;
    s.assignments.resize(in_.jobs.size());
    long long mk = 0;
    for (int i0 = 0; i0 < in_.job_count(); ++i0) {
      s.assignments[i0].resize(in_.jobs[i0].subtasks.size());
      for (int j0 = 0; j0 < static_cast<int>(in_.jobs[i0].subtasks.size()); ++j0) {
        int q = F_.q_of[i0][j0];
        long long start = label_[1 + q];
        s.assignments[i0][j0] = {assigned_[q], Rational(start), Rational(start + lo_[q])};
      }
      mk = std::max(mk, label_[1 + F_.count + i0]);
    }
    s.makespan = Rational(mk);
    return s;
  }

  void visit(int depth) {
    ++nodes;
    links_.clear();
    for (int k0 = 0; k0 < in_.machine_count; ++k0)
      for (size_t p = 0; p + 1 < seq_[k0].size(); ++p)
        links_.push_back({seq_[k0][p], seq_[k0][p + 1], k0 + 1});
    build_edges(in_, cs_, F_, lo_, hi_, links_, edges_);
    const int V = 1 + F_.count + in_.job_count();
    bool want_witness = first_witness.empty();
    wit_tmp_.clear();
    if (!longest_path(V, edges_, label_, pred_, want_witness ? &wit_tmp_ : nullptr)) {
      if (want_witness) first_witness = std::move(wit_tmp_);
      return;  // this subtree is empty
    }
    long long lb = 0;
    for (int i0 = 0; i0 < in_.job_count(); ++i0)
      lb = std::max(lb, label_[1 + F_.count + i0]);
    for (int k0 = 0; k0 < in_.machine_count; ++k0)
      lb = std::max(lb, committed_[k0] + pool_[k0]);

    if (canonical_ ? lb > cap_ : lb >= shared_->value.load(std::memory_order_relaxed))
      return;

    if (depth == F_.count) {
      // Exact at leaves: lo == hi for every assigned subtask.
      if (canonical_) {
        canonical_sched = schedule_from_labels();
        found_cap = true;
        return;
      }
      std::lock_guard<std::mutex> lk(shared_->mu);
      if (lb < shared_->value.load(std::memory_order_relaxed)) {
        shared_->value.store(lb, std::memory_order_relaxed);
        shared_->has = true;
        shared_->sched = schedule_from_labels();
      }
      return;
    }

    if (std::chrono::steady_clock::now() >= deadline_) {
      timed_out = true;
      fold(lb);
      return;
    }

    const int q = depth;
    const auto& options = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].options;
    int branch = 0;
    for (int o : opts_[q]) {
      int k = options[o].machine;
      long long pt = options[o].time;
      bool mine = depth != 0 || branch % split_mod_ == split_id_;
      ++branch;
      if (!mine) continue;
      assigned_[q] = k;
      lo_[q] = hi_[q] = pt;
      committed_[k - 1] += pt;
      if (singleton_[q]) pool_[k - 1] -= pt;
      auto& s = seq_[k - 1];
      for (size_t p = 0; p <= s.size(); ++p) {
        s.insert(s.begin() + p, q);
        visit(depth + 1);
        s.erase(s.begin() + p);
        if (timed_out || found_cap) break;
      }
      committed_[k - 1] -= pt;
      if (singleton_[q]) pool_[k - 1] += pt;
      assigned_[q] = 0;
      lo_[q] = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].min_time();
      hi_[q] = in_.jobs[F_.op[q].first].subtasks[F_.op[q].second].max_time();
      if (timed_out) {
        fold(lb);
        return;
      }
      if (found_cap) return;
    }
  }

  const Instance& in_;
  const std::vector<ScenarioConstraint>& cs_;
  const Flat& F_;
  SharedIncumbent* shared_;
  std::chrono::steady_clock::time_point deadline_;

  std::vector<long long> lo_, hi_;
  std::vector<std::vector<int>> opts_;
  std::vector<char> singleton_;
  std::vector<int> assigned_;
  std::vector<std::vector<int>> seq_;
  std::vector<long long> committed_, pool_;
  std::vector<std::array<int, 3>> links_;
  std::vector<DiffEdge> edges_;
  std::vector<long long> label_;
  std::vector<int> pred_;
  std::vector<std::string> wit_tmp_;
  int split_mod_ = 1, split_id_ = 0;
  bool canonical_ = false;
  long long cap_ = std::numeric_limits<long long>::max();
};

}  // namespace detail

// Two-level branch and bound: machine per subtask (flat order, machines
// ascending), then insertion position in that machine's sequence. Bound is
// the larger of the relaxed difference-graph makespan (min times for lower
// bounds, max times for upper bounds) and committed machine load plus
// must-go singleton load.
inline SolveReport branch_and_bound(const Instance& in, const std::vector<ScenarioConstraint>& cs,
                                    const SolveParams& params = {}) {
  auto t0 = std::chrono::steady_clock::now();
  auto deadline =
      t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(std::max(0.0, params.time_limit_seconds)));
  detail::Flat F(in);
  SolveReport rep;

  auto finalize = [&](bool timed_out, long long min_cut, bool has, long long value,
                      Schedule sched, std::vector<std::string> witness) {
    if (has && (!timed_out || min_cut >= value)) {
      rep.status = SolveStatus::Optimal;
      rep.lower_bound = Rational(value);
      rep.best = std::move(sched);
    } else if (has) {
      rep.status = SolveStatus::Feasible;
      rep.lower_bound = Rational(std::min(min_cut, value));
      rep.best = std::move(sched);
    } else if (timed_out) {
      rep.status = SolveStatus::TimeLimit;
      rep.lower_bound =
          Rational(min_cut == std::numeric_limits<long long>::max() ? 0 : min_cut);
    } else {
      rep.status = SolveStatus::Infeasible;
      rep.lower_bound = Rational(0);
      rep.witness = std::move(witness);
    }
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (std::chrono::steady_clock::now() >= deadline) {
    finalize(true, std::numeric_limits<long long>::max(), false, 0, {}, {});
    rep.nodes = 0;
    return rep;
  }

  detail::SharedIncumbent shared;
  int workers = std::max(1, params.workers);
  int depth0_branches = F.count == 0 ? 1 : static_cast<int>(
      in.jobs[F.op[0].first].subtasks[F.op[0].second].options.size());
  workers = std::min(workers, depth0_branches);

  if (F.count == 0) {
    // Degenerate but harmless: nothing to schedule.
    Schedule empty;
    empty.makespan = Rational(0);
    finalize(false, std::numeric_limits<long long>::max(), true, 0, std::move(empty), {});
    rep.nodes = 0;
    return rep;
  }

  bool timed_out = false;
  long long min_cut = std::numeric_limits<long long>::max();
  std::vector<std::string> witness;

  if (workers == 1) {
    detail::BnbWorker w(in, cs, F, &shared, deadline);
    w.run(1, 0);
    rep.nodes = w.nodes;
    timed_out = w.timed_out;
    min_cut = w.min_cut;
    witness = std::move(w.first_witness);
  } else {
    std::vector<std::unique_ptr<detail::BnbWorker>> ws;
    for (int t = 0; t < workers; ++t)
      ws.push_back(std::make_unique<detail::BnbWorker>(in, cs, F, &shared, deadline));
    std::vector<std::thread> threads;
    for (int t = 0; t < workers; ++t)
      threads.emplace_back([&, t] { ws[t]->run(workers, t); });
    for (auto& th : threads) th.join();
    for (int t = 0; t < workers; ++t) {
      rep.nodes += ws[t]->nodes;
      timed_out = timed_out || ws[t]->timed_out;
      min_cut = std::min(min_cut, ws[t]->min_cut);
      if (witness.empty()) witness = std::move(ws[t]->first_witness);
    }
  }

  bool has = shared.has;
  long long value = shared.value.load();
  Schedule sched = std::move(shared.sched);

  // A parallel run can land on a different optimal schedule than the fixed
  // single-worker order would; the post-pass rewrites it as the lex-min one.
  if (params.canonicalize && workers > 1 && has && !timed_out) {
    detail::BnbWorker canon(in, cs, F, &shared, deadline);
    canon.run_canonical(value);
    rep.nodes += canon.nodes;
    if (canon.found_cap) sched = std::move(canon.canonical_sched);
  }

  finalize(timed_out, min_cut, has, value, std::move(sched), std::move(witness));
  return rep;
}

// Independent recheck of a schedule against instance and constraints. No
// shared machinery with evaluate_fixed: plain interval arithmetic.
inline std::vector<Violation> verify_schedule(const Instance& in,
                                              const std::vector<ScenarioConstraint>& cs,
                                              const Schedule& s) {
  std::vector<Violation> out;
  if (s.assignments.size() != in.jobs.size()) {
    out.push_back({"ShapeMismatch",
                   "schedule covers " + std::to_string(s.assignments.size()) + " jobs, instance has " +
                       std::to_string(in.jobs.size())});
    return out;
  }
  for (int i0 = 0; i0 < in.job_count(); ++i0)
    if (s.assignments[i0].size() != in.jobs[i0].subtasks.size()) {
      out.push_back({"ShapeMismatch",
                     "job " + std::to_string(i0 + 1) + " has " +
                         std::to_string(s.assignments[i0].size()) + " scheduled subtasks, expected " +
                         std::to_string(in.jobs[i0].subtasks.size())});
      return out;
    }

  Rational zero(0);
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
      const ScheduleEntry& e = s.assignments[i0][j0];
      long long pt = in.jobs[i0].subtasks[j0].time_on(e.machine);
      if (pt < 0) {
        out.push_back({"IneligibleMachine",
                       detail::ij(i0 + 1, j0 + 1) + ": machine " + std::to_string(e.machine) +
                           " is not in the eligible set"});
        continue;
      }
      if (e.start < zero)
        out.push_back({"NegativeStart", detail::ij(i0 + 1, j0 + 1) + ": start " + e.start.str() +
                                            " is negative"});
      if (!(e.end == e.start + Rational(pt)))
        out.push_back({"DurationMismatch",
                       detail::ij(i0 + 1, j0 + 1) + ": end " + e.end.str() + " is not start + " +
                           std::to_string(pt)});
    }
    for (int j0 = 0; j0 + 1 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
      const ScheduleEntry& a = s.assignments[i0][j0];
      const ScheduleEntry& b = s.assignments[i0][j0 + 1];
      long long pt = in.jobs[i0].subtasks[j0].time_on(a.machine);
      if (pt < 0) continue;
      if (b.start < a.start + Rational(pt))
        out.push_back({"PrecedenceViolated",
                       detail::ij(i0 + 1, j0 + 1) + " must finish before " +
                           detail::ij(i0 + 1, j0 + 2) + " starts"});
    }
  }

  // Per-machine non-overlap over the declared assignment.
  for (int k = 1; k <= in.machine_count; ++k) {
    struct Bar {
      Rational start, end;
      int i, j;
    };
    std::vector<Bar> bars;
    for (int i0 = 0; i0 < in.job_count(); ++i0)
      for (int j0 = 0; j0 < static_cast<int>(s.assignments[i0].size()); ++j0)
        if (s.assignments[i0][j0].machine == k)
          bars.push_back({s.assignments[i0][j0].start, s.assignments[i0][j0].end, i0 + 1, j0 + 1});
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
      if (!(a.start == b.start)) return a.start < b.start;
      if (!(a.end == b.end)) return a.end < b.end;
      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (size_t p = 0; p + 1 < bars.size(); ++p)
      if (bars[p + 1].start < bars[p].end)
        out.push_back({"MachineOverlap",
                       "machine " + std::to_string(k) + ": " + detail::ij(bars[p].i, bars[p].j) +
                           " [" + bars[p].start.str() + "," + bars[p].end.str() + ") overlaps " +
                           detail::ij(bars[p + 1].i, bars[p + 1].j) + " [" +
                           bars[p + 1].start.str() + "," + bars[p + 1].end.str() + ")"});
  }

  auto completion = [&](int i) {
    int last = static_cast<int>(in.jobs[i - 1].subtasks.size()) - 1;
    return s.assignments[i - 1][last].end;
  };
  auto first_start = [&](int i) { return s.assignments[i - 1][0].start; };

  for (const auto& c : cs) {
    if (const auto* r = std::get_if<Release>(&c)) {
      if (first_start(r->job) < Rational(r->t))
        out.push_back({"ReleaseViolated", "i=" + std::to_string(r->job) + ": start " +
                                              first_start(r->job).str() + " < " +
                                              std::to_string(r->t)});
    } else if (const auto* d = std::get_if<Deadline>(&c)) {
      if (Rational(d->t) < completion(d->job))
        out.push_back({"DeadlineViolated", "i=" + std::to_string(d->job) + ": completion " +
                                               completion(d->job).str() + " > " +
                                               std::to_string(d->t)});
    } else if (const auto* w = std::get_if<Window>(&c)) {
      if (first_start(w->job) < Rational(w->t1) || Rational(w->t2) < first_start(w->job))
        out.push_back({"WindowViolated", "i=" + std::to_string(w->job) + ": start " +
                                             first_start(w->job).str() + " outside [" +
                                             std::to_string(w->t1) + "," + std::to_string(w->t2) +
                                             "]"});
    } else if (const auto* g = std::get_if<MinGap>(&c)) {
      const ScheduleEntry& a = s.assignments[g->job - 1][g->subtask - 1];
      const ScheduleEntry& b = s.assignments[g->job - 1][g->subtask];
      if (b.start < a.end + Rational(g->t))
        out.push_back({"MinGapViolated", "i=" + std::to_string(g->job) + ",j=" +
                                             std::to_string(g->subtask) + ": gap " +
                                             (b.start - a.end).str() + " < " +
                                             std::to_string(g->t)});
    } else if (const auto* g2 = std::get_if<MaxGap>(&c)) {
      const ScheduleEntry& a = s.assignments[g2->job - 1][g2->subtask - 1];
      const ScheduleEntry& b = s.assignments[g2->job - 1][g2->subtask];
      if (a.end + Rational(g2->t) < b.start)
        out.push_back({"MaxGapViolated", "i=" + std::to_string(g2->job) + ",j=" +
                                             std::to_string(g2->subtask) + ": gap " +
                                             (b.start - a.end).str() + " > " +
                                             std::to_string(g2->t)});
    } else if (const auto* sy = std::get_if<Sync>(&c)) {
      if (!(completion(sy->job_a) == completion(sy->job_b)))
        out.push_back({"SyncViolated", "i1=" + std::to_string(sy->job_a) + ",i2=" +
                                           std::to_string(sy->job_b) + ": completions " +
                                           completion(sy->job_a).str() + " and " +
                                           completion(sy->job_b).str() + " differ"});
    }
  }

  Rational max_end(0);
  for (const auto& job : s.assignments)
    for (const auto& e : job) max_end = std::max(max_end, e.end);
  if (!(s.makespan == max_end))
    out.push_back({"MakespanMismatch", "makespan " + s.makespan.str() +
                                           " is not the latest end " + max_end.str()});
  return out;
}

}  // namespace skedc
