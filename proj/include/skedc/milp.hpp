#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "skedc/instance.hpp"
#include "skedc/rational.hpp"

namespace skedc {

// Explicit MILP over binaries X (machine choice), binaries Y (cross-job
// order selectors), continuous B (start times), and Cmax. The variable
// table is ordered: per (i,j) ascending, B(i,j) then X(i,j,k) with machines
// in eligible-list order; then all Y(i,j,i',j') ascending; Cmax last.
// Constraint rows reference variables by table index.

enum class VarKind { Binary, ContinuousNonNeg };

struct Var {
  enum class Sym { X, Y, B, Cmax };
  Sym sym = Sym::Cmax;
  VarKind kind = VarKind::ContinuousNonNeg;
  int i = 0, j = 0, i2 = 0, j2 = 0, k = 0;  // 1-based; unused fields stay 0
  std::string name;                          // canonical: X_i_j_k, Y_i_j_i2_j2, B_i_j, Cmax
};

enum class Sense { Le, Eq, Ge };

enum class RowFamily {
  Assignment,
  Precedence,
  DisjunctiveA,
  DisjunctiveB,
  Makespan,
  Release,
  Deadline,
  WindowLo,
  WindowHi,
  MinGap,  // never emitted by the builder (folds into Precedence); valid in hand-built models
  MaxGap,
  SyncEq,
};

inline const char* family_label(RowFamily f) {
  switch (f) {
    case RowFamily::Assignment: return "assignment";
    case RowFamily::Precedence: return "precedence";
    case RowFamily::DisjunctiveA: return "disjunctivea";
    case RowFamily::DisjunctiveB: return "disjunctiveb";
    case RowFamily::Makespan: return "makespan";
    case RowFamily::Release: return "release";
    case RowFamily::Deadline: return "deadline";
    case RowFamily::WindowLo: return "windowlo";
    case RowFamily::WindowHi: return "windowhi";
    case RowFamily::MinGap: return "mingap";
    case RowFamily::MaxGap: return "maxgap";
    case RowFamily::SyncEq: return "synceq";
  }
  return "?";
}

struct Term {
  Rational coef;
  int var = 0;  // index into MilpModel::vars
  friend bool operator==(const Term&, const Term&) = default;
};

struct LinearConstraint {
  std::vector<Term> terms;  // sorted by var index, no duplicates, no zero coefficients
  Sense sense = Sense::Le;
  Rational rhs;
  RowFamily family = RowFamily::Assignment;
};

struct MilpModel {
  std::vector<Var> vars;
  std::vector<LinearConstraint> constraints;
  long long big_m = 0;  // the horizon H standing in for the formulation's M
  int cmax = -1;        // var index of Cmax; the objective is: minimize Cmax

  // Lookup tables, 0-based [job][subtask]; x aligned with Subtask::options.
  std::vector<std::vector<int>> b_index;
  std::vector<std::vector<std::vector<int>>> x_index;
  std::map<std::array<int, 4>, int> y_index;  // key {i,j,i2,j2}, 1-based, i < i2

  int y_of(int i, int j, int i2, int j2) const {
    return y_index.at({i, j, i2, j2});
  }
};

namespace detail {

// Accumulates (var, coef) pairs, then normalizes to table order with merged
// duplicates and no zero coefficients.
class RowBuilder {
 public:
  void add(int var, Rational coef) { acc_[var] = acc_[var] + coef; }
  LinearConstraint finish(Sense sense, Rational rhs, RowFamily family) {
    LinearConstraint c;
    for (const auto& [var, coef] : acc_)
      if (!(coef == Rational(0))) c.terms.push_back({coef, var});
    c.sense = sense;
    c.rhs = rhs;
    c.family = family;
    return c;
  }

 private:
  std::map<int, Rational> acc_;
};

// completion(i) = B(i, n_i) + sum_k pt * X(i, n_i, k), added with a sign.
inline void add_completion(RowBuilder& row, const MilpModel& m, const Instance& in, int i0,
                           long long sign) {
  int j0 = static_cast<int>(in.jobs[i0].subtasks.size()) - 1;
  row.add(m.b_index[i0][j0], Rational(sign));
  const Subtask& st = in.jobs[i0].subtasks[j0];
  for (size_t o = 0; o < st.options.size(); ++o)
    row.add(m.x_index[i0][j0][o], Rational(sign * st.options[o].time));
}

}  // namespace detail

// Variable table plus empty constraint list; row builders below fill it in.
inline MilpModel make_var_table(const Instance& in) {
  MilpModel m;
  auto push = [&](Var v) {
    m.vars.push_back(std::move(v));
    return static_cast<int>(m.vars.size()) - 1;
  };
  m.b_index.resize(in.jobs.size());
  m.x_index.resize(in.jobs.size());
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    const Job& job = in.jobs[i0];
    m.b_index[i0].resize(job.subtasks.size());
    m.x_index[i0].resize(job.subtasks.size());
    for (int j0 = 0; j0 < static_cast<int>(job.subtasks.size()); ++j0) {
      Var b;
      b.sym = Var::Sym::B;
      b.kind = VarKind::ContinuousNonNeg;
      b.i = i0 + 1;
      b.j = j0 + 1;
      b.name = "B_" + std::to_string(b.i) + "_" + std::to_string(b.j);
      m.b_index[i0][j0] = push(std::move(b));
      // X vars enter the table with machines ascending regardless of the
      // eligible list's file order; x_index stays aligned with the list.
      const auto& options = job.subtasks[j0].options;
      std::vector<size_t> by_machine(options.size());
      for (size_t o = 0; o < options.size(); ++o) by_machine[o] = o;
      std::sort(by_machine.begin(), by_machine.end(), [&](size_t a, size_t b2) {
        return options[a].machine < options[b2].machine;
      });
      m.x_index[i0][j0].resize(options.size());
      for (size_t o : by_machine) {
        Var x;
        x.sym = Var::Sym::X;
        x.kind = VarKind::Binary;
        x.i = i0 + 1;
        x.j = j0 + 1;
        x.k = options[o].machine;
        x.name = "X_" + std::to_string(x.i) + "_" + std::to_string(x.j) + "_" +
                 std::to_string(x.k);
        m.x_index[i0][j0][o] = push(std::move(x));
      }
    }
  }
  // Y only for cross-job subtask pairs sharing at least one eligible machine.
  for (int i0 = 0; i0 < in.job_count(); ++i0)
    for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0)
      for (int i1 = i0 + 1; i1 < in.job_count(); ++i1)
        for (int j1 = 0; j1 < static_cast<int>(in.jobs[i1].subtasks.size()); ++j1) {
          bool shares = false;
          for (const auto& a : in.jobs[i0].subtasks[j0].options)
            if (in.jobs[i1].subtasks[j1].time_on(a.machine) >= 0) shares = true;
          if (!shares) continue;
          Var y;
          y.sym = Var::Sym::Y;
          y.kind = VarKind::Binary;
          y.i = i0 + 1;
          y.j = j0 + 1;
          y.i2 = i1 + 1;
          y.j2 = j1 + 1;
          y.name = "Y_" + std::to_string(y.i) + "_" + std::to_string(y.j) + "_" +
                   std::to_string(y.i2) + "_" + std::to_string(y.j2);
          m.y_index[{y.i, y.j, y.i2, y.j2}] = push(std::move(y));
        }
  Var c;
  c.sym = Var::Sym::Cmax;
  c.kind = VarKind::ContinuousNonNeg;
  c.name = "Cmax";
  m.cmax = push(std::move(c));
  return m;
}

// Each subtask selects exactly one eligible machine.
inline std::vector<LinearConstraint> assignment_rows(const Instance& in, const MilpModel& m) {
  std::vector<LinearConstraint> rows;
  for (int i0 = 0; i0 < in.job_count(); ++i0)
    for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
      detail::RowBuilder row;
      for (int x : m.x_index[i0][j0]) row.add(x, Rational(1));
      rows.push_back(row.finish(Sense::Eq, Rational(1), RowFamily::Assignment));
    }
  return rows;
}

// Chain order within each job, with any MinGap folded into the bound:
//   B(i,j) + sum pt X(i,j,.) - B(i,j+1) <= -g_min(i,j).
// MaxGap contributes its own upper-bound row, appended after the chain rows:
//   -B(i,j) - sum pt X(i,j,.) + B(i,j+1) <= t.
inline std::vector<LinearConstraint> precedence_rows(const Instance& in,
                                                     const std::vector<ScenarioConstraint>& cs,
                                                     const MilpModel& m) {
  std::vector<LinearConstraint> rows;
  for (int i0 = 0; i0 < in.job_count(); ++i0)
    for (int j0 = 0; j0 + 1 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0) {
      long long g = 0;
      for (const auto& c : cs)
        if (const auto* mg = std::get_if<MinGap>(&c))
          if (mg->job == i0 + 1 && mg->subtask == j0 + 1) g += mg->t;
      detail::RowBuilder row;
      row.add(m.b_index[i0][j0], Rational(1));
      const Subtask& st = in.jobs[i0].subtasks[j0];
      for (size_t o = 0; o < st.options.size(); ++o)
        row.add(m.x_index[i0][j0][o], Rational(st.options[o].time));
      row.add(m.b_index[i0][j0 + 1], Rational(-1));
      rows.push_back(row.finish(Sense::Le, Rational(-g), RowFamily::Precedence));
    }
  for (const auto& c : cs)
    if (const auto* gap = std::get_if<MaxGap>(&c)) {
      int i0 = gap->job - 1, j0 = gap->subtask - 1;
      detail::RowBuilder row;
      row.add(m.b_index[i0][j0], Rational(-1));
      const Subtask& st = in.jobs[i0].subtasks[j0];
      for (size_t o = 0; o < st.options.size(); ++o)
        row.add(m.x_index[i0][j0][o], Rational(-st.options[o].time));
      row.add(m.b_index[i0][j0 + 1], Rational(1));
      rows.push_back(row.finish(Sense::Le, Rational(gap->t), RowFamily::MaxGap));
    }
  return rows;
}

// Big-M disjunctive pairs for every cross-job subtask pair and shared
// machine k. With both ops on k, Y picks exactly one order; otherwise both
// rows are slack by at least H. Row A first for every tuple, then row B,
// same tuple order.
inline std::vector<LinearConstraint> disjunctive_rows(const Instance& in, long long H,
                                                      const MilpModel& m) {
  std::vector<LinearConstraint> a_rows, b_rows;
  for (int i0 = 0; i0 < in.job_count(); ++i0)
    for (int j0 = 0; j0 < static_cast<int>(in.jobs[i0].subtasks.size()); ++j0)
      for (int i1 = i0 + 1; i1 < in.job_count(); ++i1)
        for (int j1 = 0; j1 < static_cast<int>(in.jobs[i1].subtasks.size()); ++j1) {
          const Subtask& s0 = in.jobs[i0].subtasks[j0];
          const Subtask& s1 = in.jobs[i1].subtasks[j1];
          std::vector<size_t> shared;  // option positions in s0, machine ascending
          for (size_t o = 0; o < s0.options.size(); ++o)
            if (s1.time_on(s0.options[o].machine) >= 0) shared.push_back(o);
          std::sort(shared.begin(), shared.end(), [&](size_t a2, size_t b2) {
            return s0.options[a2].machine < s0.options[b2].machine;
          });
          for (size_t o0 : shared) {
            int k = s0.options[o0].machine;
            long long pt0 = s0.options[o0].time;
            long long pt1 = s1.time_on(k);
            size_t o1 = 0;
            while (s1.options[o1].machine != k) ++o1;
            int y = m.y_of(i0 + 1, j0 + 1, i1 + 1, j1 + 1);
            // A: B + pt X <= B' + H(3 - Y - X - X')
            detail::RowBuilder a;
            a.add(m.b_index[i0][j0], Rational(1));
            a.add(m.x_index[i0][j0][o0], Rational(pt0 + H));
            a.add(m.b_index[i1][j1], Rational(-1));
            a.add(m.x_index[i1][j1][o1], Rational(H));
            a.add(y, Rational(H));
            a_rows.push_back(a.finish(Sense::Le, Rational(3 * H), RowFamily::DisjunctiveA));
            // B: B' + pt' X' <= B + H(2 + Y - X - X')
            detail::RowBuilder b;
            b.add(m.b_index[i0][j0], Rational(-1));
            b.add(m.x_index[i0][j0][o0], Rational(H));
            b.add(m.b_index[i1][j1], Rational(1));
            b.add(m.x_index[i1][j1][o1], Rational(pt1 + H));
            b.add(y, Rational(-H));
            b_rows.push_back(b.finish(Sense::Le, Rational(2 * H), RowFamily::DisjunctiveB));
          }
        }
  std::vector<LinearConstraint> rows = std::move(a_rows);
  rows.insert(rows.end(), b_rows.begin(), b_rows.end());
  return rows;
}

// Cmax dominates every job's completion.
inline std::vector<LinearConstraint> makespan_rows(const Instance& in, const MilpModel& m) {
  std::vector<LinearConstraint> rows;
  for (int i0 = 0; i0 < in.job_count(); ++i0) {
    detail::RowBuilder row;
    detail::add_completion(row, m, in, i0, 1);
    row.add(m.cmax, Rational(-1));
    rows.push_back(row.finish(Sense::Le, Rational(0), RowFamily::Makespan));
  }
  return rows;
}

// Release/Deadline/Window/Sync in input order; gaps are precedence_rows'
// business. Task start is B(i,1); task completion is the last subtask's.
inline std::vector<LinearConstraint> scenario_rows(const Instance& in,
                                                   const std::vector<ScenarioConstraint>& cs,
                                                   const MilpModel& m) {
  std::vector<LinearConstraint> rows;
  for (const auto& c : cs) {
    if (const auto* r = std::get_if<Release>(&c)) {
      detail::RowBuilder row;
      row.add(m.b_index[r->job - 1][0], Rational(1));
      rows.push_back(row.finish(Sense::Ge, Rational(r->t), RowFamily::Release));
    } else if (const auto* d = std::get_if<Deadline>(&c)) {
      detail::RowBuilder row;
      detail::add_completion(row, m, in, d->job - 1, 1);
      rows.push_back(row.finish(Sense::Le, Rational(d->t), RowFamily::Deadline));
    } else if (const auto* w = std::get_if<Window>(&c)) {
      detail::RowBuilder lo;
      lo.add(m.b_index[w->job - 1][0], Rational(1));
      rows.push_back(lo.finish(Sense::Ge, Rational(w->t1), RowFamily::WindowLo));
      detail::RowBuilder hi;
      hi.add(m.b_index[w->job - 1][0], Rational(1));
      rows.push_back(hi.finish(Sense::Le, Rational(w->t2), RowFamily::WindowHi));
    } else if (const auto* s = std::get_if<Sync>(&c)) {
      detail::RowBuilder row;
      detail::add_completion(row, m, in, s->job_a - 1, 1);
      detail::add_completion(row, m, in, s->job_b - 1, -1);
      rows.push_back(row.finish(Sense::Eq, Rational(0), RowFamily::SyncEq));
    }
  }
  return rows;
}

inline MilpModel build_model(const Instance& in, const std::vector<ScenarioConstraint>& cs) {
  MilpModel m = make_var_table(in);
  m.big_m = horizon(in, cs);
  auto append = [&](std::vector<LinearConstraint> rows) {
    for (auto& r : rows) m.constraints.push_back(std::move(r));
  };
  append(assignment_rows(in, m));
  append(precedence_rows(in, cs, m));
  append(disjunctive_rows(in, m.big_m, m));
  append(makespan_rows(in, m));
  append(scenario_rows(in, cs, m));
  return m;
}

}  // namespace skedc
