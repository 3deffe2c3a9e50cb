#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skedc/instance.hpp"

namespace skedc {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, bytes
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan where, const std::string& what)
      : std::runtime_error(std::to_string(where.line) + ":" + std::to_string(where.column) +
                           ": " + what),
        span(where),
        detail(what) {}
  SourceSpan span;
  std::string detail;  // message without the line:column prefix
};

namespace detail {

struct Token {
  std::string text;
  SourceSpan span;
};

// Whitespace-separated tokens with byte-accurate spans. CR counts as
// whitespace, so CRLF input tokenizes the same as LF input.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    Token t;
    t.span = {line, col};
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      t.text.push_back(text[i]);
      ++i;
      ++col;
    }
    out.push_back(std::move(t));
  }
  return out;
}

// All grammar integers are non-negative decimals. The value cap keeps every
// downstream sum (horizon, big-M row coefficients) inside int64.
constexpr long long kMaxIntToken = 1'000'000'000'000LL;

inline long long to_int(const Token& t, const char* what) {
  if (t.text.empty() || t.text.size() > 13)
    throw ParseError(t.span, std::string("expected ") + what + ", got '" + t.text + "'");
  long long v = 0;
  for (char c : t.text) {
    if (c < '0' || c > '9')
      throw ParseError(t.span, std::string("expected ") + what + ", got '" + t.text + "'");
    v = v * 10 + (c - '0');
  }
  if (v > kMaxIntToken)
    throw ParseError(t.span, std::string(what) + " " + t.text + " exceeds limit " +
                                 std::to_string(kMaxIntToken));
  return v;
}

// Job/subtask/machine indices and machine counts additionally fit in int.
constexpr long long kMaxIndexToken = 1'000'000'000LL;

inline int to_index(const Token& t, const char* what) {
  long long v = to_int(t, what);
  if (v > kMaxIndexToken)
    throw ParseError(t.span, std::string(what) + " " + t.text + " exceeds limit " +
                                 std::to_string(kMaxIndexToken));
  return static_cast<int>(v);
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : toks_(std::move(tokens)) {}
  bool done() const { return pos_ == toks_.size(); }
  const Token& peek() const { return toks_[pos_]; }
  long long next_int(const char* what) {
    return to_int(take(what), what);
  }
  int next_index(const char* what) {
    return to_index(take(what), what);
  }

 private:
  const Token& take(const char* what) {
    if (done()) {
      SourceSpan s = toks_.empty() ? SourceSpan{1, 1} : end_span();
      throw ParseError(s, std::string("unexpected end of input, expected ") + what);
    }
    return toks_[pos_++];
  }
  SourceSpan end_span() const {
    const Token& last = toks_.back();
    return {last.span.line, last.span.column + static_cast<int>(last.text.size())};
  }
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

// Standard flexible job-shop text layout: header "n m avg" (avg ignored),
// then per job a subtask count followed by, per subtask, an option count and
// that many (machine, time) pairs. Machine indices are range-checked here;
// all other invariants are validate_instance's business.
inline Instance parse_fjs(std::string_view text) {
  detail::Cursor cur(detail::tokenize(text));
  Instance in;
  long long n = cur.next_int("job count");
  int m = cur.next_index("machine count");
  cur.next_int("average machines per subtask");
  in.machine_count = m;
  for (long long i = 0; i < n; ++i) {
    Job job;
    long long n_i = cur.next_int("subtask count");
    for (long long j = 0; j < n_i; ++j) {
      Subtask st;
      long long opts = cur.next_int("option count");
      for (long long o = 0; o < opts; ++o) {
        SourceSpan mach_span = cur.done() ? SourceSpan{} : cur.peek().span;
        long long k = cur.next_int("machine index");
        long long pt = cur.next_int("processing time");
        if (k < 1 || k > m)
          throw ParseError(mach_span, "machine " + std::to_string(k) + " out of range 1.." +
                                          std::to_string(m));
        st.options.push_back({static_cast<int>(k), pt});
      }
      job.subtasks.push_back(std::move(st));
    }
    in.jobs.push_back(std::move(job));
  }
  if (!cur.done())
    throw ParseError(cur.peek().span, "unexpected trailing input '" + cur.peek().text + "'");
  return in;
}

// Scenario constraint DSL: one constraint per line, '#' to end of line is a
// comment, blank lines skipped, optional leading "version 1". Order is
// preserved; index/range semantics are validate_constraints' business.
inline std::vector<ScenarioConstraint> parse_constraints(std::string_view text) {
  std::vector<ScenarioConstraint> out;
  int line_no = 0;
  size_t pos = 0;
  bool seen_any = false;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<detail::Token> toks = detail::tokenize(line);
    for (auto& t : toks) t.span.line = line_no;
    if (!toks.empty()) {
      const detail::Token& kw = toks[0];
      auto arity = [&](size_t want) {
        if (toks.size() != want + 1)
          throw ParseError(kw.span, "'" + kw.text + "' expects " + std::to_string(want) +
                                        (want == 1 ? " argument, got " : " arguments, got ") +
                                        std::to_string(toks.size() - 1));
      };
      auto arg = [&](size_t idx) { return detail::to_int(toks[idx], "integer"); };
      auto idx = [&](size_t i2) { return detail::to_index(toks[i2], "index"); };
      if (kw.text == "version" && !seen_any) {
        arity(1);
        if (arg(1) != 1)
          throw ParseError(toks[1].span, "unsupported version " + toks[1].text);
      } else if (kw.text == "release") {
        arity(2);
        out.push_back(Release{idx(1), arg(2)});
      } else if (kw.text == "deadline") {
        arity(2);
        out.push_back(Deadline{idx(1), arg(2)});
      } else if (kw.text == "window") {
        arity(3);
        out.push_back(Window{idx(1), arg(2), arg(3)});
      } else if (kw.text == "min_gap") {
        arity(3);
        out.push_back(MinGap{idx(1), idx(2), arg(3)});
      } else if (kw.text == "max_gap") {
        arity(3);
        out.push_back(MaxGap{idx(1), idx(2), arg(3)});
      } else if (kw.text == "sync") {
        arity(2);
        out.push_back(Sync{idx(1), idx(2)});
      } else {
        throw ParseError(kw.span, "unknown keyword '" + kw.text + "'");
      }
      seen_any = true;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

inline std::string render_constraints(const std::vector<ScenarioConstraint>& cs) {
  std::string out;
  for (const auto& c : cs) {
    if (const auto* r = std::get_if<Release>(&c))
      out += "release " + std::to_string(r->job) + " " + std::to_string(r->t);
    else if (const auto* d = std::get_if<Deadline>(&c))
      out += "deadline " + std::to_string(d->job) + " " + std::to_string(d->t);
    else if (const auto* w = std::get_if<Window>(&c))
      out += "window " + std::to_string(w->job) + " " + std::to_string(w->t1) + " " +
             std::to_string(w->t2);
    else if (const auto* g = std::get_if<MinGap>(&c))
      out += "min_gap " + std::to_string(g->job) + " " + std::to_string(g->subtask) + " " +
             std::to_string(g->t);
    else if (const auto* g2 = std::get_if<MaxGap>(&c))
      out += "max_gap " + std::to_string(g2->job) + " " + std::to_string(g2->subtask) + " " +
             std::to_string(g2->t);
    else if (const auto* s = std::get_if<Sync>(&c))
      out += "sync " + std::to_string(s->job_a) + " " + std::to_string(s->job_b);
    out += "\n";
  }
  return out;
}

inline std::string render_fjs(const Instance& in) {
  long long total_subtasks = 0, total_options = 0;
  for (const auto& job : in.jobs) {
    total_subtasks += static_cast<long long>(job.subtasks.size());
    for (const auto& st : job.subtasks) total_options += static_cast<long long>(st.options.size());
  }
  // Informational header field: mean |K_ij| rounded half away from zero.
  long long avg = total_subtasks == 0
                      ? 0
                      : (2 * total_options + total_subtasks) / (2 * total_subtasks);
  std::string out = std::to_string(in.jobs.size()) + " " + std::to_string(in.machine_count) +
                    " " + std::to_string(avg) + "\n";
  for (const auto& job : in.jobs) {
    out += std::to_string(job.subtasks.size());
    for (const auto& st : job.subtasks) {
      out += " " + std::to_string(st.options.size());
      for (const auto& o : st.options)
        out += " " + std::to_string(o.machine) + " " + std::to_string(o.time);
    }
    out += "\n";
  }
  return out;
}

}  // namespace skedc
