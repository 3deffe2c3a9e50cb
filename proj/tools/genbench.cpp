#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "skedc/generator.hpp"
#include "skedc/parse.hpp"
#include "skedc/solver.hpp"

using namespace skedc;

// Generates the shipped benchmark suite: ten cases of 10 jobs, the first
// five on 5 machines, the rest on 10. Candidate seeds are rejected until
// branch and bound proves optimality within a small fraction of the 100 s
// budget, then the case is frozen to caseNN.fjs (+ caseNN.sched when it
// carries scenario constraints) next to expected_makespans.csv.
int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: genbench <out_dir>\n");
    return 2;
  }
  std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

  std::string csv = "case,makespan\n";
  for (int idx = 1; idx <= 10; ++idx) {
    GenConfig cfg;
    cfg.min_jobs = cfg.max_jobs = 10;
    cfg.min_machines = cfg.max_machines = idx <= 5 ? 5 : 10;
    cfg.min_subtasks = 1;
    cfg.max_subtasks = 3;
    cfg.max_eligible = 2;
    const bool with_constraints = idx % 2 == 0;
    cfg.family_prob = with_constraints ? 0.6 : 0.0;

    char name[16];
    std::snprintf(name, sizeof name, "case%02d", idx);

    for (unsigned long long seed = 1000ULL * idx;; ++seed) {
      std::mt19937_64 rng(seed);
      Instance in = random_instance(rng, cfg);
      auto cs = random_constraints(rng, in, cfg);
      if (with_constraints && cs.empty()) continue;

      SolveParams quick;
      quick.time_limit_seconds = 5.0;
      SolveReport rep = branch_and_bound(in, cs, quick);
      if (rep.status != SolveStatus::Optimal || rep.nodes < 50) continue;

      std::string fjs = render_fjs(in);
      std::string sched = render_constraints(cs);
      {
        std::ofstream f(dir / (std::string(name) + ".fjs"), std::ios::binary);
        f << fjs;
      }
      if (with_constraints) {
        std::ofstream f(dir / (std::string(name) + ".sched"), std::ios::binary);
        f << sched;
      }

      // Re-solve what was actually written; the frozen value must match the
      // file contents, not the in-memory instance.
      Instance back = parse_fjs(fjs);
      auto back_cs = with_constraints ? parse_constraints(sched)
                                      : std::vector<ScenarioConstraint>{};
      SolveReport check = branch_and_bound(back, back_cs, quick);
      if (check.status != SolveStatus::Optimal ||
          !(check.best->makespan == rep.best->makespan)) {
        std::fprintf(stderr, "%s: re-solve of rendered files diverged\n", name);
        return 1;
      }
      csv += std::string(name) + "," + check.best->makespan.str() + "\n";
      std::printf("%s seed=%llu makespan=%s nodes=%lld time=%.3fs%s\n", name, seed,
                  check.best->makespan.str().c_str(), rep.nodes, rep.wall_time_seconds,
                  with_constraints ? " (constraints)" : "");
      break;
    }
  }
  std::ofstream f(dir / "expected_makespans.csv", std::ios::binary);
  f << csv;
  return 0;
}
