// One PASS/FAIL line per acceptance criterion. Each criterion is backed by
// a reproduce scenario; runtime limits apply to the whole scenario.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

#include "pcpkit/reproduce.hpp"

namespace {

struct Criterion {
  int number;
  const char* scenario;
  const char* summary;
  std::optional<double> max_seconds;
};

const Criterion kCriteria[] = {
    {1, "example1", "degree -1 by LCP, rv and winding; R0; not R; strong-Q", 60.0},
    {2, "example2", "S = ray (1,0); q in int S*; unsolvable certificate; no false solution", 120.0},
    {3, "example3", "solutions for q_k, k = 1..10; no solution at the limit q", 60.0},
    {4, "eq4-equivalence", "matrix-power PCP equals LCP at q^[1/k] on 50 instances", std::nullopt},
    {5, "r-degree-one", "every catalog R-tensor has degree 1", std::nullopt},
    {6, "prop4-degree", "deg of matrix-power tensor equals LCP degree on 20 matrices", std::nullopt},
    {7, "remark3", "theta-scaled tensor is R0 with degree -1", std::nullopt},
    {8, "remark5", "solution set is exactly {0, e}", std::nullopt},
    {9, "karamardian", "bounded homotopy, endpoint degrees 1, solvable for 50 q", std::nullopt},
    {10, "properties", "min-relation, homogeneity, Jacobian, determinism", std::nullopt},
};

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      const pcpkit::ScenarioReport r = pcpkit::reproduce(c.scenario, 1);
      ok = r.pass();
      for (const pcpkit::CheckResult& k : r.checks)
        if (!k.pass) detail += "; " + k.name + ": expected " + k.expected + ", observed " + k.observed;
    } catch (const std::exception& e) {
      detail = std::string("; error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.max_seconds && secs >= *c.max_seconds) {
      ok = false;
      detail += "; runtime " + std::to_string(secs) + " s over limit";
    }
    std::printf("criterion %d: %s  [%s] %s (%.2f s)%s\n", c.number, ok ? "PASS" : "FAIL", c.scenario,
                c.summary, secs, detail.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
