#include <chrono>
#include <cstdio>
#include <string>

#include "gconv/harness.hpp"

using namespace gconv;

namespace {

int failures = 0;

void line(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%2d] %-4s %s: %s\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct Run {
  CampaignReport rep;
  double seconds = 0;
};

Run run(const std::string& id, std::uint64_t seed = 0) {
  SuiteConfig cfg;
  cfg.suite = id;
  cfg.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  Run r{run_suite(cfg), 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::size_t count(const CampaignReport& r, const std::string& law) {
  auto it = r.checks.find(law);
  return it == r.checks.end() ? 0 : it->second;
}

std::string summary(const Run& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cases, %zu alarms, %.1f s", r.rep.cases, r.rep.alarms.size(), r.seconds);
  return buf;
}

std::string first_alarm(const CampaignReport& r) {
  if (r.alarms.empty()) return "";
  return "; first alarm " + r.alarms[0].id + ": " + r.alarms[0].report.detail;
}

}  // namespace

int main() {
  {
    Run r = run("prop-ls");
    bool ok = r.rep.ok() && count(r.rep, "level-sets") > 0 && count(r.rep, "char-fn") > 0 && r.seconds < 30;
    line(1, "level sets vs quasiconvexity, cyclic groups up to order 30", ok, summary(r) + first_alarm(r.rep));
  }
  {
    Run r = run("envelope");
    bool ok = r.rep.ok() && count(r.rep, "hand") == 1 && count(r.rep, "oracle") >= 200;
    line(2, "envelope vs brute-force minorant", ok,
         summary(r) + ", oracle cases " + std::to_string(count(r.rep, "oracle")) + first_alarm(r.rep));
  }
  {
    const char* suites[] = {"closure-p1",   "closure-p1f", "closure-p1w", "closure-p1c", "closure-p1a",
                            "closure-cor1", "closure-tq",  "closure-tw",  "closure-tc",  "closure-ta"};
    bool ok = true;
    std::string detail;
    double seconds = 0;
    for (const char* s : suites) {
      Run r = run(s);
      seconds += r.seconds;
      const bool good = r.rep.ok() && r.rep.cases >= 1000;
      ok = ok && good;
      detail += std::string(s) + "=" + std::to_string(r.rep.cases) + "/" + std::to_string(r.rep.alarms.size());
      detail += good ? " " : "(!)" + first_alarm(r.rep) + " ";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "cases/alarms, %.1f s", seconds);
    line(3, "closure suites", ok, detail + buf);
  }
  {
    Run r = run("spectral");
    bool ok = r.rep.ok() && count(r.rep, "nilpotent-iff-radius") == 625;
    line(4, "nilpotency certificate vs power iteration, 2x2 entries in [-2,2]", ok, summary(r) + first_alarm(r.rep));
  }
  {
    Run r = run("wright-ratio");
    bool ok = r.rep.ok() && count(r.rep, "u-grid") >= 1000 && count(r.rep, "derived") > 0;
    line(5, "grid inequality and ratio derivation on Z[1/6]", ok,
         summary(r) + ", grids " + std::to_string(count(r.rep, "u-grid")) + ", derived " +
             std::to_string(count(r.rep, "derived")) + first_alarm(r.rep));
  }
  {
    Run r = run("last-coefficients");
    bool ok = r.rep.ok() && count(r.rep, "hand") == 1 && count(r.rep, "coefficients") == 100 &&
              count(r.rep, "derived") > 0;
    line(6, "chain coefficients and derived pairs", ok,
         summary(r) + ", derived " + std::to_string(count(r.rep, "derived")) + first_alarm(r.rep));
  }
  {
    Run r = run("kuhn");
    const std::size_t thirds = count(r.rep, "k/3"), fifths = count(r.rep, "k/5");
    bool ok = r.rep.ok() && thirds == 3 && fifths == 5;
    std::string detail = summary(r) + ", k/3 pairs " + std::to_string(thirds) + ", k/5 pairs " +
                         std::to_string(fifths) + ", k/5 pairs on Z[1/30] " +
                         std::to_string(count(r.rep, "k/5 on Z[1/30]"));
    for (const auto& n : r.rep.notes) detail += "; " + n;
    line(7, "fractions k/n from the midpoint pair of x^2 on [0,1] in Z[1/6]", ok, detail + first_alarm(r.rep));
  }
  {
    Run r = run("twa");
    bool ok = r.rep.ok() && count(r.rep, "round-trip") == 100 && count(r.rep, "cubic-rejected") > 0;
    line(8, "quadratic decomposition round trip", ok, summary(r) + first_alarm(r.rep));
  }
  {
    Run r = run("rode");
    bool ok = r.rep.ok() && count(r.rep, "hand") == 1 && count(r.rep, "certificate") >= 1000;
    line(9, "affine supports on {-4..4}", ok, summary(r) + first_alarm(r.rep));
  }
  {
    Run r = run("radstrom");
    bool ok = r.rep.ok() && count(r.rep, "conclusion") >= 1000 && count(r.rep, "finite-audit") > 0;
    line(10, "cancellation on Z[1/2], finite-group audit", ok,
         summary(r) + ", conclusions " + std::to_string(count(r.rep, "conclusion")) + ", finite audits " +
             std::to_string(count(r.rep, "finite-audit")) + first_alarm(r.rep));
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
