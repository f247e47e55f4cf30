// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each, nonzero
// exit when any fail.  Each criterion pins its own tolerances and time budget.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracdual/abel/abel.hpp"
#include "fracdual/analysis/analysis.hpp"
#include "fracdual/core/test_function.hpp"
#include "fracdual/dualop/dualop.hpp"
#include "fracdual/dualop/verify.hpp"
#include "fracdual/fraclap/fraclap.hpp"
#include "fracdual/marchaud/marchaud.hpp"

using namespace fracdual;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

// ---- criterion 1: frequency multiplier identity for the gaussian ----------

Outcome criterion_multiplier() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceTimeGrid grid(1, 16.0, 256, -16.0, 16.0, 256);
  const auto u = make_gaussian(1);
  double worst = 0.0;
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double s : {0.25, 0.5, 0.75}) {
      const auto rep =
          verify_multiplier(u, Side::right, make_params(alpha, s, 1), grid, 1e-3);
      for (const auto& c : rep.checks) {
        worst = std::max(worst, c.measured);
        if (!c.passed)
          return {false, "relative error " + fmt("%.3e", c.measured) + " at alpha=" +
                             fmt("%.2f", alpha) + " s=" + fmt("%.2f", s)};
      }
    }
  }
  const double el = seconds_since(t0);
  if (el >= 60.0) return {false, "exceeded the 60 s budget: " + fmt("%.1f s", el)};
  return {true, "9 order pairs, max rel err " + fmt("%.2e", worst) + ", " +
                    fmt("%.1f s", el)};
}

// ---- criterion 2: integration-by-parts duality for schwartz pairs ---------

Outcome criterion_pairing() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceTimeGrid grid(1, 16.0, 128, -16.0, 16.0, 128);
  const std::vector<std::pair<TestFunction, TestFunction>> pairs = {
      {make_gaussian(1), make_gaussian(1, 1.4, 0.8, spatial_point({0.7}), -0.4)},
      {make_gaussian(1, 0.8, 1.2, spatial_point({-0.5}), 0.2),
       make_gaussian(1, 1.5, 1.0, spatial_point({0.3}), 0.5)},
      {make_gaussian(1, 1.2, 0.7, spatial_point({0.0}), -0.6),
       make_gaussian(1, 0.9, 1.4, spatial_point({-0.8}), 0.1)},
  };
  double worst = 0.0;
  for (auto [alpha, s] : {std::pair{0.3, 0.25}, std::pair{0.5, 0.5}, std::pair{0.7, 0.75}}) {
    const auto p = make_params(alpha, s, 1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto pr = verify_parts(pairs[i].first, pairs[i].second, p, grid, Side::left);
      const double rel = pr.abs_gap / (1.0 + std::abs(pr.lhs));
      worst = std::max(worst, rel);
      if (!pr.passed || pr.abs_gap > 1e-4 * (1.0 + std::abs(pr.lhs)))
        return {false, "pair " + std::to_string(i) + " at alpha=" + fmt("%.2f", alpha) +
                           " s=" + fmt("%.2f", s) + ": gap " + fmt("%.3e", pr.abs_gap)};
    }
  }
  const double el = seconds_since(t0);
  if (el >= 60.0) return {false, "exceeded the 60 s budget: " + fmt("%.1f s", el)};
  return {true, "3 pairs x 3 order combos, max scaled gap " + fmt("%.2e", worst) +
                    ", " + fmt("%.1f s", el)};
}

// ---- criterion 3: output decay exponents on both axes ---------------------

Outcome criterion_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = make_params(0.5, 0.5, 1);
  std::string detail;
  for (const auto& [nm, f] :
       {std::pair<std::string, TestFunction>{"cutoff", make_cutoff_product(1)},
        {"gaussian", make_gaussian(1)}}) {
    for (auto ax : {DecayFitReport::Axis::space, DecayFitReport::Axis::time}) {
      const auto rep = decay_profile(f, ax, p);
      const double dev = std::abs(rep.fitted_exponent - rep.theoretical_exponent);
      if (dev > 0.1)
        return {false, nm + " " +
                           (ax == DecayFitReport::Axis::space ? "space" : "time") +
                           " fit " + fmt("%.3f", rep.fitted_exponent) + " vs " +
                           fmt("%.2f", rep.theoretical_exponent)};
      detail += (detail.empty() ? "" : ", ") + nm +
                (ax == DecayFitReport::Axis::space ? "/space " : "/time ") +
                fmt("%.3f", rep.fitted_exponent);
    }
  }
  const double el = seconds_since(t0);
  if (el >= 120.0) return {false, "exceeded the 120 s budget: " + fmt("%.1f s", el)};
  return {true, detail + " (theory 2.0 space, 1.5 time)"};
}

// ---- criterion 4: the decay rate is attained (lower bound match) ----------

Outcome criterion_counterexample() {
  const auto rep = counterexample_lower_bound(make_params(0.5, 0.5, 1));
  double c0 = 0.0;
  for (const auto& c : rep.checks) {
    if (!c.passed) return {false, c.name + ": measured " + fmt("%.4g", c.measured)};
    if (c.name == "counterexample/lower_bound") c0 = c.measured;
  }
  if (!(c0 > 0.0)) return {false, "lower-bound constant is not positive"};
  return {true, "all " + std::to_string(rep.checks.size()) +
                    " records, bound constant " + fmt("%.3g", c0)};
}

// ---- criterion 5: eigenfunction and closed-form point values --------------

Outcome criterion_closed_forms() {
  double worst_eig = 0.0;
  for (double alpha : {0.1, 0.5, 0.9}) {
    const auto p = make_params(alpha, 0.5, 1);
    const auto u = make_exponential(1, 1.0);
    for (double t : {-1.0, 0.0, 1.0}) {
      const auto r = marchaud_left(u, spatial_point({0.0}), t, p);
      const double rel = std::abs(r.value - Complex{std::exp(t), 0.0}) / std::exp(t);
      worst_eig = std::max(worst_eig, rel);
      if (rel > 1e-5)
        return {false, "exponential eigenfunction off by " + fmt("%.3e", rel) +
                           " at alpha=" + fmt("%.2f", alpha) + " t=" + fmt("%.1f", t)};
    }
  }
  const auto p = make_params(0.5, 0.5, 1);
  const auto r = frac_laplacian_direct(make_gaussian(1), spatial_point({0.0}), 0.0, p);
  const double expect = 0.79788456080286535588;  // sqrt(2/pi)
  const double rel = std::abs(r.value.real() - expect) / expect;
  if (rel > 1e-4)
    return {false, "gaussian origin value off by " + fmt("%.3e", rel)};
  return {true, "eigenfunction worst rel " + fmt("%.2e", worst_eig) +
                    ", origin value rel " + fmt("%.2e", rel)};
}

// ---- criterion 6: integral-then-derivative round trip ---------------------

Outcome criterion_roundtrip() {
  for (double alpha : {0.1, 0.5, 0.9}) {
    const auto p = make_params(alpha, 0.5, 1);
    const auto bump = verify_fftc(make_time_bump(1, 0.0, 1.0), p, {0.5, 1.5, 3.0});
    if (!bump.passed())
      return {false, "bump round trip failed at alpha=" + fmt("%.2f", alpha)};
    const auto expo = verify_fftc(make_exponential(1, 1.0), p, {-1.0, 0.0, 1.0});
    if (!expo.passed())
      return {false, "exponential round trip failed at alpha=" + fmt("%.2f", alpha)};
  }
  return {true, "bump and exponential inputs at three orders, 1e-4(1+max|f|)"};
}

// ---- criterion 7: one-sided maximum principle on random histories ---------

Outcome criterion_max_principle() {
  std::mt19937 rng(20260816u);
  std::uniform_real_distribution<double> amp(0.0, 2.0);
  std::uniform_real_distribution<double> center(-3.0, 0.0);
  std::uniform_real_distribution<double> width(0.3, 2.0);
  std::uniform_real_distribution<double> plateau(0.0, 1.0);
  const double alphas[3] = {0.3, 0.5, 0.7};
  for (int i = 0; i < 20; ++i) {
    const double a1 = amp(rng);
    const double c = center(rng);
    const double w = width(rng);
    const double base = (i % 3 == 0) ? 0.0 : plateau(rng);
    HistoryProblem hp;
    hp.history = [=](double t) {
      return a1 * std::exp(-0.5 * (t - c) * (t - c) / (w * w)) + base;
    };
    if (base > 0.0) {
      hp.history_tail.kind = TailKind::constant;
    } else {
      hp.history_tail.kind = TailKind::gaussian;
      hp.history_tail.a = c;
      hp.history_tail.b = w;
    }
    hp.rhs = [](double) { return 0.0; };
    hp.a = 0.0;
    hp.T = 1.0;
    hp.steps = 64;
    hp.alpha = alphas[i % 3];
    const auto rep = max_principle_check(hp);
    if (!rep.passed())
      return {false, "violation on random history " + std::to_string(i) +
                         " (alpha=" + fmt("%.1f", hp.alpha) + ")"};
  }
  return {true, "20 randomized nonnegative histories, minimum >= -1e-10"};
}

// ---- criterion 8: truncated history integrals ------------------------------

Outcome criterion_truncation() {
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  const auto p = make_params(0.5, 0.5, 1);
  const auto bump = truncation_convergence(make_time_bump(1, 0.0, 1.0), 2.0, p, radii);
  if (!bump.monotone) return {false, "bump truncations are not nondecreasing"};
  for (std::size_t i = 1; i < bump.values.size(); ++i)
    if (bump.values[i] < bump.values[i - 1] - 1e-12)
      return {false, "bump truncation dropped at R=" + fmt("%.0f", radii[i])};
  if (bump.diverges) return {false, "bump truncations flagged divergent"};

  std::string growths;
  for (double alpha : {0.3, 0.5, 0.7}) {
    const auto pc = make_params(alpha, 0.5, 1);
    const auto flat = truncation_convergence(make_constant(1), 0.0, pc, radii);
    if (!flat.diverges) return {false, "constant input not flagged divergent"};
    if (std::abs(flat.growth_exponent - alpha) > 0.05)
      return {false, "constant growth " + fmt("%.3f", flat.growth_exponent) +
                         " vs alpha=" + fmt("%.2f", alpha)};
    growths += (growths.empty() ? "" : "/") + fmt("%.3f", flat.growth_exponent);
  }
  return {true, "bump nondecreasing; constant grows at R^alpha (" + growths + ")"};
}

// ---- criterion 9: rigidity evidence across the order split ----------------

Outcome criterion_rigidity() {
  // (a) constants are annihilated
  for (double s : {0.25, 0.75}) {
    const auto p = make_params(0.5, s, 1);
    const auto r = dual_apply(make_constant(1), spatial_point({0.3}), 0.2, Side::left, p);
    if (std::abs(r.value) > 1e-8)
      return {false, "constant output " + fmt("%.3e", std::abs(r.value))};
  }
  // (b) the affine coordinate is annihilated for s > 1/2
  {
    const auto p = make_params(0.5, 0.75, 1);
    const auto r =
        dual_apply(make_affine_x1(1), spatial_point({1.5}), 0.2, Side::left, p);
    if (std::abs(r.value) > 1e-6)
      return {false, "affine output " + fmt("%.3e", std::abs(r.value))};
  }
  // (c) combined symbol vanishes only at the frequency origin, plus the
  //     spectral-support and kernel records of the aggregated harness
  const SpaceTimeGrid grid(2, 8.0, 32, -8.0, 8.0, 32);
  for (double s : {0.25, 0.75}) {
    const auto rep = liouville_harness(make_params(0.5, s, 2), grid);
    bool saw_origin = false, saw_nonvanish = false;
    for (const auto& c : rep.checks) {
      if (c.name == "harness/symbol_origin") saw_origin = true;
      if (c.name == "harness/symbol_nonvanishing") saw_nonvanish = true;
      if (!c.passed) return {false, c.name + " failed at s=" + fmt("%.2f", s)};
    }
    if (!saw_origin || !saw_nonvanish)
      return {false, "harness is missing the symbol records"};
  }
  // (d) weighted membership of x1 flips exactly at s = 1/2
  const Verdict expect[4] = {Verdict::infinite, Verdict::infinite, Verdict::finite,
                             Verdict::finite};
  const double orders[4] = {0.25, 0.4, 0.6, 0.75};
  for (int i = 0; i < 4; ++i) {
    const auto p = make_params(0.5, orders[i], 2);
    const auto rep = weighted_norm(make_affine_x1(2), WeightedSpace::L_2s, p);
    if (rep.verdict != expect[i])
      return {false, std::string("membership verdict at s=") + fmt("%.2f", orders[i]) +
                         " is " + verdict_name(rep.verdict)};
  }
  return {true, "kernels, symbol support, and the membership flip at s = 1/2"};
}

// ---- criterion 10: full verification sweep through the CLI ----------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_cli_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string base = std::string("\"") + FRACDUAL_CLI_PATH + "\" verify > ";
  const int rc1 = std::system((base + "acceptance_run1.json 2> acceptance_run1.err").c_str());
  const int rc2 = std::system((base + "acceptance_run2.json 2> acceptance_run2.err").c_str());
  const double el = seconds_since(t0);
  const std::string a = slurp("acceptance_run1.json");
  const std::string b = slurp("acceptance_run2.json");
  for (const char* f : {"acceptance_run1.json", "acceptance_run2.json",
                        "acceptance_run1.err", "acceptance_run2.err"})
    std::remove(f);
  const int e1 = WIFEXITED(rc1) ? WEXITSTATUS(rc1) : -1;
  const int e2 = WIFEXITED(rc2) ? WEXITSTATUS(rc2) : -1;
  if (e1 != 0 || e2 != 0)
    return {false, "exit codes " + std::to_string(e1) + "/" + std::to_string(e2)};
  if (a.empty() || a != b) return {false, "reruns differ or produced no output"};
  if (el >= 900.0) return {false, "exceeded the 15 min budget: " + fmt("%.0f s", el)};
  return {true, "default sweep passed twice, byte-identical, " + fmt("%.1f s", el) +
                    " for both runs"};
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items = {
      {1, "frequency multiplier identity for the gaussian", criterion_multiplier},
      {2, "integration-by-parts duality for schwartz pairs", criterion_pairing},
      {3, "algebraic output decay on both axes", criterion_decay},
      {4, "far-field lower bound attains the decay rate", criterion_counterexample},
      {5, "exponential eigenfunction and gaussian origin value", criterion_closed_forms},
      {6, "integral-then-derivative round trip", criterion_roundtrip},
      {7, "one-sided maximum principle on random histories", criterion_max_principle},
      {8, "truncated history integrals: monotone or alpha growth", criterion_truncation},
      {9, "rigidity evidence across the order split", criterion_rigidity},
      {10, "deterministic full verification sweep via the CLI", criterion_cli_sweep},
  };

  int failures = 0;
  for (const auto& item : items) {
    Outcome out;
    try {
      out = item.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %2d: %s (%s)\n", out.passed ? "PASS" : "FAIL", item.id,
                item.label, out.detail.c_str());
    std::fflush(stdout);
    if (!out.passed) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, items.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", items.size());
  return 0;
}
