// Prints one PASS/FAIL line per acceptance criterion at the default scale:
// l in {3, 5, 7}, N = 6, M = 40, 100 samples per property, fixed seed.
// Exits nonzero if a criterion fails that is not a recorded blocker, or if a
// suite takes 30 s or more.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "iwalog/sampling.hpp"
#include "iwalog/suites.hpp"
#include "oracle_e.hpp"

namespace {

using namespace iwalog;
using verify::JobConfig;
using verify::SuiteReport;

constexpr std::uint64_t kSeed = 20240601;
constexpr int kN = 6;
constexpr int kM = 40;
constexpr int kSamples = 100;
constexpr double kBudgetSeconds = 30.0;
const std::vector<std::int64_t> kPrimes = {3, 5, 7};

struct Verdict {
  bool pass = true;
  std::string notes;

  void add(bool ok, const std::string& what) {
    pass = pass && ok;
    notes += (notes.empty() ? "" : "; ") + what;
  }
};

bool slow = false;

// Runs one suite, folding its result and wall time into the verdict.
void suite(Verdict& v, const std::string& name, const JobConfig& cfg, const std::string& label) {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = verify::run_suite(name, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int passed = 0, failed = 0;
  std::string first;
  for (const auto& c : r.checks) {
    passed += c.passed;
    failed += c.failed;
    if (!c.ok() && first.empty()) first = c.name + ": " + (c.first_failure.empty() ? "no samples" : c.first_failure);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, " %.1fs", secs);
  std::string note = label + " " + std::to_string(passed) + "/" + std::to_string(passed + failed) + buf;
  if (!first.empty()) note += " [" + first.substr(0, 160) + "]";
  if (secs >= kBudgetSeconds) {
    slow = true;
    note += " [over budget]";
  }
  v.add(r.ok() && secs < kBudgetSeconds, note);
}

JobConfig config(std::int64_t l, std::vector<std::int64_t> group = {}) { return {l, kN, kM, std::move(group), kSeed, kSamples}; }

Verdict per_prime_suite(const std::string& name) {
  Verdict v;
  for (std::int64_t l : kPrimes) suite(v, name, config(l), "l=" + std::to_string(l));
  return v;
}

// Literal uniqueness: canonical re-decomposition of a recomposed tuple,
// compared digit for digit.
int literal_uniqueness_matches(std::int64_t l, int count) {
  std::mt19937_64 rng(kSeed + static_cast<std::uint64_t>(l));
  int same = 0;
  for (int i = 0; i < count; ++i) {
    const int shift = static_cast<int>(rng() % 5) - 2;
    const WedgeUnitFactors f{shift, sampling::random_teichmueller(rng, l, kN), sampling::random_zl(rng, l, kN),
                             sampling::random_xi2(rng, l, kN, kM), sampling::random_wedge(rng, l, kN - 1, kM, 2)};
    const WedgeElem e = recompose_wedge_unit(f);
    const WedgeUnitFactors g = decompose_wedge_unit(e);
    const int p = e.prec();
    auto eq = [p](const WedgeElem& a, const WedgeElem& b) {
      return a.with_prec(p - 1).congruent(b.with_prec(p - 1), p - 1, std::min(a.window(), b.window()));
    };
    same += g.n == f.n && g.zeta.congruent(f.zeta, p) && g.z.prec() >= p && g.z.congruent(f.z, p) && eq(g.x, f.x) &&
            eq(g.w, f.w);
  }
  return same;
}

Verdict criterion5() {
  Verdict v = per_prime_suite("propA");
  std::string literal = "identical tuple under canonical re-decomposition:";
  bool all = true;
  for (std::int64_t l : kPrimes) {
    const int k = literal_uniqueness_matches(l, kSamples);
    all = all && k == kSamples;
    literal += " l=" + std::to_string(l) + " " + std::to_string(k) + "/" + std::to_string(kSamples);
  }
  v.add(all, literal);
  return v;
}

Verdict criterion8() {
  Verdict v;
  const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> groups = {
      {3, {3}}, {3, {9}}, {3, {3, 3}}, {5, {5}}};
  for (const auto& [l, orders] : groups) {
    std::string label = "H=";
    for (std::size_t i = 0; i < orders.size(); ++i) label += (i ? "x" : "") + std::string("Z/") + std::to_string(orders[i]);
    suite(v, "propB", config(l, orders), "propB " + label);
    suite(v, "lemma4", config(l, orders), "lemma4 " + label);
  }
  return v;
}

Verdict criterion9() {
  Verdict v;
  const SuiteReport r = verify::run_selftest();
  int passed = 0;
  for (const auto& c : r.checks) passed += c.ok();
  v.add(r.ok(), "selftest " + std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " fixtures");
  return v;
}

// Functional-equation E against the direct double series, evaluated by an
// independent big-integer oracle.
Verdict criterion10() {
  Verdict v;
  constexpr int n = 4, m = 12, count = 50;
  for (std::int64_t l : kPrimes) {
    std::mt19937_64 rng(kSeed ^ static_cast<std::uint64_t>(l));
    int mismatches = 0;
    for (int i = 0; i < count; ++i) {
      const LambdaElem y = sampling::random_lambda_elem(rng, l, n, m, 2);
      std::vector<std::int64_t> lift;
      for (std::uint64_t c : y.coeffs()) lift.push_back(static_cast<std::int64_t>(c));
      const auto expected = oracle::integral_exp_direct(lift, l, n, m);
      const LambdaElem got = integral_exp(y);
      for (int k = 0; k <= m; ++k) {
        if (got.coeff(k) != expected[static_cast<std::size_t>(k)]) {
          ++mismatches;
          break;
        }
      }
    }
    v.add(mismatches == 0, "l=" + std::to_string(l) + " " + std::to_string(mismatches) + "/" + std::to_string(count) + " mismatches");
  }
  return v;
}

struct Criterion {
  int id;
  std::string title;
  std::function<Verdict()> run;
  // A failure that is recorded in the decisions ledger as unreachable.
  std::string blocker;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "L(E(y)) = y and E(L(1+y)) = 1+y", [] { return per_prime_suite("lemma1"); }, ""},
      {2, "L(exp(ly)) = (l - psi)y and the exp(ly) factorization", [] { return per_prime_suite("corollary1"); }, ""},
      {3, "units of Lambda: decomposition, L(zeta(1+T)^z) = 0, T coefficient", [] { return per_prime_suite("corollary2"); }, ""},
      {4, "xi split: reconstruction, idempotence, kernel, T^2 Lambda", [] { return per_prime_suite("lemma2"); }, ""},
      {5, "units of Lambda_^: decomposition and uniqueness", criterion5,
       "truncated input fixes only part of z, x and w, so uniqueness holds on determined digits only"},
      {6, "coker of L: L(e) trivial, T^-1 nontrivial, xi(L(T)) mod l", [] { return per_prime_suite("cokerA"); }, ""},
      {7, "(1 - psi) solver and obstruction monomials", [] { return per_prime_suite("lemma3"); }, ""},
      {8, "group ring L: kernel, g^2 congruence, coker, exp_h0", criterion8, ""},
      {9, "fixed regression fixtures", criterion9, ""},
      {10, "functional-equation E vs direct series, N=4 M=12", criterion10, ""},
  };
  int passed = 0, blocked = 0, failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.add(false, std::string("threw: ") + e.what());
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << v.notes << ")";
    if (!v.pass && !c.blocker.empty()) std::cout << " [BLOCKER: " << c.blocker << "]";
    std::cout << std::endl;
    if (v.pass) ++passed;
    else if (!c.blocker.empty()) ++blocked;
    else ++failed;
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass, " << blocked << " blocked, " << failed
            << " failed" << std::endl;
  return failed == 0 && !slow ? 0 : 1;
}
