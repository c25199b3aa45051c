// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single PASS or FAIL line. Exits nonzero if anything fails.
//
//   1  fixed walkthrough values at N = 16, i = 13
//   2  exhaustive small-scale equivalence against baseline and referee
//   3  multiplication mode: instruction counts constant in n
//   4  restricted mode: counts affine in ceil(log2 L), pinned slopes
//   5  peak live ultraword registers <= 16 across criterion 2's workload
//   6  scattered budget: sum = 1 read, update = 1 read + 1 write
//   7  prefix_sum equals the sequential scan, modes bit-identical
//   8  uw_mul refused under the restricted set, none issued by 2 or 4

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uwram/fenwick.hpp"
#include "uwram/machine.hpp"
#include "uwram/oracle.hpp"
#include "uwram/psum.hpp"
#include "uwram/uwops.hpp"

using namespace uwram;

namespace {

// Pinned tolerances and budgets.
constexpr std::size_t kRegisterBudget = 16;
constexpr std::uint64_t kSumSlope = 8, kSumBase = 27;       // restricted sum
constexpr std::uint64_t kUpdSlope = 7, kUpdBase = 49;       // restricted update
constexpr std::uint64_t kScanSlope = 3, kScanBase = 2;      // restricted scan
constexpr double kWalkthroughSeconds = 1.0;
constexpr double kEquivalenceSeconds = 60.0;
constexpr double kScanSuiteSeconds = 30.0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Stats carried from the heavy workloads into the later criteria.
struct Carried {
  bool equivalence_ran = false;
  std::size_t max_peak = 0;
  std::uint64_t sums = 0;
  std::uint64_t updates = 0;
  std::uint64_t budget_violations = 0;
  std::uint64_t restricted_mul_ops = 0;  // accumulated over criteria 2 and 4
  bool counts_ran = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

// ---------------------------------------------------------------- criterion 1

Outcome walkthrough() {
  const auto t0 = std::chrono::steady_clock::now();
  for (MachineMode mode :
       {MachineMode::Restricted, MachineMode::Multiplication}) {
    Machine m(mode, 64, 20);
    // A chosen so the layout holds F[8] = 11, F[12] = 8, F[13] = 1.
    std::vector<word_t> a(16, 0);
    a[0] = 11;  // A[1]
    a[8] = 8;   // A[9]
    a[12] = 1;  // A[13]
    PartialSumsUW p = PartialSumsUW::build(m, 1, a);

    if (p.sum_offsets(13) != m.make_ultraword({1, 0, 4, 8}))
      return {false, "sum offsets for i=13 are not {1,4,8} at words {0,2,3}"};
    if (p.sum_sequence(13) != m.make_ultraword({13, 12, 0, 8, 0, 0}))
      return {false, "sum sequence for i=13 is not 13,12,8,0"};
    if (p.update_offsets(13) != m.make_ultraword({1, 2, 0, 0, 16}))
      return {false, "update offsets for i=13 are not {1,2,16}"};
    if (p.update_sequence(13).sequence != m.make_ultraword({13, 14, 16}))
      return {false, "valid update indices for i=13 are not {13,14,16}"};

    if (m.memory()[1 + 13] != 1 || m.memory()[1 + 12] != 8 ||
        m.memory()[1 + 8] != 11)
      return {false, "layout did not produce F[13]=1, F[12]=8, F[8]=11"};
    const word_t s = p.sum(13);
    if (s != 20)
      return {false, "sum(13) = " + std::to_string(s) + ", want 20"};

    std::vector<word_t> before = m.memory();
    p.update(13, 5);
    std::vector<word_t> after = m.memory();
    std::vector<std::size_t> changed;
    for (std::size_t k = 0; k < before.size(); ++k)
      if (before[k] != after[k]) changed.push_back(k);
    const std::vector<std::size_t> want{1 + 13, 1 + 14, 1 + 16};
    if (changed != want)
      return {false, "update(13,5) touched " + std::to_string(changed.size()) +
                         " slots, want exactly F[13],F[14],F[16]"};
    for (std::size_t k : want)
      if (after[k] != before[k] + 5)
        return {false, "update(13,5) did not add 5 to every touched slot"};
  }
  const double s = seconds_since(t0);
  if (s >= kWalkthroughSeconds)
    return {false, "walkthrough took " + fmt_seconds(s) + ", budget 1 s"};
  return {true, "sum(13)=20 and update(13,5) hits F[13],F[14],F[16] in both "
                "modes (" +
                    fmt_seconds(s) + ")"};
}

// ---------------------------------------------------------------- criterion 2

Outcome equivalence(Carried& carry) {
  const auto t0 = std::chrono::steady_clock::now();
  const unsigned w = 16;
  std::uint64_t checks = 0;

  for (MachineMode mode :
       {MachineMode::Restricted, MachineMode::Multiplication}) {
    for (std::size_t n = 1; n <= 64; ++n) {
      std::mt19937_64 rng(1000 * n + (mode == MachineMode::Restricted));
      const word_t bound = (payload_mask(w) + 1) / static_cast<word_t>(n);
      std::vector<word_t> values(n);
      for (auto& v : values) v = rng() % bound;

      const word_t base = 1;
      const std::size_t cap = std::bit_ceil(n);
      Machine pm(mode, w, base + cap + 2);
      Machine fm(MachineMode::Restricted, w, base + cap + 2);
      PartialSumsUW ps = PartialSumsUW::build(pm, base, values);
      FenwickArray fen = FenwickArray::build_in_place(fm, base, values);
      FlatPartialSums flat(values, w);
      std::vector<word_t> shadow = values;
      pm.reset_peak_live();

      auto checked_sum = [&](std::size_t i) -> bool {
        CostCounter before = pm.counters();
        const word_t a = ps.sum(i);
        CostCounter d = pm.counters() - before;
        if (d.scattered_reads != 1 || d.scattered_writes != 0)
          ++carry.budget_violations;
        ++carry.sums;
        ++checks;
        return a == fen.sum(i) && a == flat.sum(i);
      };
      auto sweep = [&]() -> bool {
        for (std::size_t i = 0; i <= n; ++i)
          if (!checked_sum(i)) return false;
        return true;
      };

      if (!sweep())
        return {false, "sum mismatch on the fresh array, n = " +
                           std::to_string(n) + ", mode " + to_string(mode)};

      for (int t = 0; t < 1000; ++t) {
        const std::size_t i = 1 + rng() % n;
        const word_t next = rng() % bound;
        const word_t delta = delta_residue(
            static_cast<std::int64_t>(next) -
                static_cast<std::int64_t>(shadow[i - 1]),
            w);
        shadow[i - 1] = next;
        CostCounter before = pm.counters();
        ps.update(i, delta);
        CostCounter d = pm.counters() - before;
        if (d.scattered_reads != 1 || d.scattered_writes != 1)
          ++carry.budget_violations;
        ++carry.updates;
        fen.update(i, delta);
        flat.update(i, delta);
        if (t % 100 == 99 && !sweep())
          return {false, "sum mismatch after update " + std::to_string(t) +
                             ", n = " + std::to_string(n) + ", mode " +
                             to_string(mode)};
      }
      if (!sweep())
        return {false, "final sweep mismatch, n = " + std::to_string(n) +
                           ", mode " + to_string(mode)};

      for (std::size_t k = 0; k <= cap; ++k)
        if (pm.memory()[base + k] != fm.memory()[base + k])
          return {false, "final layout differs from baseline at slot " +
                             std::to_string(k) + ", n = " + std::to_string(n)};

      carry.max_peak = std::max(carry.max_peak, pm.peak_live_ultrawords());
      if (mode == MachineMode::Restricted)
        carry.restricted_mul_ops += pm.counters().uw_mul_ops;
    }
  }
  carry.equivalence_ran = true;

  const double s = seconds_since(t0);
  if (s >= kEquivalenceSeconds)
    return {false, "workload took " + fmt_seconds(s) + ", budget 60 s"};
  return {true, "n in [1,64], both modes: " + std::to_string(checks) +
                    " sums agree with baseline and referee, layouts "
                    "bit-identical (" +
                    fmt_seconds(s) + ")"};
}

// ---------------------------------------------------------------- criterion 3

struct CountRange {
  std::uint64_t lo = ~std::uint64_t{0};
  std::uint64_t hi = 0;
  void add(std::uint64_t c) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
};

// Worst/best instruction counts over a deterministic index sample.
void sample_counts(PartialSumsUW& p, Machine& m, std::size_t n,
                   CountRange& sum_range, CountRange& upd_range) {
  std::mt19937_64 rng(17);
  std::vector<std::size_t> sums, upds;
  if (n <= 1024) {
    for (std::size_t i = 0; i <= n; ++i) sums.push_back(i);
    for (std::size_t i = 1; i <= n; ++i) upds.push_back(i);
  } else {
    for (int k = 0; k < 1024; ++k) {
      sums.push_back(rng() % (n + 1));
      upds.push_back(1 + rng() % n);
    }
  }
  for (std::size_t i : sums) {
    CostCounter before = m.counters();
    p.sum(i);
    sum_range.add((m.counters() - before).total());
  }
  for (std::size_t i : upds) {
    CostCounter before = m.counters();
    p.update(i, 1);
    upd_range.add((m.counters() - before).total());
  }
}

Outcome constant_time_mult() {
  std::vector<std::uint64_t> sum_counts, upd_counts;
  for (std::size_t n : {std::size_t{1} << 4, std::size_t{1} << 8,
                        std::size_t{1} << 12}) {
    Machine m(MachineMode::Multiplication, 64, n + 3);
    PartialSumsUW p =
        PartialSumsUW::build(m, 1, std::vector<word_t>(n, 1));
    CountRange sr, ur;
    sample_counts(p, m, n, sr, ur);
    if (sr.lo != sr.hi || ur.lo != ur.hi)
      return {false, "counts vary across i at n = " + std::to_string(n) +
                         " (sum " + std::to_string(sr.lo) + ".." +
                         std::to_string(sr.hi) + ", update " +
                         std::to_string(ur.lo) + ".." +
                         std::to_string(ur.hi) + ")"};
    sum_counts.push_back(sr.lo);
    upd_counts.push_back(ur.lo);
  }
  if (sum_counts[0] != sum_counts[1] || sum_counts[1] != sum_counts[2])
    return {false, "sum count changes with n: " +
                       std::to_string(sum_counts[0]) + ", " +
                       std::to_string(sum_counts[1]) + ", " +
                       std::to_string(sum_counts[2])};
  if (upd_counts[0] != upd_counts[1] || upd_counts[1] != upd_counts[2])
    return {false, "update count changes with n: " +
                       std::to_string(upd_counts[0]) + ", " +
                       std::to_string(upd_counts[1]) + ", " +
                       std::to_string(upd_counts[2])};
  return {true, "counts flat across n in {2^4, 2^8, 2^12}: sum = " +
                    std::to_string(sum_counts[0]) + ", update = " +
                    std::to_string(upd_counts[0]) +
                    ", max = min at every n"};
}

// ---------------------------------------------------------------- criterion 4

Outcome loglog_restricted(Carried& carry) {
  std::vector<std::uint64_t> sum_counts, upd_counts;
  std::vector<unsigned> rounds;
  for (std::size_t n : {std::size_t{1} << 3, std::size_t{1} << 7,
                        std::size_t{1} << 15}) {
    Machine m(MachineMode::Restricted, 64, n + 3);
    PartialSumsUW p =
        PartialSumsUW::build(m, 1, std::vector<word_t>(n, 1));
    CountRange sr, ur;
    sample_counts(p, m, n, sr, ur);
    if (sr.lo != sr.hi || ur.lo != ur.hi)
      return {false, "counts vary across i at n = " + std::to_string(n)};
    sum_counts.push_back(sr.lo);
    upd_counts.push_back(ur.lo);
    rounds.push_back(uwops::ceil_log2(p.sequence_words()));
    carry.restricted_mul_ops += m.counters().uw_mul_ops;
  }
  carry.counts_ran = true;

  const auto affine = [](const std::vector<std::uint64_t>& c) {
    return c[1] > c[0] && c[1] - c[0] == c[2] - c[1];
  };
  if (!affine(sum_counts))
    return {false, "sum counts " + std::to_string(sum_counts[0]) + ", " +
                       std::to_string(sum_counts[1]) + ", " +
                       std::to_string(sum_counts[2]) +
                       " are not affine with positive slope"};
  if (!affine(upd_counts))
    return {false, "update counts " + std::to_string(upd_counts[0]) + ", " +
                       std::to_string(upd_counts[1]) + ", " +
                       std::to_string(upd_counts[2]) +
                       " are not affine with positive slope"};
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    if (sum_counts[k] > kSumSlope * rounds[k] + kSumBase)
      return {false, "sum count exceeds 8r+27 at r = " +
                         std::to_string(rounds[k])};
    if (upd_counts[k] > kUpdSlope * rounds[k] + kUpdBase)
      return {false, "update count exceeds 7r+49 at r = " +
                         std::to_string(rounds[k])};
  }
  return {true, "counts over n in {2^3, 2^7, 2^15}: sum " +
                    std::to_string(sum_counts[0]) + "," +
                    std::to_string(sum_counts[1]) + "," +
                    std::to_string(sum_counts[2]) + " and update " +
                    std::to_string(upd_counts[0]) + "," +
                    std::to_string(upd_counts[1]) + "," +
                    std::to_string(upd_counts[2]) +
                    ": equal positive steps, within 8r+27 and 7r+49"};
}

// ---------------------------------------------------------------- criterion 5

Outcome register_budget(const Carried& carry) {
  if (!carry.equivalence_ran)
    return {false, "equivalence workload did not run"};
  if (carry.max_peak > kRegisterBudget)
    return {false, "peak live ultrawords " + std::to_string(carry.max_peak) +
                       " exceeds " + std::to_string(kRegisterBudget)};
  return {true, "peak live ultrawords " + std::to_string(carry.max_peak) +
                    " <= " + std::to_string(kRegisterBudget) +
                    " across the full equivalence workload"};
}

// ---------------------------------------------------------------- criterion 6

Outcome scattered_budget(const Carried& carry) {
  if (!carry.equivalence_ran)
    return {false, "equivalence workload did not run"};
  if (carry.budget_violations != 0)
    return {false, std::to_string(carry.budget_violations) +
                       " operations broke the scattered budget"};
  return {true, std::to_string(carry.sums) + " sums at 1+0 and " +
                    std::to_string(carry.updates) +
                    " updates at 1+1 scattered accesses, no exceptions"};
}

// ---------------------------------------------------------------- criterion 7

Outcome scan_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(29);
  std::uint64_t cases = 0;

  for (unsigned w : {8u, 16u, 64u}) {
    Machine mr(MachineMode::Restricted, w);
    Machine mm(MachineMode::Multiplication, w);
    const uwops::Constants cr = uwops::Constants::make(mr);
    const uwops::Constants cm = uwops::Constants::make(mm);
    const word_t payload = payload_mask(w);

    std::vector<word_t> in, scan;
    for (unsigned len = 1; len <= w; ++len) {
      const word_t bound = (payload + 1) / len;
      const unsigned r = uwops::ceil_log2(len);
      const std::uint64_t restricted_budget = kScanSlope * r + kScanBase;
      in.resize(len);
      scan.assign(w, 0);

      for (int iter = 0; iter < 10000; ++iter) {
        word_t acc = 0;
        for (unsigned j = 0; j < len; ++j) {
          in[j] = rng() % bound;
          scan[j] = acc += in[j];
        }

        CostCounter b0 = mr.counters();
        Ultraword rr = uwops::prefix_sum(mr, cr, mr.make_ultraword(in), len);
        if ((mr.counters() - b0).total() > restricted_budget)
          return {false, "restricted scan cost above 3r+2 at w = " +
                             std::to_string(w) +
                             ", len = " + std::to_string(len)};

        CostCounter b1 = mm.counters();
        Ultraword rm = uwops::prefix_sum(mm, cm, mm.make_ultraword(in), len);
        CostCounter dm = mm.counters() - b1;
        if (dm.total() != 3 || dm.uw_mul_ops != 1)
          return {false, "one-multiplication scan cost is not 3 at w = " +
                             std::to_string(w) +
                             ", len = " + std::to_string(len)};

        if (rr.words() != scan)
          return {false, "restricted scan differs from the sequential "
                         "reference at w = " +
                             std::to_string(w) +
                             ", len = " + std::to_string(len)};
        if (!(rr == rm))
          return {false, "instruction sets disagree at w = " +
                             std::to_string(w) +
                             ", len = " + std::to_string(len)};
        ++cases;
      }
    }
  }

  const double s = seconds_since(t0);
  if (s >= kScanSuiteSeconds)
    return {false, "suite took " + fmt_seconds(s) + ", budget 30 s"};
  return {true, std::to_string(cases) +
                    " random scans match the sequential reference, modes "
                    "bit-identical, costs within 3r+2 and flat 3 (" +
                    fmt_seconds(s) + ")"};
}

// ---------------------------------------------------------------- criterion 8

Outcome mode_enforcement(const Carried& carry) {
  Machine m(MachineMode::Restricted, 16);
  Ultraword x = m.make_ultraword({3});
  bool threw = false;
  try {
    m.uw_mul(x, x);
  } catch (const ModeViolation&) {
    threw = true;
  }
  if (!threw)
    return {false, "uw_mul did not raise a mode violation when restricted"};
  if (m.counters().total() != 0)
    return {false, "refused uw_mul still charged an instruction"};
  if (!carry.equivalence_ran || !carry.counts_ran)
    return {false, "restricted workloads did not run"};
  if (carry.restricted_mul_ops != 0)
    return {false, "restricted workloads issued " +
                       std::to_string(carry.restricted_mul_ops) + " uw_mul"};
  return {true, "uw_mul throws under the restricted set and the restricted "
                "workloads issued zero multiplications"};
}

}  // namespace

int main() {
  Carried carry;
  int failures = 0;
  int index = 0;

  const auto run = [&](const char* name, auto&& fn) {
    ++index;
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.ok) ++failures;
    std::cout << "criterion " << index << (out.ok ? " PASS" : " FAIL") << ": "
              << name << ": " << out.detail << '\n';
    std::cout.flush();
  };

  run("walkthrough", [] { return walkthrough(); });
  run("oracle equivalence", [&] { return equivalence(carry); });
  run("constant-time multiplication mode", [] { return constant_time_mult(); });
  run("doubly logarithmic restricted mode", [&] { return loglog_restricted(carry); });
  run("register budget", [&] { return register_budget(carry); });
  run("scattered-access budget", [&] { return scattered_budget(carry); });
  run("parallel scan property suite", [] { return scan_suite(); });
  run("mode enforcement", [&] { return mode_enforcement(carry); });

  if (failures == 0) {
    std::cout << "acceptance: 8/8 PASS\n";
    return 0;
  }
  std::cout << "acceptance: " << (8 - failures) << "/8 PASS, " << failures
            << " FAIL\n";
  return 1;
}
