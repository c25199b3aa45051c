#include "uwram/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "uwram/fenwick.hpp"
#include "uwram/oracle.hpp"
#include "uwram/psum.hpp"

namespace uwram::harness {

namespace {

constexpr std::size_t kRegisterBudget = 16;
constexpr std::size_t kExhaustiveLimit = 1024;

// Largest per-element value that keeps every true running sum below
// 2^(w-1), so both ISA modes are exact and the referee stays in lockstep.
word_t element_bound(std::size_t n, unsigned w) {
  word_t payload = payload_mask(w);
  word_t b = (payload + 1) / static_cast<word_t>(n ? n : 1);
  return b ? b : 1;
}

std::vector<word_t> random_values(std::size_t n, word_t bound,
                                  std::mt19937_64& rng) {
  std::vector<word_t> v(n);
  for (auto& x : v) x = rng() % bound;
  return v;
}

void check_capacity(std::size_t n, unsigned w) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  const std::size_t cap = std::bit_ceil(n);
  const unsigned log_cap = static_cast<unsigned>(std::countr_zero(cap));
  if (w < 8 || w > 64 || log_cap + 3 > w - 1)
    throw std::invalid_argument("n = " + std::to_string(n) +
                                " does not fit width w = " +
                                std::to_string(w));
}

}  // namespace

// ------------------------------------------------------------------- bench

std::vector<BenchRecord> run_bench(MachineMode mode, unsigned w,
                                   std::span<const std::size_t> sizes,
                                   std::uint64_t seed) {
  std::vector<BenchRecord> out;
  for (std::size_t n : sizes) {
    check_capacity(n, w);
    std::mt19937_64 rng(seed);
    const word_t bound = element_bound(n, w);
    const word_t base = 1;
    Machine m(mode, w, base + std::bit_ceil(n) + 1);
    PartialSumsUW ps = PartialSumsUW::build(
        m, base, random_values(n, bound, rng));

    for (const char* op : {"sum", "update"}) {
      const bool is_sum = op[0] == 's';
      std::vector<std::size_t> indices;
      if (n <= kExhaustiveLimit) {
        for (std::size_t i = is_sum ? 0 : 1; i <= n; ++i)
          indices.push_back(i);
      } else {
        for (std::size_t k = 0; k < kExhaustiveLimit; ++k)
          indices.push_back(is_sum ? rng() % (n + 1) : 1 + rng() % n);
      }

      BenchRecord rec;
      rec.mode = to_string(mode);
      rec.w = w;
      rec.n = n;
      rec.op = op;
      rec.min_instructions = ~std::uint64_t{0};
      m.reset_peak_live();
      for (std::size_t i : indices) {
        CostCounter before = m.counters();
        if (is_sum)
          ps.sum(i);
        else
          ps.update(i, delta_residue(1, w));
        CostCounter d = m.counters() - before;
        rec.min_instructions = std::min(rec.min_instructions, d.total());
        rec.max_instructions = std::max(rec.max_instructions, d.total());
        rec.scattered_reads = d.scattered_reads;
        rec.scattered_writes = d.scattered_writes;
      }
      rec.isa_instructions = rec.max_instructions;
      rec.peak_uw_registers = m.peak_live_ultrawords();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

void write_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << kCsvHeader << '\n';
  for (const BenchRecord& r : records)
    os << r.mode << ',' << r.w << ',' << r.n << ',' << r.op << ','
       << r.isa_instructions << ',' << r.scattered_reads << ','
       << r.scattered_writes << ',' << r.peak_uw_registers << '\n';
}

void write_markdown(std::ostream& os, std::span<const BenchRecord> records) {
  const char* names[8] = {"mode", "w",     "n",      "op",
                          "isa_instructions", "scattered_reads",
                          "scattered_writes", "peak_uw_registers"};
  std::vector<std::array<std::string, 8>> cells;
  for (const BenchRecord& r : records)
    cells.push_back({r.mode, std::to_string(r.w), std::to_string(r.n), r.op,
                     std::to_string(r.isa_instructions),
                     std::to_string(r.scattered_reads),
                     std::to_string(r.scattered_writes),
                     std::to_string(r.peak_uw_registers)});
  std::size_t width[8];
  for (int c = 0; c < 8; ++c) {
    width[c] = std::string(names[c]).size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::array<std::string, 8>& row) {
    os << '|';
    for (int c = 0; c < 8; ++c)
      os << ' ' << std::setw(static_cast<int>(width[c]))
         << (c < 4 ? std::left : std::right) << row[c] << " |";
    os << '\n';
  };
  line({names[0], names[1], names[2], names[3], names[4], names[5], names[6],
        names[7]});
  os << '|';
  for (int c = 0; c < 8; ++c) os << std::string(width[c] + 2, '-') << '|';
  os << '\n';
  for (const auto& row : cells) line(row);
}

// -------------------------------------------------------------------- fuzz

namespace {

std::string repro(const FuzzConfig& cfg, std::size_t op_index,
                  const std::string& what) {
  std::ostringstream os;
  os << "divergence at op " << op_index << ": " << what << " (seed="
     << cfg.seed << " n=" << cfg.n << " w=" << cfg.w << " mode="
     << to_string(cfg.mode) << ")";
  return os.str();
}

}  // namespace

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  check_capacity(cfg.n, cfg.w);
  FuzzReport report;
  std::mt19937_64 rng(cfg.seed);
  const word_t bound = element_bound(cfg.n, cfg.w);
  const std::size_t cap = std::bit_ceil(cfg.n);
  const word_t base = 1;  // nonzero so address translation is exercised

  std::vector<word_t> values = random_values(cfg.n, bound, rng);
  Machine pm(cfg.mode, cfg.w, base + cap + 2);
  Machine fm(cfg.mode, cfg.w, base + cap + 2);
  PartialSumsUW ps = PartialSumsUW::build(pm, base, values);
  FenwickArray fen = FenwickArray::build_in_place(fm, base, values);
  FlatPartialSums flat(values, cfg.w);
  std::vector<word_t> shadow = values;  // true values, to derive deltas

  auto window_equal = [&]() {
    for (std::size_t k = 0; k <= cap; ++k)
      if (pm.memory()[base + k] != fm.memory()[base + k]) return false;
    return true;
  };

  auto fail = [&](std::size_t t, const std::string& what) {
    report.ok = false;
    report.ops_executed = t;
    report.diagnostic = repro(cfg, t, what);
    return report;
  };

  for (std::size_t t = 0; t < cfg.ops; ++t) {
    const unsigned kind = rng() % 3;
    CostCounter before = pm.counters();
    if (kind == 0) {
      const std::size_t i = 1 + rng() % cfg.n;
      const word_t next = rng() % bound;
      const word_t delta =
          delta_residue(static_cast<std::int64_t>(next) -
                            static_cast<std::int64_t>(shadow[i - 1]),
                        cfg.w);
      shadow[i - 1] = next;
      ps.update(i, delta);
      fen.update(i, delta);
      flat.update(i, delta);
      CostCounter d = pm.counters() - before;
      if (d.scattered_reads != 1 || d.scattered_writes != 1)
        return fail(t, "update(" + std::to_string(i) +
                           ") scattered budget " +
                           std::to_string(d.scattered_reads) + "+" +
                           std::to_string(d.scattered_writes));
    } else if (kind == 1) {
      const std::size_t i = rng() % (cfg.n + 1);
      const word_t a = ps.sum(i), b = fen.sum(i), c = flat.sum(i);
      if (a != b || b != c)
        return fail(t, "sum(" + std::to_string(i) + "): psum=" +
                           std::to_string(a) + " fenwick=" +
                           std::to_string(b) + " flat=" + std::to_string(c));
      CostCounter d = pm.counters() - before;
      if (d.scattered_reads != 1 || d.scattered_writes != 0)
        return fail(t, "sum(" + std::to_string(i) + ") scattered budget " +
                           std::to_string(d.scattered_reads) + "+" +
                           std::to_string(d.scattered_writes));
    } else {
      const std::size_t i = 1 + rng() % cfg.n;
      const word_t a = ps.access(i), b = fen.access(i), c = flat.access(i);
      if (a != b || b != c)
        return fail(t, "access(" + std::to_string(i) + "): psum=" +
                           std::to_string(a) + " fenwick=" +
                           std::to_string(b) + " flat=" + std::to_string(c));
    }
    if (pm.memory()[base] != 0)
      return fail(t, "pinned zero slot clobbered");
    if ((t & 1023) == 1023 && !window_equal())
      return fail(t, "memory window diverged from baseline");
  }

  if (!window_equal())
    return fail(cfg.ops, "final memory window diverged from baseline");
  if (pm.peak_live_ultrawords() > kRegisterBudget)
    return fail(cfg.ops,
                "register budget exceeded: peak " +
                    std::to_string(pm.peak_live_ultrawords()));
  if (cfg.mode == MachineMode::Restricted && pm.counters().uw_mul_ops != 0)
    return fail(cfg.ops, "uw_mul issued on the restricted machine");

  report.ops_executed = cfg.ops;
  return report;
}

// -------------------------------------------------------------------- demo

namespace {

void render_rows(std::ostream& os,
                 const std::vector<PartialSumsUW::TraceRow>& rows,
                 unsigned seq_words, unsigned w) {
  const word_t test = word_t{1} << (w - 1);
  // Cell text: blanks for zero words; the validity row V carries test-bit
  // markers, shown as 1.
  auto cell = [&](const PartialSumsUW::TraceRow& row, unsigned j) {
    word_t v = row.words[j];
    if (v == 0) return std::string();
    if (row.label == "V") return std::string(v == test ? "1" : "?");
    return std::to_string(v);
  };
  std::size_t width = 2;
  for (const auto& row : rows)
    for (unsigned j = 0; j < seq_words; ++j)
      width = std::max(width, cell(row, j).size());
  width = std::max(width, std::to_string(seq_words - 1).size() + 1);

  os << "word ";
  for (unsigned j = seq_words; j-- > 0;)
    os << "  " << std::setw(static_cast<int>(width))
       << ("w" + std::to_string(j));
  os << '\n';
  for (const auto& row : rows) {
    os << std::setw(5) << std::left << row.label << std::right;
    for (unsigned j = seq_words; j-- > 0;)
      os << "  " << std::setw(static_cast<int>(width)) << cell(row, j);
    os << '\n';
  }
}

}  // namespace

void render_demo(std::ostream& os, std::size_t i, std::size_t n,
                 MachineMode mode, unsigned w) {
  check_capacity(n, w);
  if (i > n)
    throw std::invalid_argument("demo: i must be in [0, n]");
  const word_t base = 1;
  const std::size_t cap = std::bit_ceil(n);
  Machine m(mode, w, base + cap + 2);
  std::vector<word_t> values(n);
  for (std::size_t k = 0; k < n; ++k)
    values[k] = static_cast<word_t>(k + 1) & payload_mask(w);
  PartialSumsUW ps = PartialSumsUW::build(m, base, values);
  const unsigned L = ps.sequence_words();

  os << "partial sums over A[k] = k, n = " << n << ", N = " << cap
     << ", w = " << w << ", mode = " << to_string(mode) << ", L = " << L
     << "\n\n";

  os << "sum(" << i << ") pipeline\n";
  render_rows(os, ps.sum_trace(i), L, w);
  CostCounter before = m.counters();
  word_t s = ps.sum(i);
  CostCounter d = m.counters() - before;
  os << "sum(" << i << ") = " << s << "   [" << d.total()
     << " instructions: " << d.uw_ops << " uw, " << d.uw_mul_ops << " mul, "
     << d.word_ops << " word, " << d.scattered_reads << "+"
     << d.scattered_writes << " scattered]\n\n";

  if (i == 0) {
    os << "update pipeline skipped: update index domain is [1, n]\n";
    return;
  }

  os << "update(" << i << ", 5) pipeline\n";
  render_rows(os, ps.update_trace(i), L, w);
  std::vector<word_t> window(m.memory().begin() + base,
                             m.memory().begin() + base + cap + 1);
  before = m.counters();
  ps.update(i, delta_residue(5, w));
  d = m.counters() - before;
  os << "update(" << i << ", 5)   [" << d.total() << " instructions: "
     << d.uw_ops << " uw, " << d.uw_mul_ops << " mul, " << d.word_ops
     << " word, " << d.scattered_reads << "+" << d.scattered_writes
     << " scattered]\n";
  os << "changed F slots:";
  for (std::size_t k = 0; k <= cap; ++k)
    if (m.memory()[base + k] != window[k])
      os << "  F[" << k << "] " << window[k] << " -> "
         << m.memory()[base + k];
  os << '\n';
}

}  // namespace uwram::harness
