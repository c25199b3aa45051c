#pragma once

// Drivers behind the command-line tool: differential fuzzing of the
// ultraword structure against the word-RAM baseline and a flat-array
// referee, instruction-count measurement over deterministic index
// samples, and the walkthrough table renderer. Everything here is
// deterministic under a fixed (seed, w, mode); output carries no
// timestamps or addresses.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uwram/machine.hpp"

namespace uwram::harness {

inline constexpr const char* kCsvHeader =
    "mode,w,n,op,isa_instructions,scattered_reads,scattered_writes,"
    "peak_uw_registers";

struct BenchRecord {
  std::string mode;
  unsigned w = 0;
  std::size_t n = 0;
  std::string op;  // "sum" or "update"
  std::uint64_t isa_instructions = 0;  // worst case over the index sample
  std::uint64_t scattered_reads = 0;   // per operation
  std::uint64_t scattered_writes = 0;  // per operation
  std::size_t peak_uw_registers = 0;

  // Schedules are index-independent, so these coincide with the mean; the
  // bench runner asserts as much while sampling.
  std::uint64_t min_instructions = 0;
  std::uint64_t max_instructions = 0;
};

// One record per (size, op). Sizes must satisfy the capacity limits for
// w. Sampling covers every index when n <= 1024, else 1024 seeded picks.
std::vector<BenchRecord> run_bench(MachineMode mode, unsigned w,
                                   std::span<const std::size_t> sizes,
                                   std::uint64_t seed);

void write_csv(std::ostream& os, std::span<const BenchRecord> records);
void write_markdown(std::ostream& os, std::span<const BenchRecord> records);

struct FuzzConfig {
  std::size_t n = 64;
  std::size_t ops = 10000;
  std::uint64_t seed = 1;
  MachineMode mode = MachineMode::Restricted;
  unsigned w = 16;
};

struct FuzzReport {
  bool ok = true;
  std::size_t ops_executed = 0;
  std::string diagnostic;  // empty on success, else a one-line repro
};

// Random interleaving of sum/update/access driven through the ultraword
// structure, the Fenwick baseline and the flat referee in lockstep;
// every result, the pinned zero slot, the scattered-access budget and
// the final memory images are compared. Values are drawn so true running
// sums stay below 2^(w-1), the domain both ISA modes are exact on.
FuzzReport run_fuzz(const FuzzConfig& config);

// Walkthrough tables for sum and update at index i: the pipeline rows as
// word columns, high word on the left, zero words left blank.
void render_demo(std::ostream& os, std::size_t i, std::size_t n,
                 MachineMode mode, unsigned w);

}  // namespace uwram::harness
