#pragma once

// Word-RAM partial sums baseline: a Fenwick layout F[1..N] living in
// machine memory, N a power of two, slot F[0] pinned to zero. F[i] holds
// the sum of A over (i - 2^rmb(i), i]. All arithmetic is mod 2^(w-1) so
// stored words never touch the test bit and deltas encode negatives as
// residues. Costs are charged to the machine's word counters: O(N) to
// build, O(log N) per query or update.

#include <cstdint>
#include <optional>
#include <span>

#include "uwram/machine.hpp"

namespace uwram {

// Position of the rightmost set bit. x == 0 is a domain error.
unsigned rmb(word_t x);

// 2^(w-1)-1: every representable stored value.
word_t payload_mask(unsigned w);

// Signed delta folded into its mod 2^(w-1) residue.
word_t delta_residue(std::int64_t delta, unsigned w);

class FenwickArray {
 public:
  // Lays F out at memory[base..base+N] where N = values.size() rounded up
  // to a power of two (at least 1). Construction overwrites that window:
  // values go in at stride one, then each doubling stride folds pair sums
  // into the even positions, all in place.
  static FenwickArray build_in_place(Machine& m, word_t base,
                                     std::span<const word_t> values);

  // Sum of A[1..i], i in [0, n]. Walks i -> i - 2^rmb(i) down to zero.
  word_t sum(std::size_t i);

  // A[i] += delta (as residue), i in [1, n]. Walks i -> i + 2^rmb(i) while
  // it stays within the padded capacity.
  void update(std::size_t i, word_t delta);

  // A[i] recovered as sum(i) - sum(i-1).
  word_t access(std::size_t i);

  // Smallest i with sum(i) >= j, for j >= 1; empty when the total falls
  // short. Meaningful only while all stored values are true non-negative
  // sums (no wrapped residues), since it compares payloads directly.
  std::optional<std::size_t> select(word_t j);

  std::size_t size() const { return n_; }        // logical element count
  std::size_t capacity() const { return cap_; }  // padded power of two
  word_t base() const { return base_; }

 private:
  FenwickArray(Machine& m, word_t base, std::size_t n, std::size_t cap)
      : m_(&m), base_(base), n_(n), cap_(cap) {}

  Machine* m_;
  word_t base_;
  std::size_t n_;
  std::size_t cap_;
};

}  // namespace uwram
