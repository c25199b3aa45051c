#pragma once

// Partial sums over a Fenwick layout where each query or update computes
// its whole index chain inside ultraword registers and then touches
// memory with a single scattered access.
//
// The key identity: the chain i -> i - 2^rmb(i) -> ... (for sum) visits
// i minus each running sum of i's set bits taken low to high, and the
// chain i -> i + 2^rmb(i) -> ... (for update) visits i plus each running
// sum of the offsets {2^rmb(i)} union {2^j : bit j of i clear,
// rmb(i) < j <= log2 N}. So both chains fall out of one parallel prefix
// sum over an offsets ultraword, followed by a componentwise add or
// subtract against broadcast copies of i.
//
// Sequence words are budgeted L = log2(N) + 2 wide: word 0 carries the
// first element and the offset at word j lands element j+1, so the
// largest landing spot is log2(N) + 1. Positions outside the real chain
// are zeroed by extraction -- without it they would hold stray copies of
// i and the scattered read would fetch F[i] multiple times. Update
// chains additionally drop words whose value exceeds N (the terminal
// overshoot, at most 3N < 2^(w-1) by the capacity precondition, which
// demands log2(N) + 3 <= w - 1).
//
// Every zeroed lane then addresses slot base+0, pinned to zero: reads
// contribute nothing and writes re-store zero, so scattered access stays
// conflict-free by construction.
//
// Costs per operation, counted by the tests: one scattered read for sum,
// one read plus one write for update, zero word-memory touches, and an
// instruction total that is constant in multiplication mode and
// a * ceil(log2 L) + b under the restricted set.
//
// Mode caveat: updates are exact mod 2^(w-1) in both modes. Restricted
// sums are too. Multiplication-mode sums fold the fetched words with the
// one-multiplication prefix sum, which needs true running sums below
// 2^(w-1) (see uwops::prefix_sum); keep workloads within that domain when
// running the multiplication ISA.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uwram/machine.hpp"
#include "uwram/uwops.hpp"

namespace uwram {

class PartialSumsUW {
 public:
  // Builds F in machine memory at [base, base+N] (slot base+0 pinned to
  // zero) with the word-RAM in-place construction, then sets up the
  // ultraword constants. Requires log2(N) + 3 <= w - 1 and base + N below
  // 2^(w-1) so every chain value fits under the test bit.
  static PartialSumsUW build(Machine& m, word_t base,
                             std::span<const word_t> values);

  // Sum of A[1..i], i in [0, n].
  word_t sum(std::size_t i);

  // A[i] += delta (mod 2^(w-1) residue), i in [1, n].
  void update(std::size_t i, word_t delta);

  // A[i] as sum(i) - sum(i-1).
  word_t access(std::size_t i);

  // The offsets ultraword for sum: word j = 2^j where bit j of i is set.
  Ultraword sum_offsets(std::size_t i);

  // Sequence ultraword S: word 0 holds i and the word above each set bit
  // of i holds the next chain element; all other words are zero (the
  // chain's terminal zero is indistinguishable from padding).
  Ultraword sum_sequence(std::size_t i);

  // The offsets ultraword for update: word rmb(i) = 2^rmb(i), plus 2^j at
  // every clear bit j of i with rmb(i) < j <= log2 N.
  Ultraword update_offsets(std::size_t i);

  struct UpdateSequence {
    Ultraword sequence;  // chain elements <= N, zero elsewhere
    Ultraword valid;     // test bit set on each surviving chain word
  };
  UpdateSequence update_sequence(std::size_t i);

  // Named pipeline snapshots for rendering walkthrough tables.
  struct TraceRow {
    std::string label;
    std::vector<word_t> words;
  };
  std::vector<TraceRow> sum_trace(std::size_t i);
  std::vector<TraceRow> update_trace(std::size_t i);

  std::size_t size() const { return n_; }
  std::size_t capacity() const { return cap_; }
  unsigned sequence_words() const { return seq_words_; }  // L
  word_t base() const { return base_; }
  Machine& machine() { return *m_; }

 private:
  PartialSumsUW(Machine& m, word_t base, std::size_t n, std::size_t cap);

  using TraceSink = std::function<void(const char*, const Ultraword&)>;

  Ultraword broadcast_index(word_t value) const;
  Ultraword offsets_for_sum(const Ultraword& i_bcast) const;
  Ultraword offsets_for_update(std::size_t i, const Ultraword& i_bcast) const;
  // Shared back half of both pipelines: prefix-sum the offsets, place each
  // running total one word above its offset, combine with the broadcast
  // copies of i, and extract exactly the chain words. tmask marks those
  // words (word 0 plus one above each offset); update keeps it to build
  // its validity filter.
  struct ChainParts {
    Ultraword chain;
    Ultraword tmask;
  };
  ChainParts chain_from_offsets(const Ultraword& i_bcast, Ultraword offsets,
                                bool add, const TraceSink* sink) const;
  Ultraword sum_sequence_impl(std::size_t i, const TraceSink* sink);
  UpdateSequence update_sequence_impl(std::size_t i, const TraceSink* sink);

  Machine* m_;
  word_t base_;
  std::size_t n_;
  std::size_t cap_;       // N: padded power of two
  unsigned log_cap_;      // log2 N
  unsigned seq_words_;    // L = log2(N) + 2
  uwops::Constants k_;
  Ultraword sum_mask_;    // word j = 2^j for j in [0, log2 N]
  Ultraword base_bcast_;  // base in all w words
  Ultraword cap_bcast_;   // N in all w words
  Ultraword head_test_;   // lone test bit on word 0
};

}  // namespace uwram
