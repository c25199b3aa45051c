#pragma once

// Componentwise ultraword operations built from the machine instruction
// set. The per-word test bit (the top bit of each w-bit word) fences
// carries and borrows so all w words can be added, subtracted or compared
// in a constant number of instructions. Payload values therefore live in
// the low w-1 bits of each word; ops whose contract says "test bits clear"
// expect exactly that.
//
// Everything here is register-only: no operation reads or writes machine
// memory. Instruction costs are part of each contract and are pinned by
// the tests:
//
//   cw_add 2, cw_sub 3, cw_ge 3, extract 3, nonzero_mask 3, word shift 1,
//   broadcast 2*ceil(log2 len)+3, prefix_sum 3*ceil(log2 len)+2 under the
//   restricted set; broadcast 4 and prefix_sum 3 with one uw_mul each in
//   multiplication mode.

#include <cstdint>

#include "uwram/machine.hpp"

namespace uwram::uwops {

// Ultraword bit patterns every derived op draws on, built once per machine
// (setup cost, uncharged). Holding them costs five live registers.
struct Constants {
  Ultraword low_ones;    // every word = 1
  Ultraword clear_test;  // every word = 2^(w-1)-1: all payload bits
  Ultraword test_only;   // every word = 2^(w-1): test bits alone
  Ultraword diag;        // word j = 2^j for j in [0, w-1)
  Ultraword all_ones;    // every bit set

  static Constants make(Machine& m);
};

// z<j> = (x<j> + y<j>) mod 2^(w-1), carries confined per word.
Ultraword cw_add(Machine& m, const Constants& c, const Ultraword& x,
                 const Ultraword& y);

// z<j> = (x<j> - y<j>) mod 2^(w-1), borrows confined per word.
Ultraword cw_sub(Machine& m, const Constants& c, const Ultraword& x,
                 const Ultraword& y);

// Test bit j of the result is set iff x<j> >= y<j>; payload bits are zero.
Ultraword cw_ge(Machine& m, const Constants& c, const Ultraword& x,
                const Ultraword& y);

// Keeps x<j> where test_bits has word j's test bit set, zeroes the rest.
// The selection mask is materialized borrow-free: test_bits minus its own
// copy shifted down w-1 bits turns each set test bit into a payload mask.
Ultraword extract(Machine& m, const Ultraword& x, const Ultraword& test_bits);

// Test bit j set iff x<j> != 0 (x must carry clear test bits).
Ultraword nonzero_mask(Machine& m, const Constants& c, const Ultraword& x);

// Words 0..len-1 := value, rest zero. value < 2^(w-1). Restricted mode
// doubles an initial single copy ceil(log2 len) times; multiplication mode
// replicates with one uw_mul by low_ones. Both end by trimming to len.
Ultraword broadcast(Machine& m, const Constants& c, word_t value,
                    unsigned len);

// Inclusive prefix sums over words 0..len-1; words from len up are zero on
// output. Correct as long as every running sum stays below 2^(w-1) (the
// componentwise view; the one-multiplication route additionally relies on
// sums not reaching 2^w, which that bound implies). x is consumed: the
// restricted scan runs shift-and-add rounds in place.
Ultraword prefix_sum(Machine& m, const Constants& c, Ultraword x,
                     unsigned len);

// Whole-word shifts: one machine shift of k*w bits.
Ultraword word_shift_left(Machine& m, const Ultraword& x, unsigned k);
Ultraword word_shift_right(Machine& m, const Ultraword& x, unsigned k);

// ceil(log2 n) for n >= 1; the round count used by the contracts above.
unsigned ceil_log2(std::uint64_t n);

}  // namespace uwram::uwops
