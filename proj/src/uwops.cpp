#include "uwram/uwops.hpp"

#include <bit>
#include <vector>

namespace uwram::uwops {

unsigned ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::domain_error("ceil_log2: undefined for zero");
  return static_cast<unsigned>(std::bit_width(n - 1));
}

Constants Constants::make(Machine& m) {
  const unsigned w = m.width();
  const word_t test = word_t{1} << (w - 1);
  std::vector<word_t> low(w, 1), clear(w, test - 1), only(w, test),
      ones(w, m.word_mask()), diag(w, 0);
  for (unsigned j = 0; j + 1 < w; ++j) diag[j] = word_t{1} << j;
  return Constants{m.make_ultraword(std::move(low)),
                   m.make_ultraword(std::move(clear)),
                   m.make_ultraword(std::move(only)),
                   m.make_ultraword(std::move(diag)),
                   m.make_ultraword(std::move(ones))};
}

Ultraword cw_add(Machine& m, const Constants& c, const Ultraword& x,
                 const Ultraword& y) {
  return m.uw_and(m.uw_add(x, y), c.clear_test);
}

Ultraword cw_sub(Machine& m, const Constants& c, const Ultraword& x,
                 const Ultraword& y) {
  // Raising every test bit of x lets each word absorb its own borrow.
  return m.uw_and(m.uw_sub(m.uw_or(x, c.test_only), y), c.clear_test);
}

Ultraword cw_ge(Machine& m, const Constants& c, const Ultraword& x,
                const Ultraword& y) {
  // Word j's test bit survives the subtraction exactly when x<j> >= y<j>.
  return m.uw_and(m.uw_sub(m.uw_or(x, c.test_only), y), c.test_only);
}

Ultraword extract(Machine& m, const Ultraword& x,
                  const Ultraword& test_bits) {
  Ultraword mask = m.uw_sub(test_bits, m.uw_shr(test_bits, m.width() - 1));
  return m.uw_and(x, mask);
}

Ultraword nonzero_mask(Machine& m, const Constants& c, const Ultraword& x) {
  return cw_ge(m, c, x, c.low_ones);
}

namespace {

// AND with the all-ones pattern cut down to the low len words. Two
// instructions; len == w degenerates to a shift by zero.
Ultraword trim(Machine& m, const Constants& c, const Ultraword& x,
               unsigned len) {
  const unsigned w = m.width();
  return m.uw_and(x, m.uw_shr(c.all_ones, (w - len) * w));
}

}  // namespace

Ultraword broadcast(Machine& m, const Constants& c, word_t value,
                    unsigned len) {
  const unsigned w = m.width();
  if (len == 0 || len > w)
    throw std::invalid_argument("broadcast: length must be in [1, w]");
  if (value >> (w - 1) != 0)
    throw std::invalid_argument("broadcast: value must fit below the test bit");
  Ultraword u = m.uw_from_word(value);
  if (m.mode() == MachineMode::Multiplication) {
    u = m.uw_mul(u, c.low_ones);
  } else {
    // Copies double each round: 1, 2, 4, ... until they cover len words.
    for (unsigned have = 1; have < len; have *= 2)
      u = m.uw_or(u, word_shift_left(m, u, have));
  }
  return trim(m, c, u, len);
}

Ultraword prefix_sum(Machine& m, const Constants& c, Ultraword x,
                     unsigned len) {
  const unsigned w = m.width();
  if (len == 0 || len > w)
    throw std::invalid_argument("prefix_sum: length must be in [1, w]");
  if (m.mode() == MachineMode::Multiplication) {
    // Word k of x * low_ones accumulates words 0..k in one instruction.
    x = m.uw_mul(x, c.low_ones);
  } else {
    // Shift-and-add inclusive scan; round d folds in the word d places
    // down, so after ceil(log2 len) rounds every word holds its prefix.
    const unsigned span = unsigned{1} << ceil_log2(len);
    for (unsigned d = 1; d < span; d *= 2)
      x = cw_add(m, c, x, word_shift_left(m, x, d));
  }
  // Words len..w-1 hold partial windows of the input's tail; drop them.
  return trim(m, c, x, len);
}

Ultraword word_shift_left(Machine& m, const Ultraword& x, unsigned k) {
  return m.uw_shl(x, k * m.width());
}

Ultraword word_shift_right(Machine& m, const Ultraword& x, unsigned k) {
  return m.uw_shr(x, k * m.width());
}

}  // namespace uwram::uwops
