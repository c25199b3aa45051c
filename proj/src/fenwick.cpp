#include "uwram/fenwick.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace uwram {

unsigned rmb(word_t x) {
  if (x == 0) throw std::domain_error("rmb: undefined for zero");
  return static_cast<unsigned>(std::countr_zero(x));
}

word_t payload_mask(unsigned w) { return (word_t{1} << (w - 1)) - 1; }

word_t delta_residue(std::int64_t delta, unsigned w) {
  return static_cast<word_t>(delta) & payload_mask(w);
}

FenwickArray FenwickArray::build_in_place(Machine& m, word_t base,
                                          std::span<const word_t> values) {
  const std::size_t n = values.size();
  const std::size_t cap = std::bit_ceil(n ? n : std::size_t{1});
  if (base + cap + 1 > m.memory_size())
    throw std::out_of_range("FenwickArray: window past end of memory");
  const word_t payload = payload_mask(m.width());
  for (word_t v : values)
    if ((v & ~payload) != 0)
      throw std::invalid_argument("FenwickArray: value touches the test bit");

  m.store_word(base, 0);  // pinned zero slot
  for (std::size_t i = 0; i < cap; ++i)
    m.store_word(base + 1 + i, i < n ? values[i] : 0);

  // Fold pair sums upward: after the stride-s pass, every position that is
  // an odd multiple of 2s holds the sum of its 2s-wide range.
  for (std::size_t stride = 1; stride < cap; stride *= 2)
    for (std::size_t i = 2 * stride; i <= cap; i += 2 * stride) {
      word_t s = m.w_add(m.load_word(base + i), m.load_word(base + i - stride));
      m.store_word(base + i, m.w_and(s, payload));
    }

  return FenwickArray(m, base, n, cap);
}

word_t FenwickArray::sum(std::size_t i) {
  if (i > n_)
    throw std::out_of_range("FenwickArray::sum: index " + std::to_string(i) +
                            " past size " + std::to_string(n_));
  const word_t payload = payload_mask(m_->width());
  word_t s = 0;
  word_t pos = static_cast<word_t>(i);
  while (pos > 0) {
    s = m_->w_and(m_->w_add(s, m_->load_word(base_ + pos)), payload);
    pos = m_->w_and(pos, m_->w_sub(pos, 1));  // strip 2^rmb(pos)
  }
  return s;
}

void FenwickArray::update(std::size_t i, word_t delta) {
  if (i < 1 || i > n_)
    throw std::out_of_range("FenwickArray::update: index " +
                            std::to_string(i) + " outside [1, " +
                            std::to_string(n_) + "]");
  const word_t payload = payload_mask(m_->width());
  if ((delta & ~payload) != 0)
    throw std::invalid_argument("FenwickArray::update: delta not a residue");
  word_t pos = static_cast<word_t>(i);
  while (pos <= cap_) {
    word_t s = m_->w_add(m_->load_word(base_ + pos), delta);
    m_->store_word(base_ + pos, m_->w_and(s, payload));
    // pos += 2^rmb(pos)
    pos = m_->w_add(pos, m_->w_and(pos, m_->w_neg(pos)));
  }
}

word_t FenwickArray::access(std::size_t i) {
  if (i < 1 || i > n_)
    throw std::out_of_range("FenwickArray::access: index outside [1, n]");
  word_t hi = sum(i);
  word_t lo = sum(i - 1);
  return m_->w_and(m_->w_sub(hi, lo), payload_mask(m_->width()));
}

std::optional<std::size_t> FenwickArray::select(word_t j) {
  if (j == 0) throw std::domain_error("FenwickArray::select: rank is 1-based");
  // Power-of-two descent keeping pos at the largest index whose prefix sum
  // is still below j; the answer is then pos + 1. Landing on cap_ means
  // even the full total fell short (F[cap] covers the whole range), and a
  // real answer never lies in the zero padding past n_.
  std::size_t pos = 0;
  word_t remaining = j;
  for (std::size_t stride = cap_; stride > 0; stride /= 2) {
    std::size_t next = pos + stride;
    if (next > cap_) continue;
    word_t f = m_->load_word(base_ + next);
    if (f < remaining) {
      remaining = m_->w_sub(remaining, f);
      pos = next;
    }
  }
  if (pos == cap_) return std::nullopt;
  return pos + 1;
}

}  // namespace uwram
