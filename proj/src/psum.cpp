#include "uwram/psum.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "uwram/fenwick.hpp"

namespace uwram {

using uwops::broadcast;
using uwops::ceil_log2;
using uwops::cw_add;
using uwops::cw_ge;
using uwops::cw_sub;
using uwops::extract;
using uwops::nonzero_mask;
using uwops::prefix_sum;
using uwops::word_shift_left;

PartialSumsUW::PartialSumsUW(Machine& m, word_t base, std::size_t n,
                             std::size_t cap)
    : m_(&m),
      base_(base),
      n_(n),
      cap_(cap),
      log_cap_(static_cast<unsigned>(std::countr_zero(cap))),
      seq_words_(log_cap_ + 2),
      k_(uwops::Constants::make(m)) {}

PartialSumsUW PartialSumsUW::build(Machine& m, word_t base,
                                   std::span<const word_t> values) {
  const std::size_t cap = std::bit_ceil(values.size() ? values.size()
                                                      : std::size_t{1});
  const unsigned w = m.width();
  const unsigned log_cap = static_cast<unsigned>(std::countr_zero(cap));
  if (log_cap + 3 > w - 1)
    throw std::invalid_argument(
        "PartialSumsUW: capacity " + std::to_string(cap) +
        " too large for width " + std::to_string(w) +
        " (need log2(N)+3 <= w-1 so chain values clear the test bit)");
  if (base > payload_mask(w) - cap)
    throw std::invalid_argument(
        "PartialSumsUW: base+N must stay below the test bit");

  FenwickArray::build_in_place(m, base, values);

  PartialSumsUW p(m, base, values.size(), cap);
  std::vector<word_t> mask(w, 0);
  for (unsigned j = 0; j <= log_cap; ++j) mask[j] = word_t{1} << j;
  p.sum_mask_ = m.make_ultraword(std::move(mask));
  p.base_bcast_ = m.make_ultraword(std::vector<word_t>(w, base));
  p.cap_bcast_ = m.make_ultraword(std::vector<word_t>(w, cap));
  p.head_test_ = m.make_ultraword({word_t{1} << (w - 1)});
  return p;
}

Ultraword PartialSumsUW::broadcast_index(word_t value) const {
  return broadcast(*m_, k_, value, seq_words_);
}

Ultraword PartialSumsUW::offsets_for_sum(const Ultraword& i_bcast) const {
  // Each copy of i meets one diagonal bit: word j keeps 2^j iff bit j of
  // i is set.
  return m_->uw_and(i_bcast, sum_mask_);
}

Ultraword PartialSumsUW::offsets_for_update(std::size_t i,
                                            const Ultraword& i_bcast) const {
  const word_t iso = m_->w_and(static_cast<word_t>(i),
                               m_->w_neg(static_cast<word_t>(i)));
  const unsigned r = m_->w_ctz(iso);
  const word_t above = m_->w_add(r, 1);
  // Zero bits of i, diagonal form, kept only strictly above rmb(i)...
  Ultraword z = m_->uw_and(m_->uw_not(i_bcast), sum_mask_);
  z = m_->uw_and(z, word_shift_left(*m_, k_.all_ones,
                                    static_cast<unsigned>(above)));
  // ...plus 2^rmb(i) sitting at word rmb(i) itself.
  return m_->uw_or(z, word_shift_left(*m_, m_->uw_from_word(iso), r));
}

PartialSumsUW::ChainParts PartialSumsUW::chain_from_offsets(
    const Ultraword& i_bcast, Ultraword offsets, bool add,
    const TraceSink* sink) const {
  Machine& m = *m_;
  ChainParts out;
  Ultraword running;
  {
    Ultraword nz = nonzero_mask(m, k_, offsets);
    running = extract(m, prefix_sum(m, k_, std::move(offsets), seq_words_), nz);
    // Chain word 0 is always live (it carries i itself); the word above
    // each offset receives the element that offset produces.
    out.tmask = m.uw_or(word_shift_left(m, nz, 1), head_test_);
  }
  if (sink) (*sink)("P", running);
  running = word_shift_left(m, running, 1);
  if (sink) (*sink)("P'", running);
  running = add ? cw_add(m, k_, i_bcast, running)
                : cw_sub(m, k_, i_bcast, running);
  // Words outside the mask hold stray copies of i; extraction is what
  // keeps them out of the scattered access.
  out.chain = extract(m, running, out.tmask);
  return out;
}

Ultraword PartialSumsUW::sum_sequence_impl(std::size_t i,
                                           const TraceSink* sink) {
  if (i > n_)
    throw std::out_of_range("PartialSumsUW::sum: index " + std::to_string(i) +
                            " past size " + std::to_string(n_));
  Ultraword i_bcast = broadcast_index(static_cast<word_t>(i));
  if (sink) {
    (*sink)("I", i_bcast);
    (*sink)("M", sum_mask_);
  }
  Ultraword offsets = offsets_for_sum(i_bcast);
  if (sink) (*sink)("O", offsets);
  ChainParts parts =
      chain_from_offsets(i_bcast, std::move(offsets), /*add=*/false, sink);
  if (sink) (*sink)("S", parts.chain);
  return std::move(parts.chain);
}

PartialSumsUW::UpdateSequence PartialSumsUW::update_sequence_impl(
    std::size_t i, const TraceSink* sink) {
  if (i < 1 || i > n_)
    throw std::out_of_range("PartialSumsUW::update: index " +
                            std::to_string(i) + " outside [1, " +
                            std::to_string(n_) + "]");
  Machine& m = *m_;
  Ultraword i_bcast = broadcast_index(static_cast<word_t>(i));
  if (sink) (*sink)("I", i_bcast);
  Ultraword offsets = offsets_for_update(i, i_bcast);
  if (sink) (*sink)("O", offsets);

  UpdateSequence out;
  {
    ChainParts parts =
        chain_from_offsets(i_bcast, std::move(offsets), /*add=*/true, sink);
    i_bcast = Ultraword();  // done with the copies; free the register
    // Keep only chain words that stayed within the array: the final
    // element overshoots N by construction and must not reach memory.
    out.valid = m.uw_and(parts.tmask, cw_ge(m, k_, cap_bcast_, parts.chain));
    out.sequence = extract(m, parts.chain, out.valid);
  }
  if (sink) {
    (*sink)("U", out.sequence);
    (*sink)("V", out.valid);
  }
  return out;
}

word_t PartialSumsUW::sum(std::size_t i) {
  Machine& m = *m_;
  Ultraword fetched;
  {
    Ultraword addrs;
    {
      Ultraword chain = sum_sequence_impl(i, nullptr);
      addrs = cw_add(m, k_, chain, base_bcast_);
    }
    fetched = m.scattered_read(addrs);
  }
  Ultraword totals = prefix_sum(m, k_, std::move(fetched), seq_words_);
  return m.uw_get_word(totals, seq_words_ - 1);
}

void PartialSumsUW::update(std::size_t i, word_t delta) {
  Machine& m = *m_;
  if ((delta & ~payload_mask(m.width())) != 0)
    throw std::invalid_argument("PartialSumsUW::update: delta not a residue");
  Ultraword addrs, valid;
  {
    UpdateSequence uv = update_sequence_impl(i, nullptr);
    valid = std::move(uv.valid);
    addrs = cw_add(m, k_, uv.sequence, base_bcast_);
  }
  Ultraword fetched = m.scattered_read(addrs);
  {
    Ultraword deltas;
    {
      Ultraword spread = broadcast(m, k_, delta, seq_words_);
      deltas = extract(m, spread, valid);
      valid = Ultraword();
    }
    fetched = cw_add(m, k_, fetched, deltas);
  }
  m.scattered_write(addrs, fetched);
}

word_t PartialSumsUW::access(std::size_t i) {
  if (i < 1 || i > n_)
    throw std::out_of_range("PartialSumsUW::access: index outside [1, n]");
  word_t hi = sum(i);
  word_t lo = sum(i - 1);
  return m_->w_and(m_->w_sub(hi, lo), payload_mask(m_->width()));
}

Ultraword PartialSumsUW::sum_offsets(std::size_t i) {
  if (i > n_)
    throw std::out_of_range("PartialSumsUW::sum_offsets: index past size");
  Ultraword i_bcast = broadcast_index(static_cast<word_t>(i));
  return offsets_for_sum(i_bcast);
}

Ultraword PartialSumsUW::sum_sequence(std::size_t i) {
  return sum_sequence_impl(i, nullptr);
}

Ultraword PartialSumsUW::update_offsets(std::size_t i) {
  if (i < 1 || i > n_)
    throw std::out_of_range("PartialSumsUW::update_offsets: index outside");
  Ultraword i_bcast = broadcast_index(static_cast<word_t>(i));
  return offsets_for_update(i, i_bcast);
}

PartialSumsUW::UpdateSequence PartialSumsUW::update_sequence(std::size_t i) {
  return update_sequence_impl(i, nullptr);
}

std::vector<PartialSumsUW::TraceRow> PartialSumsUW::sum_trace(std::size_t i) {
  std::vector<TraceRow> rows;
  TraceSink sink = [&rows](const char* label, const Ultraword& u) {
    rows.push_back(TraceRow{label, u.words()});
  };
  sum_sequence_impl(i, &sink);
  return rows;
}

std::vector<PartialSumsUW::TraceRow> PartialSumsUW::update_trace(
    std::size_t i) {
  std::vector<TraceRow> rows;
  TraceSink sink = [&rows](const char* label, const Ultraword& u) {
    rows.push_back(TraceRow{label, u.words()});
  };
  update_sequence_impl(i, &sink);
  return rows;
}

}  // namespace uwram
