#pragma once

// Plain flat-array model of the partial sums interface, used as the
// independent referee when fuzzing the real structures against each
// other. Same value domain as the structures: stored values and deltas
// are mod 2^(w-1) residues.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "uwram/fenwick.hpp"

namespace uwram {

class FlatPartialSums {
 public:
  FlatPartialSums(std::vector<word_t> values, unsigned w)
      : a_(std::move(values)), payload_(payload_mask(w)) {
    for (word_t v : a_)
      if ((v & ~payload_) != 0)
        throw std::invalid_argument("FlatPartialSums: value not a residue");
  }

  word_t sum(std::size_t i) const {
    if (i > a_.size()) throw std::out_of_range("FlatPartialSums::sum");
    word_t s = 0;
    for (std::size_t k = 0; k < i; ++k) s = (s + a_[k]) & payload_;
    return s;
  }

  void update(std::size_t i, word_t delta) {
    if (i < 1 || i > a_.size())
      throw std::out_of_range("FlatPartialSums::update");
    a_[i - 1] = (a_[i - 1] + delta) & payload_;
  }

  word_t access(std::size_t i) const {
    if (i < 1 || i > a_.size())
      throw std::out_of_range("FlatPartialSums::access");
    return a_[i - 1];
  }

  std::size_t size() const { return a_.size(); }

 private:
  std::vector<word_t> a_;
  word_t payload_;
};

}  // namespace uwram
