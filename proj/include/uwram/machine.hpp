#pragma once

// Simulated word machine extended with ultraword registers of w*w bits
// (w words of w bits each, word 0 at the low end) and scattered memory
// access that touches up to w addresses in a single instruction.
//
// Cost model: every executed instruction bumps exactly one CostCounter
// field by one. Ultraword shift amounts and word indices are instruction
// operands, not separate instructions. Failed instructions (mode or
// bounds violations) throw and leave machine state untouched, counters
// included. Register pressure is tracked by counting live Ultraword
// objects attached to the machine; the peak is recorded.
//
// A Machine is single-threaded and must outlive every Ultraword it owns.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace uwram {

using word_t = std::uint64_t;

enum class MachineMode { Restricted, Multiplication };

const char* to_string(MachineMode mode);

// Ultraword multiplication issued while the machine runs the restricted
// instruction set.
class ModeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Scattered write with two different values destined for one address.
class WriteConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CostCounter {
  std::uint64_t word_ops = 0;
  std::uint64_t uw_ops = 0;
  std::uint64_t uw_mul_ops = 0;
  std::uint64_t scattered_reads = 0;
  std::uint64_t scattered_writes = 0;
  std::uint64_t word_mem_accesses = 0;

  std::uint64_t total() const {
    return word_ops + uw_ops + uw_mul_ops + scattered_reads +
           scattered_writes + word_mem_accesses;
  }

  bool operator==(const CostCounter&) const = default;

  CostCounter operator-(const CostCounter& rhs) const {
    return CostCounter{word_ops - rhs.word_ops,
                       uw_ops - rhs.uw_ops,
                       uw_mul_ops - rhs.uw_mul_ops,
                       scattered_reads - rhs.scattered_reads,
                       scattered_writes - rhs.scattered_writes,
                       word_mem_accesses - rhs.word_mem_accesses};
  }
};

class Machine;

// One ultraword register value. Word j occupies bits [j*w, (j+1)*w) of the
// w*w-bit integer view; the two views round-trip exactly. Instances are
// created through Machine and registered with it for live-register
// accounting; a default-constructed or moved-from Ultraword is detached
// and holds no register.
class Ultraword {
 public:
  Ultraword() = default;
  ~Ultraword();
  Ultraword(const Ultraword& other);
  Ultraword& operator=(const Ultraword& other);
  Ultraword(Ultraword&& other) noexcept;
  Ultraword& operator=(Ultraword&& other) noexcept;

  bool attached() const { return machine_ != nullptr; }

  // Uncharged views, for inspection and tests only; simulated programs go
  // through Machine::uw_get_word.
  const std::vector<word_t>& words() const { return words_; }
  word_t word(unsigned j) const;
  bool bit(unsigned global_bit) const;

  // True when words len..w-1 are all zero, i.e. the value fits in len words.
  bool has_length(unsigned len) const;

  bool operator==(const Ultraword& other) const {
    return words_ == other.words_;
  }

 private:
  friend class Machine;
  Ultraword(Machine* machine, std::vector<word_t> words);
  void release();

  Machine* machine_ = nullptr;
  std::vector<word_t> words_;
};

enum class BitwiseOp { And, Or, Xor, Not };

class Machine {
 public:
  // width_bits is w, valid range [8, 64]. Memory starts zeroed.
  Machine(MachineMode mode, unsigned width_bits = 64,
          std::size_t memory_words = 0);
  ~Machine();
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  MachineMode mode() const { return mode_; }
  unsigned width() const { return w_; }
  word_t word_mask() const { return word_mask_; }
  std::size_t memory_size() const { return memory_.size(); }

  // Uncharged construction for setup and test fixtures. words may hold
  // fewer than w entries; the rest are zero. Simulated programs build
  // ultrawords with uw_from_word and shifts instead.
  Ultraword make_ultraword(std::vector<word_t> words = {});

  // Uncharged inspection of the full memory image.
  const std::vector<word_t>& memory() const { return memory_; }

  // --- ultraword instructions (one uw_ops tick each) ---
  Ultraword uw_bitwise(BitwiseOp op, const Ultraword& x,
                       const Ultraword* y = nullptr);
  Ultraword uw_and(const Ultraword& x, const Ultraword& y);
  Ultraword uw_or(const Ultraword& x, const Ultraword& y);
  Ultraword uw_xor(const Ultraword& x, const Ultraword& y);
  Ultraword uw_not(const Ultraword& x);
  Ultraword uw_add(const Ultraword& x, const Ultraword& y);  // mod 2^(w*w)
  Ultraword uw_sub(const Ultraword& x, const Ultraword& y);  // mod 2^(w*w)
  Ultraword uw_shl(const Ultraword& x, unsigned bits);       // bits <= w*w
  Ultraword uw_shr(const Ultraword& x, unsigned bits);
  Ultraword uw_from_word(word_t value);                // word 0 := value
  word_t uw_get_word(const Ultraword& x, unsigned j);  // extract word j

  // Full w*w-bit product mod 2^(w*w). Multiplication mode only; under the
  // restricted set this throws ModeViolation and changes nothing.
  Ultraword uw_mul(const Ultraword& x, const Ultraword& y);

  // --- word memory (one word_mem_accesses tick each) ---
  word_t load_word(word_t addr);
  void store_word(word_t addr, word_t value);

  // --- scattered access (one scattered_reads / scattered_writes tick) ---
  // Word j of the address ultraword names the slot for lane j. All
  // addresses are validated before any effect. A scattered write may
  // target one address from several lanes only if every such lane carries
  // the same value; otherwise it throws WriteConflict and writes nothing.
  Ultraword scattered_read(const Ultraword& addresses);
  void scattered_write(const Ultraword& addresses, const Ultraword& values);

  // --- word ALU (one word_ops tick each; results masked to w bits) ---
  word_t w_add(word_t a, word_t b);
  word_t w_sub(word_t a, word_t b);
  word_t w_and(word_t a, word_t b);
  word_t w_or(word_t a, word_t b);
  word_t w_xor(word_t a, word_t b);
  word_t w_neg(word_t a);
  word_t w_shl(word_t a, unsigned k);  // k >= w yields 0
  word_t w_shr(word_t a, unsigned k);
  unsigned w_ctz(word_t a);  // a == 0 is a domain error

  // --- accounting ---
  const CostCounter& counters() const { return counters_; }
  void reset_counters() { counters_ = CostCounter{}; }
  std::size_t live_ultrawords() const { return live_uw_; }
  std::size_t peak_live_ultrawords() const { return peak_uw_; }
  void reset_peak_live() { peak_uw_ = live_uw_; }

 private:
  friend class Ultraword;
  void attach_register();
  void detach_register();
  void require_owned(const Ultraword& x, const char* op) const;
  void require_addr(word_t addr, const char* op) const;
  word_t require_word(word_t value, const char* op) const;

  MachineMode mode_;
  unsigned w_;
  word_t word_mask_;
  std::vector<word_t> memory_;
  CostCounter counters_;
  std::size_t live_uw_ = 0;
  std::size_t peak_uw_ = 0;
};

}  // namespace uwram
