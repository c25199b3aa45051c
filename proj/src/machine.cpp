#include "uwram/machine.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace uwram {

namespace {

using u128 = unsigned __int128;

std::string msg(const char* op, const std::string& what) {
  return std::string(op) + ": " + what;
}

}  // namespace

const char* to_string(MachineMode mode) {
  return mode == MachineMode::Restricted ? "restricted" : "mult";
}

// ---------------------------------------------------------------- Ultraword

Ultraword::Ultraword(Machine* machine, std::vector<word_t> words)
    : machine_(machine), words_(std::move(words)) {
  machine_->attach_register();
}

Ultraword::~Ultraword() { release(); }

void Ultraword::release() {
  if (machine_ != nullptr) {
    machine_->detach_register();
    machine_ = nullptr;
  }
}

Ultraword::Ultraword(const Ultraword& other)
    : machine_(other.machine_), words_(other.words_) {
  if (machine_ != nullptr) machine_->attach_register();
}

Ultraword& Ultraword::operator=(const Ultraword& other) {
  if (this == &other) return *this;
  release();
  machine_ = other.machine_;
  words_ = other.words_;
  if (machine_ != nullptr) machine_->attach_register();
  return *this;
}

Ultraword::Ultraword(Ultraword&& other) noexcept
    : machine_(other.machine_), words_(std::move(other.words_)) {
  other.machine_ = nullptr;
}

Ultraword& Ultraword::operator=(Ultraword&& other) noexcept {
  if (this == &other) return *this;
  release();
  machine_ = other.machine_;
  words_ = std::move(other.words_);
  other.machine_ = nullptr;
  return *this;
}

word_t Ultraword::word(unsigned j) const {
  if (j >= words_.size())
    throw std::out_of_range("Ultraword::word: index past register width");
  return words_[j];
}

bool Ultraword::bit(unsigned global_bit) const {
  const unsigned w = static_cast<unsigned>(words_.size());
  if (global_bit >= w * w)
    throw std::out_of_range("Ultraword::bit: index past register width");
  return (words_[global_bit / w] >> (global_bit % w)) & 1u;
}

bool Ultraword::has_length(unsigned len) const {
  for (std::size_t j = len; j < words_.size(); ++j)
    if (words_[j] != 0) return false;
  return true;
}

// ------------------------------------------------------------------ Machine

Machine::Machine(MachineMode mode, unsigned width_bits,
                 std::size_t memory_words)
    : mode_(mode), w_(width_bits) {
  if (w_ < 8 || w_ > 64)
    throw std::invalid_argument("Machine: width must be in [8, 64]");
  word_mask_ = (w_ == 64) ? ~word_t{0} : ((word_t{1} << w_) - 1);
  memory_.assign(memory_words, 0);
}

Machine::~Machine() = default;

void Machine::attach_register() {
  ++live_uw_;
  peak_uw_ = std::max(peak_uw_, live_uw_);
}

void Machine::detach_register() { --live_uw_; }

Ultraword Machine::make_ultraword(std::vector<word_t> words) {
  if (words.size() > w_)
    throw std::invalid_argument("make_ultraword: more than w words");
  for (word_t v : words)
    if ((v & ~word_mask_) != 0)
      throw std::invalid_argument("make_ultraword: word wider than w bits");
  words.resize(w_, 0);
  return Ultraword(this, std::move(words));
}

void Machine::require_owned(const Ultraword& x, const char* op) const {
  if (x.machine_ != this)
    throw std::logic_error(msg(op, "operand not owned by this machine"));
}

void Machine::require_addr(word_t addr, const char* op) const {
  if (addr >= memory_.size())
    throw std::out_of_range(msg(op, "address " + std::to_string(addr) +
                                        " past memory of " +
                                        std::to_string(memory_.size())));
}

word_t Machine::require_word(word_t value, const char* op) const {
  if ((value & ~word_mask_) != 0)
    throw std::invalid_argument(msg(op, "value wider than w bits"));
  return value;
}

// ------------------------------------------------------- ultraword ISA

Ultraword Machine::uw_bitwise(BitwiseOp op, const Ultraword& x,
                              const Ultraword* y) {
  require_owned(x, "uw_bitwise");
  if (op != BitwiseOp::Not) {
    if (y == nullptr)
      throw std::invalid_argument("uw_bitwise: binary op needs two operands");
    require_owned(*y, "uw_bitwise");
  }
  counters_.uw_ops += 1;
  std::vector<word_t> out(w_);
  switch (op) {
    case BitwiseOp::And:
      for (unsigned j = 0; j < w_; ++j) out[j] = x.words_[j] & y->words_[j];
      break;
    case BitwiseOp::Or:
      for (unsigned j = 0; j < w_; ++j) out[j] = x.words_[j] | y->words_[j];
      break;
    case BitwiseOp::Xor:
      for (unsigned j = 0; j < w_; ++j) out[j] = x.words_[j] ^ y->words_[j];
      break;
    case BitwiseOp::Not:
      for (unsigned j = 0; j < w_; ++j) out[j] = ~x.words_[j] & word_mask_;
      break;
  }
  return Ultraword(this, std::move(out));
}

Ultraword Machine::uw_and(const Ultraword& x, const Ultraword& y) {
  return uw_bitwise(BitwiseOp::And, x, &y);
}
Ultraword Machine::uw_or(const Ultraword& x, const Ultraword& y) {
  return uw_bitwise(BitwiseOp::Or, x, &y);
}
Ultraword Machine::uw_xor(const Ultraword& x, const Ultraword& y) {
  return uw_bitwise(BitwiseOp::Xor, x, &y);
}
Ultraword Machine::uw_not(const Ultraword& x) {
  return uw_bitwise(BitwiseOp::Not, x);
}

Ultraword Machine::uw_add(const Ultraword& x, const Ultraword& y) {
  require_owned(x, "uw_add");
  require_owned(y, "uw_add");
  counters_.uw_ops += 1;
  std::vector<word_t> out(w_);
  u128 carry = 0;
  for (unsigned j = 0; j < w_; ++j) {
    u128 s = (u128)x.words_[j] + y.words_[j] + carry;
    out[j] = (word_t)s & word_mask_;
    carry = s >> w_;
  }
  return Ultraword(this, std::move(out));
}

Ultraword Machine::uw_sub(const Ultraword& x, const Ultraword& y) {
  require_owned(x, "uw_sub");
  require_owned(y, "uw_sub");
  counters_.uw_ops += 1;
  std::vector<word_t> out(w_);
  u128 borrow = 0;
  const u128 radix = (u128)1 << w_;
  for (unsigned j = 0; j < w_; ++j) {
    u128 d = radix + x.words_[j] - y.words_[j] - borrow;
    out[j] = (word_t)d & word_mask_;
    borrow = (d >> w_) == 0 ? 1 : 0;
  }
  return Ultraword(this, std::move(out));
}

Ultraword Machine::uw_mul(const Ultraword& x, const Ultraword& y) {
  require_owned(x, "uw_mul");
  require_owned(y, "uw_mul");
  if (mode_ != MachineMode::Multiplication)
    throw ModeViolation("uw_mul: not available on the restricted machine");
  counters_.uw_mul_ops += 1;
  // Schoolbook product over w-bit limbs, truncated to w*w bits.
  std::vector<word_t> out(w_, 0);
  for (unsigned i = 0; i < w_; ++i) {
    if (x.words_[i] == 0) continue;
    u128 carry = 0;
    for (unsigned j = 0; i + j < w_; ++j) {
      u128 cur = (u128)x.words_[i] * y.words_[j] + out[i + j] + carry;
      out[i + j] = (word_t)cur & word_mask_;
      carry = cur >> w_;
    }
  }
  return Ultraword(this, std::move(out));
}

Ultraword Machine::uw_shl(const Ultraword& x, unsigned bits) {
  require_owned(x, "uw_shl");
  if (bits > w_ * w_)
    throw std::invalid_argument("uw_shl: shift past register width");
  counters_.uw_ops += 1;
  const unsigned q = bits / w_, r = bits % w_;
  std::vector<word_t> out(w_, 0);
  for (unsigned j = w_; j-- > 0;) {
    if (j < q) break;
    word_t lo = x.words_[j - q];
    word_t hi = (j - q >= 1 && r != 0) ? x.words_[j - q - 1] >> (w_ - r) : 0;
    out[j] = ((lo << r) | hi) & word_mask_;
  }
  return Ultraword(this, std::move(out));
}

Ultraword Machine::uw_shr(const Ultraword& x, unsigned bits) {
  require_owned(x, "uw_shr");
  if (bits > w_ * w_)
    throw std::invalid_argument("uw_shr: shift past register width");
  counters_.uw_ops += 1;
  const unsigned q = bits / w_, r = bits % w_;
  std::vector<word_t> out(w_, 0);
  for (unsigned j = 0; j + q < w_; ++j) {
    word_t lo = x.words_[j + q] >> r;
    word_t hi = (j + q + 1 < w_ && r != 0) ? x.words_[j + q + 1] << (w_ - r) : 0;
    out[j] = (lo | hi) & word_mask_;
  }
  return Ultraword(this, std::move(out));
}

Ultraword Machine::uw_from_word(word_t value) {
  require_word(value, "uw_from_word");
  counters_.uw_ops += 1;
  std::vector<word_t> out(w_, 0);
  out[0] = value;
  return Ultraword(this, std::move(out));
}

word_t Machine::uw_get_word(const Ultraword& x, unsigned j) {
  require_owned(x, "uw_get_word");
  if (j >= w_) throw std::invalid_argument("uw_get_word: index past width");
  counters_.uw_ops += 1;
  return x.words_[j];
}

// ------------------------------------------------------------- word memory

word_t Machine::load_word(word_t addr) {
  require_addr(addr, "load_word");
  counters_.word_mem_accesses += 1;
  return memory_[addr];
}

void Machine::store_word(word_t addr, word_t value) {
  require_addr(addr, "store_word");
  require_word(value, "store_word");
  counters_.word_mem_accesses += 1;
  memory_[addr] = value;
}

Ultraword Machine::scattered_read(const Ultraword& addresses) {
  require_owned(addresses, "scattered_read");
  for (unsigned j = 0; j < w_; ++j)
    require_addr(addresses.words_[j], "scattered_read");
  counters_.scattered_reads += 1;
  std::vector<word_t> out(w_);
  for (unsigned j = 0; j < w_; ++j) out[j] = memory_[addresses.words_[j]];
  return Ultraword(this, std::move(out));
}

void Machine::scattered_write(const Ultraword& addresses,
                              const Ultraword& values) {
  require_owned(addresses, "scattered_write");
  require_owned(values, "scattered_write");
  for (unsigned j = 0; j < w_; ++j)
    require_addr(addresses.words_[j], "scattered_write");
  // Duplicate targets are legal only when every lane agrees on the value;
  // checked up front so a conflicting write has no partial effect.
  for (unsigned j = 0; j < w_; ++j)
    for (unsigned k = j + 1; k < w_; ++k)
      if (addresses.words_[j] == addresses.words_[k] &&
          values.words_[j] != values.words_[k])
        throw WriteConflict(
            "scattered_write: lanes " + std::to_string(j) + " and " +
            std::to_string(k) + " write different values to address " +
            std::to_string(addresses.words_[j]));
  counters_.scattered_writes += 1;
  for (unsigned j = 0; j < w_; ++j)
    memory_[addresses.words_[j]] = values.words_[j];
}

// ----------------------------------------------------------------- word ALU

word_t Machine::w_add(word_t a, word_t b) {
  counters_.word_ops += 1;
  return (a + b) & word_mask_;
}

word_t Machine::w_sub(word_t a, word_t b) {
  counters_.word_ops += 1;
  return (a - b) & word_mask_;
}

word_t Machine::w_and(word_t a, word_t b) {
  counters_.word_ops += 1;
  return a & b;
}

word_t Machine::w_or(word_t a, word_t b) {
  counters_.word_ops += 1;
  return a | b;
}

word_t Machine::w_xor(word_t a, word_t b) {
  counters_.word_ops += 1;
  return a ^ b;
}

word_t Machine::w_neg(word_t a) {
  counters_.word_ops += 1;
  return (0 - a) & word_mask_;
}

word_t Machine::w_shl(word_t a, unsigned k) {
  counters_.word_ops += 1;
  return k >= w_ ? 0 : (a << k) & word_mask_;
}

word_t Machine::w_shr(word_t a, unsigned k) {
  counters_.word_ops += 1;
  return k >= w_ ? 0 : (a >> k) & word_mask_;
}

unsigned Machine::w_ctz(word_t a) {
  if (a == 0) throw std::domain_error("w_ctz: undefined for zero");
  counters_.word_ops += 1;
  return static_cast<unsigned>(std::countr_zero(a));
}

}  // namespace uwram
