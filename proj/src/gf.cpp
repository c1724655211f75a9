#include "nctopo/gf.hpp"

#include <stdexcept>
#include <string>

namespace nctopo::gf {

namespace {

// Carry-less multiply followed by one reduction pass; only used while
// building the tables, so clarity beats speed here.
uint32_t shift_reduce_mul(uint32_t a, uint32_t b, uint32_t poly, int m) {
  uint32_t acc = 0;
  for (int bit = 0; bit < m; ++bit) {
    if ((b >> bit) & 1u) acc ^= a << bit;
  }
  for (int deg = 2 * m - 2; deg >= m; --deg) {
    if ((acc >> deg) & 1u) acc ^= poly << (deg - m);
  }
  return acc;
}

}  // namespace

uint32_t default_polynomial(int m) {
  static constexpr uint32_t polys[17] = {
      0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,  0x11B,
      0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};
  if (m < 1 || m > 16) {
    throw std::invalid_argument("gf: field exponent must be in [1, 16], got " +
                                std::to_string(m));
  }
  return polys[m];
}

Field::Field(int m) : Field(m, default_polynomial(m)) {}

Field::Field(int m, uint32_t polynomial) : m_(m), poly_(polynomial) {
  if (m < 1 || m > 16) {
    throw std::invalid_argument("gf: field exponent must be in [1, 16], got " +
                                std::to_string(m));
  }
  size_ = 1u << m;
  if (poly_ < size_ || poly_ >= 2 * size_) {
    throw std::invalid_argument("gf: reduction polynomial must have degree " +
                                std::to_string(m));
  }
  build_tables();
}

void Field::build_tables() {
  const uint32_t n = size_ - 1;  // multiplicative group order
  exp_.assign(2 * n, 0);
  log_.assign(size_, 0);

  if (size_ == 2) {  // GF(2): the group is {1}
    gen_ = 1;
    exp_[0] = exp_[1] = 1;
    log_[1] = 0;
    return;
  }

  for (uint32_t g = 2; g < size_; ++g) {
    uint32_t x = 1;
    uint32_t k = 0;
    for (; k < n; ++k) {
      exp_[k] = static_cast<Element>(x);
      x = shift_reduce_mul(x, g, poly_, m_);
      if (x == 1) {
        ++k;
        break;
      }
    }
    if (k == n && x == 1) {  // g generates the whole group
      gen_ = static_cast<Element>(g);
      for (uint32_t i = 0; i < n; ++i) {
        exp_[n + i] = exp_[i];
        log_[exp_[i]] = static_cast<uint16_t>(i);
      }
      return;
    }
  }
  throw std::invalid_argument(
      "gf: no multiplicative generator found; polynomial is reducible");
}

Element Field::inv(Element a) const {
  check(a);
  if (a == 0) throw std::domain_error("gf: zero has no multiplicative inverse");
  return exp_[(size_ - 1) - log_[a]];
}

void Field::check(Element a) const {
  if (a >= size_) {
    throw std::invalid_argument("gf: element " + std::to_string(a) +
                                " out of range for GF(2^" + std::to_string(m_) +
                                ")");
  }
}

}  // namespace nctopo::gf
