#pragma once

#include <cstdint>
#include <vector>

namespace nctopo::gf {

using Element = uint16_t;

// Default reduction polynomial for GF(2^m), 1 <= m <= 16. All are irreducible
// over GF(2); m = 8 uses x^8 + x^4 + x^3 + x + 1 (0x11B).
uint32_t default_polynomial(int m);

// GF(2^m) arithmetic over log/antilog tables. Table construction brute-forces
// a multiplicative generator (the polynomial's root x need not be one — e.g.
// x has order 51 under 0x11B) and throws if the polynomial is reducible.
class Field {
 public:
  explicit Field(int m);
  Field(int m, uint32_t polynomial);

  int m() const { return m_; }
  uint32_t size() const { return size_; }  // 2^m
  uint32_t polynomial() const { return poly_; }
  Element generator() const { return gen_; }

  static Element add(Element a, Element b) { return a ^ b; }

  Element mul(Element a, Element b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Element inv(Element a) const;

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

 private:
  void check(Element a) const;
  void build_tables();

  int m_;
  uint32_t poly_;
  uint32_t size_;
  Element gen_ = 0;
  std::vector<Element> exp_;   // length 2*(size-1): doubled to skip the mod
  std::vector<uint16_t> log_;  // indexed by element value; log_[0] unused
};

}  // namespace nctopo::gf
