#ifndef POSINF_CODES_HPP
#define POSINF_CODES_HPP

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace posinf {

using Nat = std::uint64_t;

// Cantor pairing: pair(a,b) = (a+b)(a+b+1)/2 + b.  Used for element codes in
// the tilde construction and for sequence codes in the atom enumeration.
inline Nat pair_code(Nat a, Nat b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

inline std::pair<Nat, Nat> unpair_code(Nat z) {
  // Invert the triangular part by search-free arithmetic.
  Nat s = 0;
  {
    // floor((sqrt(8z+1)-1)/2) with integer correction.
    long double approx = (std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L;
    s = static_cast<Nat>(approx);
    while (s * (s + 1) / 2 > z) --s;
    while ((s + 1) * (s + 2) / 2 <= z) ++s;
  }
  Nat b = z - s * (s + 1) / 2;
  Nat a = s - b;
  return {a, b};
}

// Length-prefixed iterated pairing for sequences:
//   seq() = 0, seq(t1..tk) = pair(k, t1) for k = 1,
//   seq(t1..tk) = pair(k, pair(t1, pair(t2, ... tk))) otherwise.
inline Nat seq_code(const std::vector<Nat>& t) {
  if (t.empty()) return 0;
  Nat body = t.back();
  for (std::size_t i = t.size() - 1; i-- > 0;) body = pair_code(t[i], body);
  return pair_code(static_cast<Nat>(t.size()), body);
}

// Canonical finite-set coding: D_v = { i : bit i of v is 1 }.
inline std::vector<Nat> fset_decode(Nat v) {
  std::vector<Nat> out;
  for (Nat i = 0; v != 0; ++i, v >>= 1)
    if (v & 1) out.push_back(i);
  return out;
}

inline Nat fset_encode(const std::vector<Nat>& xs) {
  Nat v = 0;
  for (Nat x : xs) v |= (Nat{1} << x);
  return v;
}

// Enumeration budget. Stream enumeration charges one unit per step; finite
// families enumerate for free so that exactness claims do not depend on the
// budget value.
struct Budget {
  Nat left = 0;

  bool take(Nat n = 1) {
    if (left < n) {
      left = 0;
      return false;
    }
    left -= n;
    return true;
  }

  bool out() const { return left == 0; }

  static Budget unlimited() { return Budget{~Nat{0} >> 1}; }
};

}  // namespace posinf

#endif
