#include "posinf/atoms.hpp"

#include <algorithm>

#include "posinf/errors.hpp"

namespace posinf {

namespace {

Nat atom_key(const AtomicFormula& a) {
  std::vector<Nat> t(a.vars.begin(), a.vars.end());
  return pair_code(a.symbol, seq_code(t));
}

// ipow with the small exponents we use (arity <= a handful).
Nat ipow(Nat base, int e) {
  Nat r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

AtomCodec::AtomCodec(Vocabulary voc) : voc_(std::move(voc)) {}

Nat AtomCodec::block_size(int m) const {
  // Tuples over {0..m} whose max is exactly m: (m+1)^k - m^k per k-ary symbol.
  Nat total = 0;
  for (std::size_t s = 0; s < voc_.size(); ++s) {
    int k = voc_.symbol(s).arity;
    total += ipow(static_cast<Nat>(m) + 1, k) - ipow(static_cast<Nat>(m), k);
  }
  return total;
}

Nat AtomCodec::count_below(int m) const {
  Nat total = 0;
  for (std::size_t s = 0; s < voc_.size(); ++s) {
    int k = voc_.symbol(s).arity;
    total += ipow(static_cast<Nat>(m), k);
  }
  return total;
}

std::vector<AtomicFormula> AtomCodec::block(int m) const {
  if (m < static_cast<int>(block_cache_.size())) return block_cache_[m];
  std::vector<AtomicFormula> out;
  for (std::size_t s = 0; s < voc_.size(); ++s) {
    int k = voc_.symbol(s).arity;
    std::vector<int> tuple(k, 0);
    while (true) {
      if (*std::max_element(tuple.begin(), tuple.end()) == m)
        out.push_back(AtomicFormula{s, tuple});
      int i = k - 1;
      while (i >= 0 && tuple[i] == m) tuple[i--] = 0;
      if (i < 0) break;
      ++tuple[i];
    }
  }
  std::sort(out.begin(), out.end(), [](const AtomicFormula& a, const AtomicFormula& b) {
    return atom_key(a) < atom_key(b);
  });
  // Cache only the small dense prefix of blocks; sparse large-m queries are
  // recomputed to keep memory flat.
  if (m == static_cast<int>(block_cache_.size()) && m < 64) block_cache_.push_back(out);
  return out;
}

AtomicFormula AtomCodec::decode(Nat n) const {
  Nat before = 0;
  for (int m = 0;; ++m) {
    Nat size = block_size(m);
    if (n < before + size) {
      auto b = block(m);
      return b[n - before];
    }
    before += size;
  }
}

Nat AtomCodec::encode(const AtomicFormula& a) const {
  check_atom(voc_, a);
  int m = a.maxvar();
  auto b = block(m);
  Nat key = atom_key(a);
  Nat rank = 0;
  for (const auto& x : b) {
    if (atom_key(x) == key) return count_below(m) + rank;
    ++rank;
  }
  throw MalformedFormula("atom not in canonical enumeration");
}

}  // namespace posinf
