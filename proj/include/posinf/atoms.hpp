#ifndef POSINF_ATOMS_HPP
#define POSINF_ATOMS_HPP

#include <vector>

#include "posinf/codes.hpp"
#include "posinf/vocabulary.hpp"

namespace posinf {

// Canonical effective enumeration of all atomic tau-formulas, bit-exact:
// atoms are listed sorted by (maxvar, key) where
//   key = pair(symbol index, seq_code(variable tuple)).
// Since "=" and "!=" alone contribute (m+1)^2 formulas of maxvar <= m each,
// the position of an atom is always >= its maxvar, so the n-th atom only
// mentions variables among x_0..x_n.
class AtomCodec {
 public:
  explicit AtomCodec(Vocabulary voc);

  const Vocabulary& vocabulary() const { return voc_; }

  AtomicFormula decode(Nat n) const;
  Nat encode(const AtomicFormula& a) const;

 private:
  // All atoms with maxvar exactly m, sorted by key.
  std::vector<AtomicFormula> block(int m) const;
  Nat block_size(int m) const;
  Nat count_below(int m) const;  // atoms with maxvar < m

  Vocabulary voc_;
  mutable std::vector<std::vector<AtomicFormula>> block_cache_;
};

}  // namespace posinf

#endif
