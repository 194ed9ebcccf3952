#ifndef POSINF_BOREL_HPP
#define POSINF_BOREL_HPP

#include <string>
#include <vector>

#include "posinf/nformula.hpp"

namespace posinf {

// Effective Borel code over the Scott topology on 2^omega.
//
// A positive (Sigma-side) code of level 1 is a countable family of cells,
// each cell a finite set of atom indices denoting the basic open
// /\_{n in cell} O_n; the code denotes the union of its cells. A code of
// level alpha >= 2 is a family of pairs (B, B') of positive codes of lower
// levels denoting U_i B_i \ B'_i. Pi-side codes are tracked by a top-level
// complement flag rather than closing the shape under complement.
class BorelCode {
 public:
  using Cell = std::vector<Nat>;  // sorted, duplicate-free atom indices
  struct Pair;
  using Family1 = IndexedFamily<Cell>;
  using FamilyN = IndexedFamily<Pair>;

  BorelCode() = default;

  static BorelCode level1(Family1 cells);
  static BorelCode levelN(int declared_level, FamilyN pairs);

  BorelCode complemented() const;  // flip the top-level polarity

  bool valid() const { return node_ != nullptr; }
  bool complement() const { return complement_; }
  int level() const;
  bool is_level1() const;
  const Family1& cells() const;
  const FamilyN& pairs() const;

  bool operator==(const BorelCode& o) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
  bool complement_ = false;
};

struct BorelCode::Pair {
  BorelCode left;   // B_i
  BorelCode right;  // B'_i
  bool operator==(const Pair&) const = default;
};

// Mod(f) as a Borel code of the matching level (Sigma side); Pi-formulas
// yield the complement flag over the code of neg(f).
BorelCode nformula_to_borel(const NFormula& f);

// Inverse up to semantic equality.
NFormula borel_to_nformula(const BorelCode& b);

// JSON round-trip for finite codes; stream families serialize as their
// generator description and are not reparsed.
std::string borel_to_json(const BorelCode& b);
BorelCode borel_from_json(const std::string& text);

}  // namespace posinf

#endif
