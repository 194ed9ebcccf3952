#ifndef POSINF_NFORMULA_HPP
#define POSINF_NFORMULA_HPP

#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "posinf/family.hpp"
#include "posinf/formula.hpp"
#include "posinf/trivalent.hpp"

namespace posinf {

// Atom of a quantifier-free positive formula in arithmetic with the set
// variable D: Top, Bot or D(n).
struct NAtom {
  enum Kind { Top, Bot, D } kind = Top;
  Nat n = 0;

  bool operator==(const NAtom&) const = default;
};

inline NAtom n_top() { return NAtom{NAtom::Top, 0}; }
inline NAtom n_bot() { return NAtom{NAtom::Bot, 0}; }
inline NAtom n_d(Nat n) { return NAtom{NAtom::D, n}; }

// Dual used when negating level-0/1 bodies: in a Pi^p_0 disjunction the
// D-atoms appear under neg while Top/Bot appear as themselves, so the stored
// list swaps Top<->Bot and keeps D.
inline NAtom natom_dual(const NAtom& a) {
  if (a.kind == NAtom::Top) return n_bot();
  if (a.kind == NAtom::Bot) return n_top();
  return a;
}

// Quantifier-free positive infinitary formula over Top/Bot/D(n); no
// variables, so family entries carry no binders. Doubles as an effective
// Borel code via the correspondence in borel.hpp. Same dual-caching storage
// discipline as Formula:
//   level 0   Sigma: /\ atoms            Pi: \/ duals-of-atoms
//   level 1   Sigma: \/_i /\ atoms_i     Pi: /\_i \/ duals
//   level >=2 Sigma: \/_i (s_i & p_i)    Pi: /\_i (s_i | p_i)
class NFormula {
 public:
  using Entry1 = std::vector<NAtom>;
  struct EntryN;

  using Family1 = IndexedFamily<Entry1>;
  using FamilyN = IndexedFamily<EntryN>;

  NFormula() = default;

  static NFormula level0(Tag t, std::vector<NAtom> atoms);
  static NFormula level1(Tag t, Family1 fam);
  static NFormula levelN(Tag t, int declared_level, FamilyN fam);

  bool valid() const { return node_ != nullptr; }
  Tag tag() const;
  int kind() const;
  const std::vector<NAtom>& atoms() const;
  const Family1& family1() const;
  const FamilyN& familyN() const;
  int stored_level() const;

  bool operator==(const NFormula& o) const;
  const void* id() const { return node_.get(); }

  friend NFormula neg(const NFormula& f);

 private:
  struct Node;
  explicit NFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct NFormula::EntryN {
  NFormula sigma;
  NFormula pi;
  bool operator==(const EntryN&) const = default;
};

Classification classify(const NFormula& f);
NFormula neg(const NFormula& f);
int entry_sublevel(const NFormula::EntryN& e);

NFormula::Entry1 entry_dual(const NFormula::Entry1& e);
NFormula::EntryN entry_dual(const NFormula::EntryN& e);

// Lift a formula to a higher level without changing its meaning; needed when
// a level-n entry pairs parts whose least levels differ (only the 0->1 and
// 1->2 thresholds require real work).
NFormula lift_to(const NFormula& f, int level);

bool all_finite(const NFormula& f);

// Membership oracle for a point of 2^omega. Finite and cofinite sets are
// exact; positive-information oracles (enumerated diagrams) may answer
// Unknown under a budget.
class PointOracle {
 public:
  virtual ~PointOracle() = default;
  virtual Tri member(Nat n, Budget& b) const = 0;
};

// (support, default) representation: default 0 means x = support, default 1
// means x = complement of support.
class FinitePoint final : public PointOracle {
 public:
  FinitePoint(std::set<Nat> support, bool def) : support_(std::move(support)), def_(def) {}

  Tri member(Nat n, Budget&) const override {
    bool in = support_.count(n) > 0;
    return tri_of(def_ ? !in : in);
  }

  const std::set<Nat>& support() const { return support_; }
  bool default_bit() const { return def_; }

 private:
  std::set<Nat> support_;
  bool def_;
};

// Sound, budget-monotone three-valued evaluation of f at x: True implies
// (N,x) |= f and False implies (N,x) |= neg(f). Exact whenever all families
// are finite and x is a total oracle.
Tri eval_n(const NFormula& f, const PointOracle& x, Budget budget);

inline Tri eval_n(const NFormula& f, const PointOracle& x, Nat budget) {
  return eval_n(f, x, Budget{budget});
}

}  // namespace posinf

#endif
