#ifndef POSINF_FORMULA_HPP
#define POSINF_FORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "posinf/family.hpp"
#include "posinf/vocabulary.hpp"

namespace posinf {

enum class Tag { Sigma, Pi };

inline Tag dual_tag(Tag t) { return t == Tag::Sigma ? Tag::Pi : Tag::Sigma; }

struct Classification {
  Tag tag;
  int level;
  bool operator==(const Classification&) const = default;
};

// Normal-form positive infinitary tau-formula at a finite level.
//
// The storage mirrors Def-2.1 shapes under both tags at once:
//   level 0   Sigma: /\ atoms            Pi: \/ ~atoms        (same atom list)
//   level 1   Sigma: \/_i EX b_i . /\ atoms_i
//             Pi:    /\_i ALL b_i . \/ ~atoms_i               (same entries)
//   level >=2 Sigma: \/_i EX b_i . (sigma_i & pi_i)
//             Pi:    /\_i ALL b_i . (sigma_i | pi_i)
// so neg flips the tag, reuses level-0/1 bodies verbatim and maps a level-n
// entry (b, s, p) to (b, neg(p), neg(s)). Formulas are immutable and duals
// are cached on the node, which makes neg(neg(f)) return f's own node.
class Formula {
 public:
  struct Entry1 {
    std::vector<int> bound;
    std::vector<AtomicFormula> atoms;
    bool operator==(const Entry1&) const = default;
  };
  struct EntryN;

  using Family1 = IndexedFamily<Entry1>;
  using FamilyN = IndexedFamily<EntryN>;

  Formula() = default;

  static Formula level0(Tag t, std::vector<AtomicFormula> atoms);
  static Formula level1(Tag t, Family1 fam);
  // declared_level is required (and trusted) for stream families; for finite
  // families the least level matching the shape is computed and stored.
  static Formula levelN(Tag t, int declared_level, FamilyN fam);

  bool valid() const { return node_ != nullptr; }
  Tag tag() const;
  int kind() const;  // 0, 1 or 2 (2 covers every level >= 2)
  const std::vector<AtomicFormula>& atoms() const;
  const Family1& family1() const;
  const FamilyN& familyN() const;
  int stored_level() const;  // kind 2 only

  bool operator==(const Formula& o) const;
  const void* id() const { return node_.get(); }

  friend Formula neg(const Formula& f);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::EntryN {
  std::vector<int> bound;
  Formula sigma;  // tag Sigma, the Sigma^p_beta part
  Formula pi;     // tag Pi, the Pi^p_beta part
  bool operator==(const EntryN&) const = default;
};

// Least (tag, level) matching the formula's shape; throws MalformedFormula
// on shape violations that construction could not see (stream entries are
// validated when enumerated).
Classification classify(const Formula& f);

Formula neg(const Formula& f);

// The common sublevel of a level-n entry; levels 0 and 1 only match
// themselves, levels >= 2 are cumulative by shape.
int entry_sublevel(const Formula::EntryN& e);

Formula::Entry1 entry_dual(const Formula::Entry1& e);
Formula::EntryN entry_dual(const Formula::EntryN& e);

// Capture-free substitution of universe elements for free variables; an
// element n substitutes as the variable x_n read under x_i -> i. The
// assignment must cover every free variable (checkable only for finite
// families; stream families substitute lazily).
Formula substitute(const Formula& f, const std::map<int, int>& assignment);

// Finite-family introspection; both throw InfiniteFamily on streams.
std::set<int> free_vars(const Formula& f);
int qdepth(const Formula& f);

// Convenience constructors.
Formula conj_atoms(std::vector<AtomicFormula> atoms);              // Sigma^p_0
Formula disj_negated_atoms(std::vector<AtomicFormula> atoms);      // Pi^p_0
Formula sigma1(std::vector<Formula::Entry1> entries);
Formula pi1(std::vector<Formula::Entry1> entries);

}  // namespace posinf

#endif
