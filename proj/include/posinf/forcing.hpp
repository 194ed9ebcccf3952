#ifndef POSINF_FORCING_HPP
#define POSINF_FORCING_HPP

#include <map>
#include <vector>

#include "posinf/nformula.hpp"
#include "posinf/structures.hpp"

namespace posinf {

// Finite injective sequence of universe elements; the extension order is
// sequence extension (p is below q iff p is a prefix of q).
struct ForcingCondition {
  std::vector<int> entries;

  static ForcingCondition of(std::vector<int> xs);

  bool extends(const ForcingCondition& p) const;
  ForcingCondition extended(int e) const;
  std::size_t size() const { return entries.size(); }

  bool operator==(const ForcingCondition&) const = default;
};

// Injectivity guard emitted by the atom case of the Force transform: either
// all pairs below the atom's numeric index (clipped to the tuple arity) or
// only the pairs of variables actually occurring in the atom.
enum class GuardMode { PaperLiteral, OccurringVars };

// Decides the forcing relation p |- f exactly on a finite table; formulas
// must have finite families throughout. Caches decisions per (condition,
// subformula), so reuse one engine when sweeping many conditions.
class ForcingEngine {
 public:
  explicit ForcingEngine(const StructurePresentation& a);

  bool forces(const ForcingCondition& p, const NFormula& f);

  const StructurePresentation& structure() const { return a_; }

 private:
  bool atom_forced(const ForcingCondition& p, const NAtom& a);
  bool level0_forced(const ForcingCondition& p, Tag t, const std::vector<NAtom>& atoms,
                     const NFormula& whole);
  bool pi_forced(const ForcingCondition& p, const NFormula& f);

  const StructurePresentation& a_;
  std::map<std::pair<const void*, std::vector<int>>, bool> memo_;
};

bool forces(const StructurePresentation& a, const ForcingCondition& p, const NFormula& f);

// Budgeted three-valued forcing for presentations with infinite universes:
// Sigma clauses confirm by witness, Pi clauses refute by a counterexample
// extension found within the budget.
Tri forces_budgeted(const StructurePresentation& a, const ForcingCondition& p, const NFormula& f,
                    Budget budget);

// Stage-built locally generic enumeration: stage 2n decides formula n of the
// family, stage 2n+1 appends the least absent universe element, and the
// final stage is a bijection of the (finite) universe.
struct GenericEnumeration {
  std::vector<NFormula> family;
  std::vector<ForcingCondition> stages;
  std::vector<bool> decided_positively;  // per family member
  ForcingCondition enumeration;          // the bijection g
};

GenericEnumeration build_generic(const StructurePresentation& a, const ForcingCondition& seed,
                                 const std::vector<NFormula>& family);

// The tau-formula Force_f(x_0..x_{m-1}) defining "p forces f" for |p| = m:
// A |= Force_f[x_i -> p_i] iff p |- f. Depends only on f and m. Level-0
// inputs come out at level 1; all higher levels are preserved.
Formula force_transform(const NFormula& f, int m, const AtomCodec& codec,
                        GuardMode mode = GuardMode::PaperLiteral);

}  // namespace posinf

#endif
