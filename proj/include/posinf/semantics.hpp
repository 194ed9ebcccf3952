#ifndef POSINF_SEMANTICS_HPP
#define POSINF_SEMANTICS_HPP

#include <map>

#include "posinf/formula.hpp"
#include "posinf/structures.hpp"

namespace posinf {

// Exact classical satisfaction on a finite table. Stream families must
// support the finite-universe collapse rule (a cover); anything else raises
// InfiniteFamily.
bool evaluate_finite(const StructurePresentation& a, const Formula& f,
                     const std::map<int, int>& assignment = {});

// Exact-by-cutoff evaluation on a catalog order type. Finite families only;
// quantifiers range over the finite sub-universe grown from the values in
// scope padded by pad_mult * (qdepth + 1) fresh layers. Correctness on the
// homogeneous catalog orders is validated by the cutoff-doubling oracle
// (re-run with pad_mult 2 and 3).
bool evaluate_catalog(const OrderType& tag, const Formula& f,
                      const std::map<int, int>& assignment = {}, int pad_mult = 1);

// Cutoff evaluation that also accepts stream families: sources with covers
// are collapsed exactly, anything else is truncated to stream_prefix
// entries. The stability of the verdict under growing pad/prefix is the
// caller's oracle.
struct CutoffParams {
  int pad = 4;
  Nat stream_prefix = 64;
};
bool evaluate_cutoff(const StructurePresentation& a, const Formula& f,
                     const std::map<int, int>& assignment, const CutoffParams& params);
bool evaluate_cutoff(const OrderType& tag, const Formula& f,
                     const std::map<int, int>& assignment, const CutoffParams& params);

// Budgeted three-valued evaluation of a sentence against an enumerated
// diagram: the sentence is compiled to its quantifier-free arithmetic form
// and evaluated by eval_n against the diagram oracle.
Tri evaluate_budgeted(const StructurePresentation& a, const Formula& sentence, Budget budget);

// The finite sub-universe the catalog evaluator ranges over at a quantifier,
// given the element values already in scope. Exposed for reports.
std::vector<int> catalog_range(const OrderType& tag, const std::vector<int>& in_scope, int pad);

}  // namespace posinf

#endif
