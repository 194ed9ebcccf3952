#ifndef POSINF_VOCABULARY_HPP
#define POSINF_VOCABULARY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "posinf/codes.hpp"
#include "posinf/errors.hpp"

namespace posinf {

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol&) const = default;
};

// Relational vocabulary. Positions 0 and 1 are reserved for "=" and "!=",
// both binary; "=" is always interpreted as identity and "!=" as its
// complement, which is what lets existential positive formulas define the
// empty set.
class Vocabulary {
 public:
  Vocabulary() : symbols_{{"=", 2}, {"!=", 2}} {}

  explicit Vocabulary(std::vector<Symbol> extra) : Vocabulary() {
    for (auto& s : extra) add(std::move(s));
  }

  static Vocabulary linear_order() { return Vocabulary({{"leq", 2}}); }

  void add(Symbol s) {
    if (s.arity < 1) throw VocabularyMismatch("arity of " + s.name + " must be >= 1");
    if (find(s.name)) throw VocabularyMismatch("duplicate symbol " + s.name);
    symbols_.push_back(std::move(s));
  }

  std::size_t size() const { return symbols_.size(); }
  const Symbol& symbol(std::size_t i) const { return symbols_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name) return i;
    return std::nullopt;
  }

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

inline constexpr std::size_t kEqSymbol = 0;
inline constexpr std::size_t kNeqSymbol = 1;

// An atomic tau-formula R(x_{i1},...,x_{ik}); never negated. Variables are
// indices: x_i. Ground atoms are atoms read under the assignment x_i -> i.
struct AtomicFormula {
  std::size_t symbol = 0;
  std::vector<int> vars;

  bool operator==(const AtomicFormula&) const = default;

  int maxvar() const {
    int m = -1;
    for (int v : vars) m = std::max(m, v);
    return m;
  }
};

inline AtomicFormula eq_atom(int a, int b) { return {kEqSymbol, {a, b}}; }
inline AtomicFormula neq_atom(int a, int b) { return {kNeqSymbol, {a, b}}; }

inline void check_atom(const Vocabulary& voc, const AtomicFormula& a) {
  if (a.symbol >= voc.size()) throw MalformedFormula("atom symbol index out of range");
  if (a.vars.size() != static_cast<std::size_t>(voc.symbol(a.symbol).arity))
    throw MalformedFormula("atom arity mismatch for " + voc.symbol(a.symbol).name);
  for (int v : a.vars)
    if (v < 0) throw MalformedFormula("negative variable index");
}

}  // namespace posinf

#endif
