#include "posinf/nformula.hpp"

#include <algorithm>
#include <mutex>

namespace posinf {

struct NFormula::Node {
  Tag tag;
  int level;
  std::variant<std::vector<NAtom>, Family1, FamilyN> body;

  mutable std::shared_ptr<const Node> dual;
};

namespace {
std::mutex g_dual_mutex;
}

NFormula NFormula::level0(Tag t, std::vector<NAtom> atoms) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->level = 0;
  n->body = std::move(atoms);
  return NFormula(std::move(n));
}

NFormula NFormula::level1(Tag t, Family1 fam) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->level = 1;
  n->body = std::move(fam);
  return NFormula(std::move(n));
}

int entry_sublevel(const NFormula::EntryN& e) {
  if (!e.sigma.valid() || !e.pi.valid()) throw MalformedFormula("entry part missing");
  if (e.sigma.tag() != Tag::Sigma) throw MalformedFormula("entry Sigma part has Pi tag");
  if (e.pi.tag() != Tag::Pi) throw MalformedFormula("entry Pi part has Sigma tag");
  int a = classify(e.sigma).level;
  int b = classify(e.pi).level;
  if (a == b) return a;
  if (a >= 2 && b >= 2) return std::max(a, b);
  throw MalformedFormula("entry parts at incompatible levels " + std::to_string(a) + " and " +
                         std::to_string(b));
}

NFormula NFormula::levelN(Tag t, int declared_level, FamilyN fam) {
  if (declared_level < 2) throw MalformedFormula("level >= 2 required for pair entries");
  int level = declared_level;
  if (fam.is_finite()) {
    int least = 2;
    for (const auto& e : fam.entries()) least = std::max(least, entry_sublevel(e) + 1);
    level = least;
  }
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->level = level;
  n->body = std::move(fam);
  return NFormula(std::move(n));
}

Tag NFormula::tag() const { return node_->tag; }

int NFormula::kind() const {
  return node_->body.index() == 2 ? 2 : static_cast<int>(node_->body.index());
}

const std::vector<NAtom>& NFormula::atoms() const {
  return std::get<std::vector<NAtom>>(node_->body);
}

const NFormula::Family1& NFormula::family1() const { return std::get<Family1>(node_->body); }
const NFormula::FamilyN& NFormula::familyN() const { return std::get<FamilyN>(node_->body); }
int NFormula::stored_level() const { return node_->level; }

bool NFormula::operator==(const NFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->tag != o.node_->tag || node_->level != o.node_->level) return false;
  if (node_->body.index() != o.node_->body.index()) return false;
  switch (node_->body.index()) {
    case 0: return atoms() == o.atoms();
    case 1: return family1() == o.family1();
    default: return familyN() == o.familyN();
  }
}

Classification classify(const NFormula& f) {
  if (!f.valid()) throw MalformedFormula("empty formula");
  return Classification{f.tag(), f.stored_level()};
}

NFormula::Entry1 entry_dual(const NFormula::Entry1& e) {
  NFormula::Entry1 out;
  out.reserve(e.size());
  for (const auto& a : e) out.push_back(natom_dual(a));
  return out;
}

NFormula::EntryN entry_dual(const NFormula::EntryN& e) {
  return NFormula::EntryN{neg(e.pi), neg(e.sigma)};
}

NFormula neg(const NFormula& f) {
  if (!f.valid()) throw MalformedFormula("empty formula");
  {
    std::lock_guard<std::mutex> lock(g_dual_mutex);
    if (f.node_->dual) return NFormula(f.node_->dual);
  }
  auto n = std::make_shared<NFormula::Node>();
  n->tag = dual_tag(f.tag());
  n->level = f.node_->level;
  switch (f.kind()) {
    case 0: n->body = entry_dual(f.atoms()); break;
    case 1: n->body = dual_family(f.family1()); break;
    default: n->body = dual_family(f.familyN()); break;
  }
  std::lock_guard<std::mutex> lock(g_dual_mutex);
  if (f.node_->dual) return NFormula(f.node_->dual);
  n->dual = f.node_;
  f.node_->dual = n;
  return NFormula(std::move(n));
}

NFormula lift_to(const NFormula& f, int level) {
  int cur = classify(f).level;
  if (cur == level) return f;
  if (cur > level) throw MalformedFormula("cannot lift downwards");
  if (level >= 2 && cur >= 2) return f;  // cumulative by shape
  NFormula g = f;
  if (cur == 0) {
    // /\ atoms becomes a one-member join; \/ duals a one-member meet.
    g = NFormula::level1(g.tag(), NFormula::Family1::finite({g.kind() == 0 ? g.atoms()
                                                                           : NFormula::Entry1{}}));
    cur = 1;
  }
  if (cur == 1 && level >= 2) {
    // Pair each member with a trivially-true (Sigma side: trivially-true Pi
    // partner \/{~Bot}) or trivially-false partner so the shape fits level 2.
    std::vector<NFormula::EntryN> entries;
    if (!g.family1().is_finite())
      throw InfiniteFamily("lift of a stream family");
    for (const auto& e : g.family1().entries()) {
      if (g.tag() == Tag::Sigma) {
        NFormula s = NFormula::level0(Tag::Sigma, e);
        NFormula p = NFormula::level0(Tag::Pi, {n_bot()});  // \/ {neg Bot} = true
        entries.push_back({s, p});
      } else {
        NFormula s = NFormula::level0(Tag::Sigma, {n_bot()});  // /\ {Bot} = false
        NFormula p = NFormula::level0(Tag::Pi, e);
        entries.push_back({s, p});
      }
    }
    g = NFormula::levelN(g.tag(), 2, NFormula::FamilyN::finite(std::move(entries)));
  }
  return g;
}

bool all_finite(const NFormula& f) {
  switch (f.kind()) {
    case 0: return true;
    case 1: return f.family1().is_finite();
    default:
      if (!f.familyN().is_finite()) return false;
      for (const auto& e : f.familyN().entries())
        if (!all_finite(e.sigma) || !all_finite(e.pi)) return false;
      return true;
  }
}

namespace {

Tri eval_atom(const NAtom& a, const PointOracle& x, Budget& b) {
  switch (a.kind) {
    case NAtom::Top: return Tri::True;
    case NAtom::Bot: return Tri::False;
    default: return x.member(a.n, b);
  }
}

// The level-0/1 bodies are evaluated through the node tag: under Sigma the
// atom list is a conjunction, under Pi a disjunction of duals.
Tri eval_atom_list(Tag t, const std::vector<NAtom>& atoms, const PointOracle& x, Budget& b) {
  if (t == Tag::Sigma) {
    Tri acc = Tri::True;
    for (const auto& a : atoms) {
      acc = tri_and(acc, eval_atom(a, x, b));
      if (acc == Tri::False) return acc;
    }
    return acc;
  }
  // Pi list: D-atoms are read under neg, Top/Bot stand for themselves.
  Tri acc = Tri::False;
  for (const auto& a : atoms) {
    Tri v = a.kind == NAtom::D ? tri_not(eval_atom(a, x, b)) : eval_atom(a, x, b);
    acc = tri_or(acc, v);
    if (acc == Tri::True) return acc;
  }
  return acc;
}

Tri eval_rec(const NFormula& f, const PointOracle& x, Budget& b);

// Join (Sigma) / meet (Pi) over a family with budgeted enumeration. A stream
// family that runs out of budget yields Unknown unless already decided.
template <class Entry, class EvalEntry>
Tri eval_family(Tag t, const IndexedFamily<Entry>& fam, Budget& b, EvalEntry ev) {
  const bool join = t == Tag::Sigma;
  Tri acc = join ? Tri::False : Tri::True;
  Nat i = 0;
  while (true) {
    auto e = fam.at(i, b);
    if (!e) {
      if (fam.is_finite()) return acc;  // exhausted
      return Tri::Unknown;              // budget ran out on a stream
    }
    Tri v = ev(*e);
    if (join) {
      if (v == Tri::True) return Tri::True;
      if (v == Tri::Unknown) acc = Tri::Unknown;
    } else {
      if (v == Tri::False) return Tri::False;
      if (v == Tri::Unknown) acc = Tri::Unknown;
    }
    ++i;
  }
}

Tri eval_rec(const NFormula& f, const PointOracle& x, Budget& b) {
  switch (f.kind()) {
    case 0: return eval_atom_list(f.tag(), f.atoms(), x, b);
    case 1:
      return eval_family(f.tag(), f.family1(), b, [&](const NFormula::Entry1& e) {
        // Sigma entries are Sigma^p_0 conjunctions, Pi entries Pi^p_0
        // disjunctions of duals; both read the stored list under the tag.
        return eval_atom_list(f.tag(), e, x, b);
      });
    default:
      return eval_family(f.tag(), f.familyN(), b, [&](const NFormula::EntryN& e) {
        if (f.tag() == Tag::Sigma) return tri_and(eval_rec(e.sigma, x, b), eval_rec(e.pi, x, b));
        return tri_or(eval_rec(e.sigma, x, b), eval_rec(e.pi, x, b));
      });
  }
}

}  // namespace

Tri eval_n(const NFormula& f, const PointOracle& x, Budget budget) {
  return eval_rec(f, x, budget);
}

}  // namespace posinf
