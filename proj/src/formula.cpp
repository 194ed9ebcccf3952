#include "posinf/formula.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace posinf {

struct Formula::Node {
  Tag tag;
  int level;  // 0, 1, or the stored level for kind-2 nodes
  std::variant<std::vector<AtomicFormula>, Family1, FamilyN> body;

  mutable std::shared_ptr<const Node> dual;  // filled by neg(), guarded below
};

namespace {
std::mutex g_dual_mutex;
}

Formula Formula::level0(Tag t, std::vector<AtomicFormula> atoms) {
  for (const auto& a : atoms)
    for (int v : a.vars)
      if (v < 0) throw MalformedFormula("negative variable index");
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->level = 0;
  n->body = std::move(atoms);
  return Formula(std::move(n));
}

Formula Formula::level1(Tag t, Family1 fam) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  n->level = 1;
  n->body = std::move(fam);
  return Formula(std::move(n));
}

int entry_sublevel(const Formula::EntryN& e) {
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

Formula Formula::levelN(Tag t, int declared_level, FamilyN fam) {
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
  return Formula(std::move(n));
}

Tag Formula::tag() const { return node_->tag; }

int Formula::kind() const {
  return node_->body.index() == 2 ? 2 : static_cast<int>(node_->body.index());
}

const std::vector<AtomicFormula>& Formula::atoms() const {
  return std::get<std::vector<AtomicFormula>>(node_->body);
}

const Formula::Family1& Formula::family1() const { return std::get<Family1>(node_->body); }
const Formula::FamilyN& Formula::familyN() const { return std::get<FamilyN>(node_->body); }
int Formula::stored_level() const { return node_->level; }

bool Formula::operator==(const Formula& o) const {
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

Classification classify(const Formula& f) {
  if (!f.valid()) throw MalformedFormula("empty formula");
  return Classification{f.tag(), f.stored_level()};
}

Formula::Entry1 entry_dual(const Formula::Entry1& e) { return e; }

Formula::EntryN entry_dual(const Formula::EntryN& e) {
  return Formula::EntryN{e.bound, neg(e.pi), neg(e.sigma)};
}

Formula neg(const Formula& f) {
  if (!f.valid()) throw MalformedFormula("empty formula");
  {
    std::lock_guard<std::mutex> lock(g_dual_mutex);
    if (f.node_->dual) return Formula(f.node_->dual);
  }
  auto n = std::make_shared<Formula::Node>();
  n->tag = dual_tag(f.tag());
  n->level = f.node_->level;
  switch (f.kind()) {
    case 0: n->body = f.atoms(); break;
    case 1: n->body = f.family1(); break;
    default: n->body = dual_family(f.familyN()); break;
  }
  std::lock_guard<std::mutex> lock(g_dual_mutex);
  if (f.node_->dual) return Formula(f.node_->dual);  // lost a benign race
  n->dual = f.node_;
  f.node_->dual = n;
  return Formula(std::move(n));
}

namespace {

// Partial substitution: variables outside the map stay untouched. The public
// substitute() checks coverage where it can.
using VarMap = std::map<int, int>;

int mapped(int v, const VarMap& m) {
  auto it = m.find(v);
  return it == m.end() ? v : it->second;
}

std::vector<AtomicFormula> subst_atoms(const std::vector<AtomicFormula>& atoms, const VarMap& m) {
  std::vector<AtomicFormula> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    AtomicFormula b = a;
    for (int& v : b.vars) v = mapped(v, m);
    out.push_back(std::move(b));
  }
  return out;
}

Formula subst_partial(const Formula& f, const VarMap& m);
bool all_finite(const Formula& f);

int entry_occ_max(const Formula::Entry1& e) {
  int mx = -1;
  for (const auto& a : e.atoms) mx = std::max(mx, a.maxvar());
  return mx;
}

int entry_occ_max(const Formula::EntryN& e) {
  // Fresh binder names must dodge everything occurring below; for stream
  // children the occurring set is not computable, so jump far away.
  if (!all_finite(e.sigma) || !all_finite(e.pi)) return 1 << 20;
  int mx = -1;
  for (int v : free_vars(e.sigma)) mx = std::max(mx, v);
  for (int v : free_vars(e.pi)) mx = std::max(mx, v);
  return mx;
}

template <class Entry>
int fresh_base(const Entry& e, const VarMap& m) {
  int mx = entry_occ_max(e);
  for (int b : e.bound) mx = std::max(mx, b);
  for (const auto& [k, v] : m) mx = std::max({mx, k, v});
  return mx + 1;
}

// Shadow bound variables; rename them when a substituted-in element index
// would collide with a binder.
template <class Entry, class Rec>
Entry subst_entry(const Entry& e, const VarMap& m, Rec rec) {
  VarMap inner = m;
  for (int b : e.bound) inner.erase(b);
  bool capture = false;
  for (const auto& [k, v] : inner) {
    (void)k;
    for (int b : e.bound)
      if (v == b) capture = true;
  }
  Entry out = e;
  if (capture) {
    int base = fresh_base(e, m);
    VarMap rename;
    for (std::size_t i = 0; i < e.bound.size(); ++i) rename[e.bound[i]] = base + static_cast<int>(i);
    for (std::size_t i = 0; i < out.bound.size(); ++i) out.bound[i] = base + static_cast<int>(i);
    for (const auto& [k, v] : rename) inner[k] = v;
  }
  rec(out, inner);
  return out;
}

template <class E>
class SubstSource final : public StreamSource<E> {
 public:
  SubstSource(std::shared_ptr<const StreamSource<E>> base, VarMap m)
      : base_(std::move(base)), map_(std::move(m)) {}

  std::optional<E> at(Nat i, Budget& b) const override {
    auto e = base_->at(i, b);
    if (!e) return std::nullopt;
    return map_entry(*e);
  }

  std::optional<std::vector<E>> cover(const CoverCtx& ctx) const override {
    auto c = base_->cover(ctx);
    if (!c) return std::nullopt;
    std::vector<E> out;
    for (const auto& e : *c) out.push_back(map_entry(e));
    return out;
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "subst(";
    bool first = true;
    for (const auto& [k, v] : map_) {
      if (!first) os << ",";
      first = false;
      os << "x" << k << "=" << v;
    }
    os << ";" << base_->describe() << ")";
    return os.str();
  }

 private:
  E map_entry(const E& e) const;

  std::shared_ptr<const StreamSource<E>> base_;
  VarMap map_;
};

template <>
Formula::Entry1 SubstSource<Formula::Entry1>::map_entry(const Formula::Entry1& e) const {
  return subst_entry(e, map_, [](Formula::Entry1& out, const VarMap& inner) {
    out.atoms = subst_atoms(out.atoms, inner);
  });
}

template <>
Formula::EntryN SubstSource<Formula::EntryN>::map_entry(const Formula::EntryN& e) const {
  return subst_entry(e, map_, [](Formula::EntryN& out, const VarMap& inner) {
    out.sigma = subst_partial(out.sigma, inner);
    out.pi = subst_partial(out.pi, inner);
  });
}

Formula subst_partial(const Formula& f, const VarMap& m) {
  if (m.empty()) return f;
  switch (f.kind()) {
    case 0:
      return Formula::level0(f.tag(), subst_atoms(f.atoms(), m));
    case 1: {
      const auto& fam = f.family1();
      if (fam.is_finite()) {
        std::vector<Formula::Entry1> out;
        for (const auto& e : fam.entries())
          out.push_back(subst_entry(e, m, [](Formula::Entry1& x, const VarMap& inner) {
            x.atoms = subst_atoms(x.atoms, inner);
          }));
        return Formula::level1(f.tag(), Formula::Family1::finite(std::move(out)));
      }
      return Formula::level1(f.tag(), Formula::Family1::stream(
          std::make_shared<SubstSource<Formula::Entry1>>(fam.source(), m)));
    }
    default: {
      const auto& fam = f.familyN();
      if (fam.is_finite()) {
        std::vector<Formula::EntryN> out;
        for (const auto& e : fam.entries())
          out.push_back(subst_entry(e, m, [](Formula::EntryN& x, const VarMap& inner) {
            x.sigma = subst_partial(x.sigma, inner);
            x.pi = subst_partial(x.pi, inner);
          }));
        return Formula::levelN(f.tag(), f.stored_level(), Formula::FamilyN::finite(std::move(out)));
      }
      return Formula::levelN(f.tag(), f.stored_level(), Formula::FamilyN::stream(
          std::make_shared<SubstSource<Formula::EntryN>>(fam.source(), m)));
    }
  }
}

bool all_finite(const Formula& f) {
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

}  // namespace

Formula substitute(const Formula& f, const std::map<int, int>& assignment) {
  if (all_finite(f)) {
    for (int v : free_vars(f))
      if (!assignment.count(v)) throw UnboundVariable("x" + std::to_string(v));
  }
  return subst_partial(f, assignment);
}

std::set<int> free_vars(const Formula& f) {
  std::set<int> out;
  switch (f.kind()) {
    case 0:
      for (const auto& a : f.atoms())
        for (int v : a.vars) out.insert(v);
      return out;
    case 1:
      for (const auto& e : f.family1().entries()) {
        std::set<int> b(e.bound.begin(), e.bound.end());
        for (const auto& a : e.atoms)
          for (int v : a.vars)
            if (!b.count(v)) out.insert(v);
      }
      return out;
    default:
      for (const auto& e : f.familyN().entries()) {
        std::set<int> b(e.bound.begin(), e.bound.end());
        for (int v : free_vars(e.sigma))
          if (!b.count(v)) out.insert(v);
        for (int v : free_vars(e.pi))
          if (!b.count(v)) out.insert(v);
      }
      return out;
  }
}

int qdepth(const Formula& f) {
  switch (f.kind()) {
    case 0: return 0;
    case 1: {
      int d = 0;
      for (const auto& e : f.family1().entries()) d = std::max(d, static_cast<int>(e.bound.size()));
      return d;
    }
    default: {
      int d = 0;
      for (const auto& e : f.familyN().entries())
        d = std::max(d, static_cast<int>(e.bound.size()) +
                            std::max(qdepth(e.sigma), qdepth(e.pi)));
      return d;
    }
  }
}

Formula conj_atoms(std::vector<AtomicFormula> atoms) {
  return Formula::level0(Tag::Sigma, std::move(atoms));
}

Formula disj_negated_atoms(std::vector<AtomicFormula> atoms) {
  return Formula::level0(Tag::Pi, std::move(atoms));
}

Formula sigma1(std::vector<Formula::Entry1> entries) {
  return Formula::level1(Tag::Sigma, Formula::Family1::finite(std::move(entries)));
}

Formula pi1(std::vector<Formula::Entry1> entries) {
  return Formula::level1(Tag::Pi, Formula::Family1::finite(std::move(entries)));
}

}  // namespace posinf
