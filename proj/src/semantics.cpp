#include "posinf/semantics.hpp"

#include <algorithm>

#include "posinf/pullback.hpp"

namespace posinf {

std::vector<int> catalog_range(const OrderType& tag, const std::vector<int>& in_scope, int pad) {
  switch (tag.kind()) {
    case OrderType::Fin: {
      std::vector<int> out(tag.fin_size());
      for (int i = 0; i < tag.fin_size(); ++i) out[i] = i;
      return out;
    }
    case OrderType::Omega:
    case OrderType::OmegaStar: {
      // An initial segment works for both directions: fresh elements sit
      // above everything in scope for omega and below for omega_star.
      int mx = -1;
      for (int v : in_scope) mx = std::max(mx, v);
      std::vector<int> out;
      for (int i = 0; i <= mx + pad; ++i) out.push_back(i);
      return out;
    }
    case OrderType::Tilde: {
      std::vector<int> classes_in_scope;
      int max_rank = -1;
      for (int v : in_scope) {
        auto [c, r] = unpair_code(static_cast<Nat>(v));
        classes_in_scope.push_back(static_cast<int>(c));
        max_rank = std::max(max_rank, static_cast<int>(r));
      }
      std::vector<int> classes = catalog_range(tag.inner(), classes_in_scope, pad);
      std::vector<int> out;
      for (int c : classes)
        for (int r = 0; r <= max_rank + pad; ++r)
          out.push_back(static_cast<int>(pair_code(static_cast<Nat>(c), static_cast<Nat>(r))));
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return {};
}

namespace {

// Environment: small flat var -> element map, linear scan.
struct Env {
  std::vector<std::pair<int, int>> slots;

  std::optional<int> get(int var) const {
    for (auto it = slots.rbegin(); it != slots.rend(); ++it)
      if (it->first == var) return it->second;
    return std::nullopt;
  }

  std::vector<int> values() const {
    std::vector<int> out;
    out.reserve(slots.size());
    for (const auto& [v, e] : slots) out.push_back(e);
    return out;
  }
};

struct EvalConfig {
  const StructurePresentation* table = nullptr;  // finite table domain
  const OrderType* tag = nullptr;                // catalog domain
  const StructurePresentation* tilde_table = nullptr;
  int pad = 4;
  std::optional<Nat> stream_prefix;  // nullopt: streams must have covers
};

class Evaluator {
 public:
  explicit Evaluator(const EvalConfig& cfg) : cfg_(cfg) {}

  bool eval(const Formula& f, Env& env) {
    switch (f.kind()) {
      case 0: {
        if (f.tag() == Tag::Sigma) {
          for (const auto& a : f.atoms())
            if (!atom(a, env)) return false;
          return true;
        }
        for (const auto& a : f.atoms())
          if (!atom(a, env)) return true;
        return false;
      }
      case 1: {
        auto entries = expand(f.family1(), env);
        if (f.tag() == Tag::Sigma) {
          for (const auto& e : entries)
            if (exists_tuple(e.bound, env, [&](Env& inner) {
                  for (const auto& a : e.atoms)
                    if (!atom(a, inner)) return false;
                  return true;
                }))
              return true;
          return false;
        }
        for (const auto& e : entries)
          if (!forall_tuple(e.bound, env, [&](Env& inner) {
                for (const auto& a : e.atoms)
                  if (!atom(a, inner)) return true;
                return false;
              }))
            return false;
        return true;
      }
      default: {
        auto entries = expand(f.familyN(), env);
        if (f.tag() == Tag::Sigma) {
          for (const auto& e : entries)
            if (exists_tuple(e.bound, env, [&](Env& inner) {
                  return eval(e.sigma, inner) && eval(e.pi, inner);
                }))
              return true;
          return false;
        }
        for (const auto& e : entries)
          if (!forall_tuple(e.bound, env, [&](Env& inner) {
                return eval(e.sigma, inner) || eval(e.pi, inner);
              }))
            return false;
        return true;
      }
    }
  }

 private:
  bool atom(const AtomicFormula& a, const Env& env) {
    AtomicFormula g = a;
    for (int& v : g.vars) {
      auto e = env.get(v);
      if (!e) throw UnboundVariable("x" + std::to_string(v));
      v = *e;
    }
    if (cfg_.table) return cfg_.table->atom_true(g);
    if (cfg_.tilde_table) return cfg_.tilde_table->atom_true(g);
    // catalog
    if (g.symbol == kEqSymbol || g.symbol == kNeqSymbol) {
      if (auto bound = cfg_.tag->universe_bound()) {
        for (int e : g.vars)
          if (static_cast<Nat>(e) >= *bound) return false;
      }
      return g.symbol == kEqSymbol ? g.vars[0] == g.vars[1] : g.vars[0] != g.vars[1];
    }
    return cfg_.tag->leq(static_cast<Nat>(g.vars[0]), static_cast<Nat>(g.vars[1]));
  }

  std::vector<int> quantifier_range(const Env& env) {
    if (cfg_.table) {
      std::vector<int> out(cfg_.table->table_size());
      for (int i = 0; i < cfg_.table->table_size(); ++i) out[i] = i;
      return out;
    }
    if (cfg_.tilde_table) {
      // tilde of a finite table: classes 0..k-1, ranks grown from scope.
      int max_rank = -1;
      for (int v : env.values()) {
        auto [c, r] = unpair_code(static_cast<Nat>(v));
        (void)c;
        max_rank = std::max(max_rank, static_cast<int>(r));
      }
      std::vector<int> out;
      for (int c = 0; c < cfg_.tilde_table->table_size(); ++c)
        for (int r = 0; r <= max_rank + cfg_.pad; ++r)
          out.push_back(static_cast<int>(pair_code(c, r)));
      std::sort(out.begin(), out.end());
      return out;
    }
    return catalog_range(*cfg_.tag, env.values(), cfg_.pad);
  }

  CoverCtx cover_ctx(const Env& env) {
    CoverCtx ctx;
    if (cfg_.table) {
      // Include one out-of-universe representative so compiled
      // instantiations collapse exactly.
      for (int i = 0; i < cfg_.table->table_size(); ++i) ctx.elements.push_back(i);
      ctx.elements.push_back(cfg_.table->table_size());
    } else {
      ctx.elements = quantifier_range(env);
    }
    return ctx;
  }

  template <class E>
  std::vector<E> expand(const IndexedFamily<E>& fam, const Env& env) {
    if (fam.is_finite()) return fam.entries();
    auto c = fam.cover(cover_ctx(env));
    if (c) return *c;
    if (!cfg_.stream_prefix)
      throw InfiniteFamily("stream family without a finite cover in exact evaluation");
    std::vector<E> out;
    Budget b = Budget::unlimited();
    for (Nat i = 0; i < *cfg_.stream_prefix; ++i) {
      auto e = fam.at(i, b);
      if (!e) break;
      out.push_back(*e);
    }
    return out;
  }

  template <class Body>
  bool exists_tuple(const std::vector<int>& bound, Env& env, Body body) {
    if (bound.empty()) return body(env);
    return exists_rec(bound, 0, env, body);
  }

  template <class Body>
  bool exists_rec(const std::vector<int>& bound, std::size_t i, Env& env, Body& body) {
    if (i == bound.size()) return body(env);
    for (int e : quantifier_range(env)) {
      env.slots.push_back({bound[i], e});
      bool ok = exists_rec(bound, i + 1, env, body);
      env.slots.pop_back();
      if (ok) return true;
    }
    return false;
  }

  template <class Body>
  bool forall_tuple(const std::vector<int>& bound, Env& env, Body body) {
    if (bound.empty()) return body(env);
    return forall_rec(bound, 0, env, body);
  }

  template <class Body>
  bool forall_rec(const std::vector<int>& bound, std::size_t i, Env& env, Body& body) {
    if (i == bound.size()) return body(env);
    for (int e : quantifier_range(env)) {
      env.slots.push_back({bound[i], e});
      bool ok = forall_rec(bound, i + 1, env, body);
      env.slots.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  EvalConfig cfg_;
};

Env env_of(const std::map<int, int>& assignment) {
  Env env;
  for (const auto& [k, v] : assignment) env.slots.push_back({k, v});
  return env;
}

}  // namespace

bool evaluate_finite(const StructurePresentation& a, const Formula& f,
                     const std::map<int, int>& assignment) {
  if (a.kind() != StructurePresentation::Kind::Table)
    throw InfiniteUniverse("evaluate_finite needs a finite table");
  EvalConfig cfg;
  cfg.table = &a;
  Evaluator ev(cfg);
  Env env = env_of(assignment);
  return ev.eval(f, env);
}

namespace {

bool catalog_eval(const OrderType& tag, const Formula& f, const std::map<int, int>& assignment,
                  int pad, std::optional<Nat> stream_prefix) {
  EvalConfig cfg;
  cfg.tag = &tag;
  cfg.pad = pad;
  cfg.stream_prefix = stream_prefix;
  Evaluator ev(cfg);
  Env env = env_of(assignment);
  return ev.eval(f, env);
}

}  // namespace

bool evaluate_catalog(const OrderType& tag, const Formula& f,
                      const std::map<int, int>& assignment, int pad_mult) {
  if (pad_mult < 1) throw Error("pad multiplier must be >= 1");
  bool finite = true;
  try {
    (void)qdepth(f);
  } catch (const InfiniteFamily&) {
    finite = false;
  }
  if (!finite) throw InfiniteFamily("evaluate_catalog accepts finite families only");
  int pad = pad_mult * (qdepth(f) + 1);
  return catalog_eval(tag, f, assignment, pad, std::nullopt);
}

bool evaluate_cutoff(const StructurePresentation& a, const Formula& f,
                     const std::map<int, int>& assignment, const CutoffParams& params) {
  if (a.kind() == StructurePresentation::Kind::Catalog)
    return evaluate_cutoff(a.catalog_tag(), f, assignment, params);
  if (a.kind() == StructurePresentation::Kind::Table) {
    EvalConfig cfg;
    cfg.table = &a;
    cfg.pad = params.pad;
    cfg.stream_prefix = params.stream_prefix;
    Evaluator ev(cfg);
    Env env = env_of(assignment);
    return ev.eval(f, env);
  }
  if (a.kind() == StructurePresentation::Kind::TildeOfTable) {
    EvalConfig cfg;
    cfg.tilde_table = &a;
    cfg.pad = params.pad;
    cfg.stream_prefix = params.stream_prefix;
    Evaluator ev(cfg);
    Env env = env_of(assignment);
    return ev.eval(f, env);
  }
  throw UndecidablePresentation("cutoff evaluation of a stream presentation");
}

bool evaluate_cutoff(const OrderType& tag, const Formula& f,
                     const std::map<int, int>& assignment, const CutoffParams& params) {
  return catalog_eval(tag, f, assignment, params.pad, params.stream_prefix);
}

Tri evaluate_budgeted(const StructurePresentation& a, const Formula& sentence, Budget budget) {
  NFormula nf = sentence_to_nformula(sentence, a.codec());
  DiagramOracle oracle(a);
  return eval_n(nf, oracle, budget);
}

}  // namespace posinf
