#include "posinf/structures.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace posinf {

using json = nlohmann::json;

OrderType OrderType::fin(int m) {
  if (m < 0) throw UnsupportedCatalog("fin size must be >= 0");
  return OrderType(Fin, m, nullptr);
}

OrderType OrderType::tilde_of(const OrderType& inner) {
  return OrderType(Tilde, 0, std::make_shared<OrderType>(inner));
}

const OrderType& OrderType::inner() const {
  if (!inner_) throw UnsupportedCatalog("no inner order type");
  return *inner_;
}

bool OrderType::leq(Nat a, Nat b) const {
  switch (kind_) {
    case Omega: return a <= b;
    case OmegaStar: return a >= b;
    case Fin:
      return a < static_cast<Nat>(size_) && b < static_cast<Nat>(size_) && a <= b;
    case Tilde: {
      auto [ca, ra] = unpair_code(a);
      auto [cb, rb] = unpair_code(b);
      (void)ra;
      (void)rb;
      return inner_->leq(ca, cb);
    }
  }
  return false;
}

std::optional<Nat> OrderType::universe_bound() const {
  if (kind_ == Fin) return static_cast<Nat>(size_);
  return std::nullopt;
}

std::string OrderType::to_string() const {
  switch (kind_) {
    case Omega: return "omega";
    case OmegaStar: return "omega_star";
    case Fin: return "fin(" + std::to_string(size_) + ")";
    case Tilde: return "tilde(" + inner_->to_string() + ")";
  }
  return "";
}

OrderType OrderType::parse(const std::string& text) {
  std::string t = text;
  // trim
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!t.empty() && is_space(t.front())) t.erase(t.begin());
  while (!t.empty() && is_space(t.back())) t.pop_back();
  if (t == "omega") return omega();
  if (t == "omega_star") return omega_star();
  if (t.rfind("fin(", 0) == 0 && t.back() == ')') {
    std::string num = t.substr(4, t.size() - 5);
    try {
      return fin(std::stoi(num));
    } catch (const std::exception&) {
      throw UnsupportedCatalog("bad fin size in " + text);
    }
  }
  if (t.rfind("tilde(", 0) == 0 && t.back() == ')')
    return tilde_of(parse(t.substr(6, t.size() - 7)));
  throw UnsupportedCatalog(text);
}

bool OrderType::operator==(const OrderType& o) const {
  if (kind_ != o.kind_ || size_ != o.size_) return false;
  if (kind_ == Tilde) return *inner_ == *o.inner_;
  return true;
}

StructurePresentation StructurePresentation::table(Vocabulary voc, int universe_size,
                                                   Relations rels) {
  if (universe_size < 0) throw Error("negative universe size");
  for (const auto& [sym, tuples] : rels) {
    if (sym == kEqSymbol || sym == kNeqSymbol)
      throw VocabularyMismatch("= and != are fixed as identity and its complement");
    if (sym >= voc.size()) throw VocabularyMismatch("relation symbol out of range");
    for (const auto& t : tuples) {
      if (t.size() != static_cast<std::size_t>(voc.symbol(sym).arity))
        throw VocabularyMismatch("tuple arity mismatch");
      for (int e : t)
        if (e < 0 || e >= universe_size) throw Error("tuple element outside universe");
    }
  }
  StructurePresentation a;
  a.kind_ = Kind::Table;
  a.voc_ = std::move(voc);
  a.codec_ = std::make_shared<AtomCodec>(a.voc_);
  a.size_ = universe_size;
  a.rels_ = std::move(rels);
  return a;
}

StructurePresentation StructurePresentation::catalog(const OrderType& tag) {
  StructurePresentation a;
  a.kind_ = Kind::Catalog;
  a.voc_ = Vocabulary::linear_order();
  a.codec_ = std::make_shared<AtomCodec>(a.voc_);
  a.tag_ = std::make_shared<OrderType>(tag);
  return a;
}

StructurePresentation StructurePresentation::diagram_stream(
    Vocabulary voc, std::shared_ptr<const StreamSource<Nat>> gen, std::string generator_name) {
  StructurePresentation a;
  a.kind_ = Kind::DiagramStream;
  a.voc_ = std::move(voc);
  a.codec_ = std::make_shared<AtomCodec>(a.voc_);
  a.gen_ = std::move(gen);
  a.gen_name_ = std::move(generator_name);
  return a;
}

std::optional<int> StructurePresentation::finite_size() const {
  if (kind_ == Kind::Table) return size_;
  if (kind_ == Kind::Catalog && tag_->kind() == OrderType::Fin) return tag_->fin_size();
  return std::nullopt;
}

const OrderType& StructurePresentation::catalog_tag() const {
  if (kind_ != Kind::Catalog) throw Error("not a catalog presentation");
  return *tag_;
}

const StructurePresentation::Relations& StructurePresentation::relations() const {
  if (kind_ != Kind::Table && kind_ != Kind::TildeOfTable)
    throw Error("not a table presentation");
  return rels_;
}

bool StructurePresentation::atom_true(const AtomicFormula& ground) const {
  check_atom(voc_, ground);
  switch (kind_) {
    case Kind::Table: {
      for (int e : ground.vars)
        if (e >= size_) return false;
      if (ground.symbol == kEqSymbol) return ground.vars[0] == ground.vars[1];
      if (ground.symbol == kNeqSymbol) return ground.vars[0] != ground.vars[1];
      auto it = rels_.find(ground.symbol);
      return it != rels_.end() && it->second.count(ground.vars) > 0;
    }
    case Kind::Catalog: {
      if (auto bound = tag_->universe_bound()) {
        for (int e : ground.vars)
          if (static_cast<Nat>(e) >= *bound) return false;
      }
      if (ground.symbol == kEqSymbol) return ground.vars[0] == ground.vars[1];
      if (ground.symbol == kNeqSymbol) return ground.vars[0] != ground.vars[1];
      // leq
      return tag_->leq(static_cast<Nat>(ground.vars[0]), static_cast<Nat>(ground.vars[1]));
    }
    case Kind::TildeOfTable: {
      if (ground.symbol == kEqSymbol) return ground.vars[0] == ground.vars[1];
      if (ground.symbol == kNeqSymbol) return ground.vars[0] != ground.vars[1];
      auto [ca, ra] = unpair_code(static_cast<Nat>(ground.vars[0]));
      auto [cb, rb] = unpair_code(static_cast<Nat>(ground.vars[1]));
      (void)ra;
      (void)rb;
      if (ca >= static_cast<Nat>(size_) || cb >= static_cast<Nat>(size_)) return false;
      auto it = rels_.find(voc_.find("leq").value());
      std::vector<int> t{static_cast<int>(ca), static_cast<int>(cb)};
      return it != rels_.end() && it->second.count(t) > 0;
    }
    default:
      throw UndecidablePresentation("atom truth of a diagram stream; use stream access");
  }
}

bool diagram(const StructurePresentation& a, Nat n) {
  if (!a.decidable())
    throw UndecidablePresentation("diagram bit of a stream presentation");
  return a.atom_true(a.codec().decode(n));
}

std::string diagram_bits(const StructurePresentation& a, Nat length) {
  std::string out;
  out.reserve(length);
  for (Nat n = 0; n < length; ++n) out.push_back(diagram(a, n) ? '1' : '0');
  return out;
}

namespace {

bool is_linear_order_vocab(const Vocabulary& v) {
  return v.size() == 3 && v.symbol(2).name == "leq" && v.symbol(2).arity == 2;
}

void check_table_linear(const StructurePresentation& a) {
  auto leq_sym = a.vocabulary().find("leq").value();
  auto it = a.relations().find(leq_sym);
  int k = a.table_size();
  auto has = [&](int x, int y) {
    std::vector<int> t{x, y};
    return it != a.relations().end() && it->second.count(t) > 0;
  };
  for (int x = 0; x < k; ++x) {
    if (!has(x, x)) throw NotALinearOrder("leq not reflexive");
    for (int y = 0; y < k; ++y) {
      if (!has(x, y) && !has(y, x)) throw NotALinearOrder("leq not total");
      if (x != y && has(x, y) && has(y, x)) throw NotALinearOrder("leq not antisymmetric");
      for (int z = 0; z < k; ++z)
        if (has(x, y) && has(y, z) && !has(x, z)) throw NotALinearOrder("leq not transitive");
    }
  }
}

}  // namespace

StructurePresentation StructurePresentation::tilde_of_table(const StructurePresentation& base) {
  StructurePresentation out = base;
  out.kind_ = Kind::TildeOfTable;
  return out;
}

StructurePresentation tilde(const StructurePresentation& a) {
  if (!is_linear_order_vocab(a.vocabulary()))
    throw NotALinearOrder("tilde needs vocabulary {=, !=, leq}");
  if (a.kind() == StructurePresentation::Kind::Catalog)
    return StructurePresentation::catalog(OrderType::tilde_of(a.catalog_tag()));
  if (a.kind() != StructurePresentation::Kind::Table)
    throw NotALinearOrder("tilde needs a table or catalog presentation");
  check_table_linear(a);
  return StructurePresentation::tilde_of_table(a);
}

std::string structure_to_json(const StructurePresentation& a) {
  json j;
  j["schema_version"] = 1;
  json voc = json::array();
  for (std::size_t i = 0; i < a.vocabulary().size(); ++i)
    voc.push_back(json::array({a.vocabulary().symbol(i).name, a.vocabulary().symbol(i).arity}));
  j["vocabulary"] = voc;
  switch (a.kind()) {
    case StructurePresentation::Kind::Table: {
      j["universe"] = a.table_size();
      json rels = json::object();
      for (const auto& [sym, tuples] : a.relations()) {
        json list = json::array();
        for (const auto& t : tuples) list.push_back(t);
        rels[a.vocabulary().symbol(sym).name] = list;
      }
      j["content"] = {{"kind", "table"}, {"relations", rels}};
      break;
    }
    case StructurePresentation::Kind::Catalog:
      j["universe"] = "omega";
      if (a.catalog_tag().kind() == OrderType::Fin) j["universe"] = a.catalog_tag().fin_size();
      j["content"] = {{"kind", "catalog"}, {"type", a.catalog_tag().to_string()}};
      break;
    case StructurePresentation::Kind::TildeOfTable:
      throw Error("tilde-of-table presentations serialize via their base table");
    default:
      j["universe"] = "omega";
      j["content"] = {{"kind", "diagram_gen"}, {"generator", a.generator_name()}};
  }
  return j.dump(2);
}

StructurePresentation structure_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("bad structure JSON: ") + e.what());
  }
  Vocabulary voc;
  if (j.contains("vocabulary")) {
    std::vector<Symbol> extra;
    bool first = true, second = false;
    for (const auto& s : j.at("vocabulary")) {
      std::string name = s.at(0).get<std::string>();
      int arity = s.at(1).get<int>();
      if (first && name == "=") {
        first = false;
        second = true;
        continue;
      }
      if (second && name == "!=") {
        second = false;
        continue;
      }
      first = second = false;
      extra.push_back({name, arity});
    }
    voc = Vocabulary(std::move(extra));
  }
  const auto& content = j.at("content");
  std::string kind = content.at("kind").get<std::string>();
  if (kind == "catalog")
    return StructurePresentation::catalog(OrderType::parse(content.at("type").get<std::string>()));
  if (kind == "table") {
    int size = j.at("universe").get<int>();
    StructurePresentation::Relations rels;
    for (const auto& [name, tuples] : content.at("relations").items()) {
      auto sym = voc.find(name);
      if (!sym) throw VocabularyMismatch("unknown relation " + name);
      std::set<std::vector<int>> set;
      for (const auto& t : tuples) set.insert(t.get<std::vector<int>>());
      rels[*sym] = std::move(set);
    }
    return StructurePresentation::table(voc, size, std::move(rels));
  }
  if (kind == "diagram_gen") {
    std::string gen = content.at("generator").get<std::string>();
    if (gen.rfind("catalog:", 0) == 0) {
      OrderType tag = OrderType::parse(gen.substr(8));
      return StructurePresentation::diagram_stream(voc, catalog_diagram_generator(tag), gen);
    }
    throw Error("unknown diagram generator " + gen);
  }
  throw Error("unknown structure content kind " + kind);
}

StructurePresentation structure_from_spec(const std::string& tag_or_json) {
  std::string t = tag_or_json;
  if (!t.empty() && (t[0] == '{')) return structure_from_json(t);
  return StructurePresentation::catalog(OrderType::parse(t));
}

bool substructure_leq(const StructurePresentation& a, const StructurePresentation& b) {
  if (a.kind() != StructurePresentation::Kind::Table ||
      b.kind() != StructurePresentation::Kind::Table)
    throw VocabularyMismatch("substructure order needs table presentations");
  if (!(a.vocabulary() == b.vocabulary()))
    throw VocabularyMismatch("tables over different vocabularies");
  if (a.table_size() != b.table_size())
    throw VocabularyMismatch("tables over different universes");
  for (const auto& [sym, tuples] : a.relations()) {
    auto it = b.relations().find(sym);
    for (const auto& t : tuples) {
      if (it == b.relations().end() || it->second.count(t) == 0) return false;
    }
  }
  return true;
}

namespace {

class CatalogDiagramSource final : public StreamSource<Nat> {
 public:
  explicit CatalogDiagramSource(OrderType tag)
      : tag_(std::move(tag)), a_(StructurePresentation::catalog(tag_)) {}

  std::optional<Nat> at(Nat i, Budget& b) const override {
    // i-th true atom index, scanning the diagram; scan cost is charged.
    Nat seen = 0;
    for (Nat n = 0;; ++n) {
      if (!b.take()) return std::nullopt;
      if (diagram(a_, n)) {
        if (seen++ == i) return n;
      }
    }
  }

  std::string describe() const override { return "catalog:" + tag_.to_string(); }

 private:
  OrderType tag_;
  StructurePresentation a_;
};

}  // namespace

std::shared_ptr<const StreamSource<Nat>> catalog_diagram_generator(const OrderType& tag) {
  return std::make_shared<CatalogDiagramSource>(tag);
}

StructurePresentation linear_table(const std::vector<int>& ranking) {
  int k = static_cast<int>(ranking.size());
  std::vector<int> rank(k, -1);
  for (int pos = 0; pos < k; ++pos) {
    int e = ranking[pos];
    if (e < 0 || e >= k || rank[e] != -1) throw NotALinearOrder("ranking is not a permutation");
    rank[e] = pos;
  }
  std::set<std::vector<int>> leq;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      if (rank[x] <= rank[y]) leq.insert({x, y});
  Vocabulary voc = Vocabulary::linear_order();
  StructurePresentation::Relations rels;
  rels[voc.find("leq").value()] = std::move(leq);
  return StructurePresentation::table(voc, k, std::move(rels));
}

Tri DiagramOracle::member(Nat n, Budget& b) const {
  if (a_.decidable()) return tri_of(diagram(a_, n));
  if (seen_.count(n)) return Tri::True;
  // Enumerate further diagram entries while the budget lasts.
  while (b.take()) {
    auto e = a_.diagram_generator()->at(next_pos_, b);
    if (!e) break;
    ++next_pos_;
    seen_.insert(*e);
    if (*e == n) return Tri::True;
  }
  return Tri::Unknown;
}

}  // namespace posinf
