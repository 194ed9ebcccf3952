#include "posinf/borel.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace posinf {

using json = nlohmann::json;

struct BorelCode::Node {
  int level = 1;
  std::variant<Family1, FamilyN> body;
};

BorelCode BorelCode::level1(Family1 cells) {
  BorelCode b;
  auto n = std::make_shared<Node>();
  n->level = 1;
  n->body = std::move(cells);
  b.node_ = std::move(n);
  return b;
}

BorelCode BorelCode::levelN(int declared_level, FamilyN pairs) {
  if (declared_level < 2) throw MalformedCode("pair codes start at level 2");
  int level = declared_level;
  if (pairs.is_finite()) {
    int least = 2;
    for (const auto& p : pairs.entries()) {
      if (!p.left.valid() || !p.right.valid()) throw MalformedCode("missing pair component");
      if (p.left.complement() || p.right.complement())
        throw MalformedCode("nested codes must be positive");
      least = std::max({least, p.left.level() + 1, p.right.level() + 1});
    }
    level = least;
  }
  BorelCode b;
  auto n = std::make_shared<Node>();
  n->level = level;
  n->body = std::move(pairs);
  b.node_ = std::move(n);
  return b;
}

BorelCode BorelCode::complemented() const {
  BorelCode b = *this;
  b.complement_ = !b.complement_;
  return b;
}

int BorelCode::level() const { return node_->level; }
bool BorelCode::is_level1() const { return node_->body.index() == 0; }
const BorelCode::Family1& BorelCode::cells() const { return std::get<Family1>(node_->body); }
const BorelCode::FamilyN& BorelCode::pairs() const { return std::get<FamilyN>(node_->body); }

bool BorelCode::operator==(const BorelCode& o) const {
  if (complement_ != o.complement_) return false;
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->level != o.node_->level || node_->body.index() != o.node_->body.index()) return false;
  if (is_level1()) return cells() == o.cells();
  return pairs() == o.pairs();
}

namespace {

// Cell of a Sigma^p_0 conjunction: nullopt when a Bot conjunct empties it.
std::optional<BorelCode::Cell> cell_of(const std::vector<NAtom>& atoms) {
  BorelCode::Cell cell;
  for (const auto& a : atoms) {
    if (a.kind == NAtom::Bot) return std::nullopt;
    if (a.kind == NAtom::D) cell.push_back(a.n);
  }
  std::sort(cell.begin(), cell.end());
  cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
  return cell;
}

// Scanning filter-map over a stream of Sigma^p_0 bodies: Bot-disjuncts
// contribute nothing to the union and are skipped; position i is the i-th
// survivor, so the scan cost is charged to the budget.
class CellScanSource final : public StreamSource<BorelCode::Cell> {
 public:
  explicit CellScanSource(IndexedFamily<NFormula::Entry1> base) : base_(std::move(base)) {}

  std::optional<BorelCode::Cell> at(Nat i, Budget& b) const override {
    Nat seen = 0;
    for (Nat j = 0;; ++j) {
      if (!b.take()) return std::nullopt;
      auto e = base_.at(j, b);
      if (!e) return std::nullopt;
      auto c = cell_of(*e);
      if (!c) continue;
      if (seen++ == i) return c;
    }
  }

  std::string describe() const override { return "cells(stream)"; }

 private:
  IndexedFamily<NFormula::Entry1> base_;
};

BorelCode to_borel_sigma(const NFormula& f);

class PairMapSource final : public StreamSource<BorelCode::Pair> {
 public:
  explicit PairMapSource(IndexedFamily<NFormula::EntryN> base) : base_(std::move(base)) {}

  std::optional<BorelCode::Pair> at(Nat i, Budget& b) const override {
    auto e = base_.at(i, b);
    if (!e) return std::nullopt;
    return BorelCode::Pair{to_borel_sigma(e->sigma), to_borel_sigma(neg(e->pi))};
  }

  std::string describe() const override { return "pairs(stream)"; }

 private:
  IndexedFamily<NFormula::EntryN> base_;
};

BorelCode to_borel_sigma(const NFormula& f) {
  if (f.tag() != Tag::Sigma) throw MalformedFormula("Sigma formula expected");
  switch (f.kind()) {
    case 0: {
      auto c = cell_of(f.atoms());
      std::vector<BorelCode::Cell> cells;
      if (c) cells.push_back(*c);  // Bot conjunct: Mod(f) is empty
      return BorelCode::level1(BorelCode::Family1::finite(std::move(cells)));
    }
    case 1: {
      const auto& fam = f.family1();
      if (fam.is_finite()) {
        std::vector<BorelCode::Cell> cells;
        for (const auto& e : fam.entries())
          if (auto c = cell_of(e)) cells.push_back(*c);
        return BorelCode::level1(BorelCode::Family1::finite(std::move(cells)));
      }
      return BorelCode::level1(
          BorelCode::Family1::stream(std::make_shared<CellScanSource>(fam)));
    }
    default: {
      const auto& fam = f.familyN();
      if (fam.is_finite()) {
        std::vector<BorelCode::Pair> pairs;
        for (const auto& e : fam.entries())
          pairs.push_back({to_borel_sigma(e.sigma), to_borel_sigma(neg(e.pi))});
        return BorelCode::levelN(f.stored_level(), BorelCode::FamilyN::finite(std::move(pairs)));
      }
      return BorelCode::levelN(f.stored_level(),
                               BorelCode::FamilyN::stream(std::make_shared<PairMapSource>(fam)));
    }
  }
}

NFormula from_borel_sigma(const BorelCode& b);

class CellFormulaSource final : public StreamSource<NFormula::Entry1> {
 public:
  explicit CellFormulaSource(BorelCode::Family1 base) : base_(std::move(base)) {}

  std::optional<NFormula::Entry1> at(Nat i, Budget& bd) const override {
    auto c = base_.at(i, bd);
    if (!c) return std::nullopt;
    NFormula::Entry1 e;
    if (c->empty()) e.push_back(n_top());
    for (Nat n : *c) e.push_back(n_d(n));
    return e;
  }

  std::string describe() const override { return "cellformulas(stream)"; }

 private:
  BorelCode::Family1 base_;
};

class PairFormulaSource final : public StreamSource<NFormula::EntryN> {
 public:
  explicit PairFormulaSource(BorelCode::FamilyN base) : base_(std::move(base)) {}

  std::optional<NFormula::EntryN> at(Nat i, Budget& bd) const override {
    auto p = base_.at(i, bd);
    if (!p) return std::nullopt;
    NFormula s = from_borel_sigma(p->left);
    NFormula q = neg(from_borel_sigma(p->right));
    int target = std::max(classify(s).level, classify(q).level);
    return NFormula::EntryN{lift_to(s, target), lift_to(q, target)};
  }

  std::string describe() const override { return "pairformulas(stream)"; }

 private:
  BorelCode::FamilyN base_;
};

NFormula from_borel_sigma(const BorelCode& b) {
  if (b.complement()) throw MalformedCode("nested complement");
  if (b.is_level1()) {
    const auto& fam = b.cells();
    if (fam.is_finite()) {
      std::vector<NFormula::Entry1> entries;
      for (const auto& c : fam.entries()) {
        NFormula::Entry1 e;
        if (c.empty()) e.push_back(n_top());
        for (Nat n : c) e.push_back(n_d(n));
        entries.push_back(std::move(e));
      }
      return NFormula::level1(Tag::Sigma, NFormula::Family1::finite(std::move(entries)));
    }
    return NFormula::level1(Tag::Sigma,
                            NFormula::Family1::stream(std::make_shared<CellFormulaSource>(fam)));
  }
  const auto& fam = b.pairs();
  if (fam.is_finite()) {
    std::vector<NFormula::EntryN> entries;
    for (const auto& p : fam.entries()) {
      NFormula s = from_borel_sigma(p.left);
      NFormula q = neg(from_borel_sigma(p.right));
      int target = std::max(classify(s).level, classify(q).level);
      entries.push_back({lift_to(s, target), lift_to(q, target)});
    }
    return NFormula::levelN(Tag::Sigma, b.level(), NFormula::FamilyN::finite(std::move(entries)));
  }
  return NFormula::levelN(Tag::Sigma, b.level(),
                          NFormula::FamilyN::stream(std::make_shared<PairFormulaSource>(fam)));
}

}  // namespace

BorelCode nformula_to_borel(const NFormula& f) {
  if (!f.valid()) throw MalformedFormula("empty formula");
  if (f.tag() == Tag::Pi) return to_borel_sigma(neg(f)).complemented();
  return to_borel_sigma(f);
}

NFormula borel_to_nformula(const BorelCode& b) {
  if (!b.valid()) throw MalformedCode("empty code");
  if (b.complement()) {
    BorelCode pos = b.complemented();
    return neg(from_borel_sigma(pos));
  }
  return from_borel_sigma(b);
}

namespace {

json borel_json(const BorelCode& b) {
  json j;
  j["level"] = b.level();
  j["complement"] = b.complement();
  if (b.is_level1()) {
    if (b.cells().is_finite()) {
      j["cells"] = json::array();
      for (const auto& c : b.cells().entries()) j["cells"].push_back(c);
    } else {
      j["cells"] = "gen:" + b.cells().source()->describe();
    }
  } else {
    if (b.pairs().is_finite()) {
      j["pairs"] = json::array();
      for (const auto& p : b.pairs().entries())
        j["pairs"].push_back(json::array({borel_json(p.left), borel_json(p.right)}));
    } else {
      j["pairs"] = "gen:" + b.pairs().source()->describe();
    }
  }
  return j;
}

BorelCode borel_parse(const json& j) {
  if (!j.is_object() || !j.contains("level")) throw MalformedCode("object with level expected");
  int level = j.at("level").get<int>();
  BorelCode b;
  if (level == 1) {
    if (!j.contains("cells") || !j.at("cells").is_array())
      throw MalformedCode("finite cell list expected");
    std::vector<BorelCode::Cell> cells;
    for (const auto& c : j.at("cells")) {
      BorelCode::Cell cell = c.get<std::vector<Nat>>();
      std::sort(cell.begin(), cell.end());
      cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
      cells.push_back(std::move(cell));
    }
    b = BorelCode::level1(BorelCode::Family1::finite(std::move(cells)));
  } else {
    if (!j.contains("pairs") || !j.at("pairs").is_array())
      throw MalformedCode("finite pair list expected");
    std::vector<BorelCode::Pair> pairs;
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw MalformedCode("pair expected");
      pairs.push_back({borel_parse(p[0]), borel_parse(p[1])});
    }
    b = BorelCode::levelN(level, BorelCode::FamilyN::finite(std::move(pairs)));
  }
  if (j.value("complement", false)) b = b.complemented();
  return b;
}

}  // namespace

std::string borel_to_json(const BorelCode& b) { return borel_json(b).dump(); }

BorelCode borel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedCode(e.what());
  }
  return borel_parse(j);
}

}  // namespace posinf
