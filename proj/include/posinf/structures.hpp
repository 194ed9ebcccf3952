#ifndef POSINF_STRUCTURES_HPP
#define POSINF_STRUCTURES_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "posinf/atoms.hpp"
#include "posinf/family.hpp"
#include "posinf/nformula.hpp"

namespace posinf {

// Catalog order-type expression: omega, omega_star, fin(m), tilde(S).
class OrderType {
 public:
  enum Kind { Omega, OmegaStar, Fin, Tilde };

  static OrderType omega() { return OrderType(Omega, 0, nullptr); }
  static OrderType omega_star() { return OrderType(OmegaStar, 0, nullptr); }
  static OrderType fin(int m);
  static OrderType tilde_of(const OrderType& inner);

  Kind kind() const { return kind_; }
  int fin_size() const { return size_; }
  const OrderType& inner() const;

  // Non-strict order on element codes; tilde elements decode by canonical
  // unpairing as (class, rank) and compare by class. Out-of-universe
  // elements of fin(m) are unrelated, even to themselves.
  bool leq(Nat a, Nat b) const;

  // For fin(m) the universe is {0..m-1}; identity and its complement only
  // hold inside it. Every other tag has universe omega.
  std::optional<Nat> universe_bound() const;

  std::string to_string() const;
  static OrderType parse(const std::string& text);

  bool operator==(const OrderType& o) const;

 private:
  OrderType(Kind k, int s, std::shared_ptr<const OrderType> in)
      : kind_(k), size_(s), inner_(std::move(in)) {}

  Kind kind_;
  int size_;
  std::shared_ptr<const OrderType> inner_;
};

// A countable tau-structure given by a decidable or enumerable presentation.
class StructurePresentation {
 public:
  enum class Kind { Table, Catalog, TildeOfTable, DiagramStream };

  using Relations = std::map<std::size_t, std::set<std::vector<int>>>;  // symbol -> tuples

  static StructurePresentation table(Vocabulary voc, int universe_size, Relations rels);
  static StructurePresentation catalog(const OrderType& tag);
  static StructurePresentation tilde_of_table(const StructurePresentation& base);
  static StructurePresentation diagram_stream(Vocabulary voc,
                                              std::shared_ptr<const StreamSource<Nat>> gen,
                                              std::string generator_name);

  Kind kind() const { return kind_; }
  const Vocabulary& vocabulary() const { return voc_; }
  const AtomCodec& codec() const { return *codec_; }

  // Table / fin-catalog universes are finite.
  std::optional<int> finite_size() const;

  const OrderType& catalog_tag() const;
  const Relations& relations() const;
  int table_size() const { return size_; }
  const std::string& generator_name() const { return gen_name_; }
  const std::shared_ptr<const StreamSource<Nat>>& diagram_generator() const { return gen_; }

  // Truth of a ground atom whose variable indices are element values read
  // under x_i -> i. Atoms mentioning out-of-universe elements are false.
  // Decidable presentations only.
  bool atom_true(const AtomicFormula& ground) const;

  bool decidable() const { return kind_ != Kind::DiagramStream; }

 private:
  StructurePresentation() : voc_(Vocabulary::linear_order()) {}

  Kind kind_ = Kind::Table;
  Vocabulary voc_;
  std::shared_ptr<const AtomCodec> codec_;
  int size_ = 0;  // Table / TildeOfTable base
  Relations rels_;
  std::shared_ptr<const OrderType> tag_;
  std::shared_ptr<const StreamSource<Nat>> gen_;
  std::string gen_name_;
};

// D_A(n): truth of the n-th atomic formula under x_i -> i.
bool diagram(const StructurePresentation& a, Nat n);

// Diagram prefix as a 0/1 string.
std::string diagram_bits(const StructurePresentation& a, Nat length);

// The tilde construction: each element becomes an infinite ~-class, the
// quotient by ~ (mutual leq) is isomorphic to the input order.
StructurePresentation tilde(const StructurePresentation& a);

// Substructure order on tables over a shared vocabulary and universe.
bool substructure_leq(const StructurePresentation& a, const StructurePresentation& b);

// Membership oracle for D_A; exact on decidable presentations, positive
// (True/Unknown) on diagram streams.
class DiagramOracle final : public PointOracle {
 public:
  explicit DiagramOracle(const StructurePresentation& a) : a_(a) {}
  Tri member(Nat n, Budget& b) const override;

 private:
  const StructurePresentation& a_;
  mutable std::set<Nat> seen_;
  mutable Nat next_pos_ = 0;
};

// Deterministic enumerator of the true atom indices of a decidable
// presentation, usable as a DiagramStream generator.
std::shared_ptr<const StreamSource<Nat>> catalog_diagram_generator(const OrderType& tag);

// Helpers for the finite linear-order grid: the table on {0..k-1} whose
// order lists `ranking` from least to greatest.
StructurePresentation linear_table(const std::vector<int>& ranking);

// JSON structure files.
std::string structure_to_json(const StructurePresentation& a);
StructurePresentation structure_from_json(const std::string& text);

// Accepts either a catalog tag ("tilde(omega_star)") or a JSON file body.
StructurePresentation structure_from_spec(const std::string& tag_or_json);

}  // namespace posinf

#endif
