#ifndef POSINF_FAMILY_HPP
#define POSINF_FAMILY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "posinf/codes.hpp"
#include "posinf/errors.hpp"

namespace posinf {

// Element list a finite evaluation ranges over; covers collapse infinite
// families to finitely many entries that are equivalent over it.
struct CoverCtx {
  std::vector<int> elements;

  bool operator==(const CoverCtx&) const = default;
};

// A deterministic, restartable stream of family entries. at(i) is a pure
// function of i; enumeration twice with the same budget yields identical
// prefixes. cover(ctx) returns, when the source supports it, a finite list
// of entries equivalent to the whole family for evaluation over ctx's
// elements (the finite-universe collapse rule).
template <class E>
class StreamSource {
 public:
  virtual ~StreamSource() = default;

  // nullopt means the budget ran out, never "end of stream".
  virtual std::optional<E> at(Nat i, Budget& b) const = 0;

  virtual std::optional<std::vector<E>> cover(const CoverCtx& /*ctx*/) const {
    return std::nullopt;
  }

  // Structured description, printable as gen:<description> in the grammar.
  virtual std::string describe() const = 0;

  bool same(const StreamSource& o) const {
    return this == &o || describe() == o.describe();
  }
};

// Countable index family: either a materialized finite list or a registered
// deterministic generator. Value type with cheap copies.
template <class E>
class IndexedFamily {
 public:
  using SourcePtr = std::shared_ptr<const StreamSource<E>>;

  static IndexedFamily finite(std::vector<E> xs) {
    IndexedFamily f;
    f.entries_ = std::make_shared<const std::vector<E>>(std::move(xs));
    return f;
  }

  static IndexedFamily stream(SourcePtr src) {
    IndexedFamily f;
    f.source_ = std::move(src);
    return f;
  }

  bool is_finite() const { return entries_ != nullptr; }

  const std::vector<E>& entries() const {
    if (!entries_) throw InfiniteFamily("finite entries requested from a stream family");
    return *entries_;
  }

  const SourcePtr& source() const {
    if (!source_) throw Error("source requested from a finite family");
    return source_;
  }

  // Finite families enumerate for free and report end-of-family by nullopt;
  // stream steps charge the budget, and nullopt means the budget ran out.
  std::optional<E> at(Nat i, Budget& b) const {
    if (entries_) {
      if (i < entries_->size()) return (*entries_)[i];
      return std::nullopt;
    }
    if (!b.take()) return std::nullopt;
    return source_->at(i, b);
  }

  std::optional<std::vector<E>> cover(const CoverCtx& ctx) const {
    if (entries_) return *entries_;
    return source_->cover(ctx);
  }

  bool operator==(const IndexedFamily& o) const {
    if (is_finite() != o.is_finite()) return false;
    if (is_finite()) return *entries_ == *o.entries_;
    return source_->same(*o.source_);
  }

 private:
  std::shared_ptr<const std::vector<E>> entries_;
  SourcePtr source_;
};

// Entry-wise dual of a stream family; neg unwraps an existing DualSource so
// that double negation restores the original source object.
template <class E>
class DualSource final : public StreamSource<E> {
 public:
  explicit DualSource(std::shared_ptr<const StreamSource<E>> base) : base_(std::move(base)) {}

  const std::shared_ptr<const StreamSource<E>>& base() const { return base_; }

  std::optional<E> at(Nat i, Budget& b) const override {
    auto e = base_->at(i, b);
    if (!e) return std::nullopt;
    return entry_dual(*e);
  }

  std::optional<std::vector<E>> cover(const CoverCtx& ctx) const override {
    auto c = base_->cover(ctx);
    if (!c) return std::nullopt;
    std::vector<E> out;
    out.reserve(c->size());
    for (const auto& e : *c) out.push_back(entry_dual(e));
    return out;
  }

  std::string describe() const override { return "dual(" + base_->describe() + ")"; }

 private:
  std::shared_ptr<const StreamSource<E>> base_;
};

template <class E>
IndexedFamily<E> dual_family(const IndexedFamily<E>& f) {
  if (f.is_finite()) {
    std::vector<E> out;
    out.reserve(f.entries().size());
    for (const auto& e : f.entries()) out.push_back(entry_dual(e));
    return IndexedFamily<E>::finite(std::move(out));
  }
  if (auto d = dynamic_cast<const DualSource<E>*>(f.source().get()))
    return IndexedFamily<E>::stream(d->base());
  return IndexedFamily<E>::stream(std::make_shared<DualSource<E>>(f.source()));
}

}  // namespace posinf

#endif
