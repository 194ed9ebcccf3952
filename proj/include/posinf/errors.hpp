#ifndef POSINF_ERRORS_HPP
#define POSINF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace posinf {

// Base class for every domain error the workbench raises. The CLI maps
// these to exit code 1; anything else is a bug.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedFormula : Error {
  explicit MalformedFormula(const std::string& w) : Error("malformed formula: " + w) {}
};

struct MalformedCode : Error {
  explicit MalformedCode(const std::string& w) : Error("malformed Borel code: " + w) {}
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& w) : Error("unbound variable: " + w) {}
};

struct FreeVariable : Error {
  explicit FreeVariable(const std::string& w) : Error("free variable: " + w) {}
};

struct VocabularyMismatch : Error {
  explicit VocabularyMismatch(const std::string& w) : Error("vocabulary mismatch: " + w) {}
};

struct NotALinearOrder : Error {
  explicit NotALinearOrder(const std::string& w) : Error("not a linear order: " + w) {}
};

struct UndecidablePresentation : Error {
  explicit UndecidablePresentation(const std::string& w)
      : Error("undecidable presentation: " + w) {}
};

struct UnsupportedCatalog : Error {
  explicit UnsupportedCatalog(const std::string& w) : Error("unsupported catalog: " + w) {}
};

struct InfiniteUniverse : Error {
  explicit InfiniteUniverse(const std::string& w) : Error("infinite universe: " + w) {}
};

struct InfiniteFamily : Error {
  explicit InfiniteFamily(const std::string& w) : Error("infinite family: " + w) {}
};

struct UnsanitizedOperator : Error {
  explicit UnsanitizedOperator(const std::string& w) : Error("unsanitized operator: " + w) {}
};

struct NoMatch : Error {
  explicit NoMatch(const std::string& w) : Error("no match: " + w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("parse error: " + w) {}
};

}  // namespace posinf

#endif
