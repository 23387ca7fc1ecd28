#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "covertorus/cover.hpp"
#include "covertorus/linear_set.hpp"
#include "covertorus/pqf.hpp"
#include "covertorus/torus.hpp"

namespace covertorus {

/// Byte range into the parsed text; line and column are 1-based and refer
/// to `offset`.
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  Span span;
};

/// `<source>:<line>:<col>: error: <message>`
std::string format_diagnostic(const Diagnostic& d, std::string_view source);

// Declarations. Spans are ignored by ==.
struct ConstDecl {
  std::string name;
  std::uint32_t index = 0;
  Span span;
  bool operator==(const ConstDecl& o) const { return name == o.name && index == o.index; }
};

struct TorusDecl {
  std::string name;
  TorusPresentation torus{1};
  Span span;
  bool operator==(const TorusDecl& o) const { return name == o.name && torus == o.torus; }
};

struct PointDecl {
  std::string name;
  CoverPoint value;
  Span span;
  bool operator==(const PointDecl& o) const { return name == o.name && value == o.value; }
};

struct TupleDecl {
  std::string name;
  PointTuple value;
  Span span;
  bool operator==(const TupleDecl& o) const { return name == o.name && value == o.value; }
};

struct LinearDecl {
  std::string name;
  LinearSet set{1};
  Span span;
  bool operator==(const LinearDecl& o) const { return name == o.name && set == o.set; }
};

/// One cell of the set `name`; cells sharing a name form a union.
struct CellDecl {
  std::string name;
  Integer m = 1;
  std::string linear;
  std::string torus;
  Span span;
  bool operator==(const CellDecl& o) const {
    return name == o.name && m == o.m && linear == o.linear && torus == o.torus;
  }
};

using Decl = std::variant<ConstDecl, TorusDecl, PointDecl, TupleDecl, LinearDecl, CellDecl>;

std::string_view decl_name(const Decl& d);
Span decl_span(const Decl& d);

/// Parsed input: declarations in source order plus the constant names they
/// introduced. Every name is declared before use.
class Document {
 public:
  const std::vector<Decl>& decls() const noexcept { return decls_; }
  const BasisRegistry& registry() const noexcept { return registry_; }
  BasisRegistry& registry() noexcept { return registry_; }

  bool has(std::string_view name) const;
  const TorusDecl* torus(std::string_view name) const;
  const LinearDecl* linear(std::string_view name) const;
  const PointDecl* point(std::string_view name) const;
  /// A tuple declaration, or a point read as a 1-tuple.
  std::optional<PointTuple> tuple(std::string_view name) const;
  /// Union of the cells called `name`.
  std::optional<PQFSet> set(std::string_view name) const;

  void add(Decl d);

  friend bool operator==(const Document& a, const Document& b) { return a.decls_ == b.decls_; }

 private:
  std::vector<Decl> decls_;
  BasisRegistry registry_;
};

struct ParseResult {
  std::optional<Document> document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const noexcept { return document.has_value(); }
};

/// Parses a whole input. Names from `context` are visible and its
/// declarations are kept in front of the new ones.
ParseResult parse(std::string_view text, const Document* context = nullptr);

std::string print(const Document& doc);

// Printers for single objects, in declaration syntax.
std::string print_monomial(const std::vector<Integer>& exponents);
std::string print_torus(std::string_view name, const TorusPresentation& t,
                        const BasisRegistry* names = nullptr);
std::string print_linear(std::string_view name, const LinearSet& l,
                         const BasisRegistry* names = nullptr);
std::string print_tuple(std::string_view name, const PointTuple& t,
                        const BasisRegistry* names = nullptr);
std::string print_point(std::string_view name, const CoverPoint& v,
                        const BasisRegistry* names = nullptr);

}  // namespace covertorus
