#pragma once

// Shared vocabulary: exact integers, error types, and the edge alphabet.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace katsura {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Vertices are 1-based throughout the public interface.
using Vertex = int;

class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string const& what)
      : std::runtime_error(what), _kind(std::move(kind)) {}

  std::string const& kind() const noexcept { return _kind; }

 private:
  std::string _kind;
};

// Malformed shapes: dimension mismatches, vertex mismatches, foreign cycles.
struct StructuralError : Error {
  explicit StructuralError(std::string const& what)
      : Error("structural_error", what) {}
};

// Well-formed input outside an operation's domain.
struct DomainError : Error {
  explicit DomainError(std::string const& what) : Error("domain_error", what) {}
};

struct CompositionError : Error {
  explicit CompositionError(std::string const& what)
      : Error("composition_error", what) {}
};

// Condition (0) or sign violations in a matrix pair.
struct ValidationError : Error {
  explicit ValidationError(std::string const& what)
      : Error("validation_error", what) {}
};

// Syntactically valid text naming something that does not exist for the pair.
struct SemanticError : Error {
  explicit SemanticError(std::string const& what)
      : Error("semantic_error", what) {}
};

struct UnrealizableWithSquareMatrices : Error {
  explicit UnrealizableWithSquareMatrices(std::string const& what)
      : Error("unrealizable_with_square_matrices", what) {}
};

struct InternalError : Error {
  explicit InternalError(std::string const& what)
      : Error("internal_error", what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, std::string excerpt)
      : Error("parse_error",
              "parse error at byte " + std::to_string(position) +
                  ": expected " + expected + " near '" + excerpt + "'"),
        _position(position),
        _expected(std::move(expected)),
        _excerpt(std::move(excerpt)) {}

  std::size_t position() const noexcept { return _position; }
  std::string const& expected() const noexcept { return _expected; }
  std::string const& excerpt() const noexcept { return _excerpt; }

 private:
  std::size_t _position;
  std::string _expected;
  std::string _excerpt;
};

// Floor division and the matching remainder; the divisor must be positive.
inline Integer floor_div(Integer const& n, Integer const& d) {
  Integer q = n / d;  // truncates toward zero
  if ((n % d != 0) && (n < 0)) {
    --q;
  }
  return q;
}

// Splits n = m + c*a with m in [1, a]. Returns {m, c}.
inline std::pair<Integer, Integer> reduce_offset(Integer const& n,
                                                 Integer const& a) {
  Integer c = floor_div(n - 1, a);
  return {n - c * a, c};
}

// An edge (i, j, n) of the graph E_A, or a letter of a path in X_A.
// Offsets are always in [1, A[i][j]] once an Edge exists.
struct Edge {
  Vertex        src = 0;
  Vertex        dst = 0;
  std::int64_t  offset = 0;

  friend auto operator<=>(Edge const&, Edge const&) = default;
};

inline std::string to_string(Edge const& e) {
  return "(" + std::to_string(e.src) + "," + std::to_string(e.dst) + "," +
         std::to_string(e.offset) + ")";
}

}  // namespace katsura
