#pragma once

// Text syntax for matrix files, elements, paths and groups.
//
//   matrix file   {"N": 2, "A": [[2,1],[1,2]], "B": [[1,1],[1,1]]}
//   Lambda        h(1)^3   g(1,1,3).g(1,2,1)
//   S^{A,B}       s(1,1,1).u(1)^2.s(1,2,1)*   (q(1).s(1,1,2))*   0
//   paths         [(1,1,1), (1,2,1)]   []@2   [(2,1,1)] ~ [(1,1,1)]
//   groups        Z^2 + Z/2 + Z/6   0

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "katsura/core.hpp"
#include "katsura/inverse_semigroup.hpp"
#include "katsura/ktheory.hpp"
#include "katsura/matrix_core.hpp"
#include "katsura/path_space.hpp"
#include "katsura/semigroupoid.hpp"

namespace katsura {

////////////////////////////////////////////////////////////////////////
// Matrix files
////////////////////////////////////////////////////////////////////////

// Parses and checks shapes. Condition (0) is checked only when `check` is set,
// so that `validate` can list every violation itself.
inline MatrixPair parse_matrix_json(std::string const& text,
                                    bool               check = true) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    std::size_t const pos = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError(pos, "valid JSON", text.substr(pos, 16));
  }
  auto const excerpt = text.substr(0, 16);
  if (!doc.is_object()) {
    throw ParseError(0, "a JSON object with keys N, A, B", excerpt);
  }
  for (char const* key : {"N", "A", "B"}) {
    if (!doc.contains(key)) {
      throw ParseError(0, std::string("key \"") + key + "\"", excerpt);
    }
  }
  if (!doc["N"].is_number_integer()) {
    throw ParseError(0, "N to be an integer", excerpt);
  }
  auto const read = [&](char const* key) {
    auto const& m = doc[key];
    if (!m.is_array()) {
      throw ParseError(0, std::string(key) + " to be an array of rows",
                       excerpt);
    }
    IntMatrix out;
    for (auto const& row : m) {
      if (!row.is_array()) {
        throw ParseError(0, std::string(key) + " rows to be arrays", excerpt);
      }
      std::vector<std::int64_t> r;
      for (auto const& x : row) {
        if (!x.is_number_integer()) {
          throw ParseError(0, std::string(key) + " entries to be integers",
                           excerpt);
        }
        r.push_back(x.get<std::int64_t>());
      }
      out.push_back(std::move(r));
    }
    return out;
  };
  MatrixPair pair(doc["N"].get<int>(), read("A"), read("B"));
  if (check) {
    require_valid(pair);
  }
  return pair;
}

inline std::string to_json_text(MatrixPair const& pair) {
  nlohmann::json doc;
  doc["N"] = pair.size();
  doc["A"] = pair.a_matrix();
  doc["B"] = pair.b_matrix();
  return doc.dump();
}

////////////////////////////////////////////////////////////////////////
// A small cursor over expression text
////////////////////////////////////////////////////////////////////////

namespace detail {

  class Cursor {
   public:
    explicit Cursor(std::string_view text) : _text(text) {}

    void skip_space() {
      while (_pos < _text.size()
             && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
        ++_pos;
      }
    }

    bool at_end() {
      skip_space();
      return _pos == _text.size();
    }

    char peek() {
      skip_space();
      return _pos < _text.size() ? _text[_pos] : '\0';
    }

    bool accept(char c) {
      if (peek() == c) {
        ++_pos;
        return true;
      }
      return false;
    }

    void expect(char c) {
      if (!accept(c)) {
        fail(std::string("'") + c + "'");
      }
    }

    Integer integer() {
      skip_space();
      std::size_t const start = _pos;
      if (_pos < _text.size() && (_text[_pos] == '-' || _text[_pos] == '+')) {
        ++_pos;
      }
      std::size_t const digits = _pos;
      while (_pos < _text.size()
             && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
        ++_pos;
      }
      if (_pos == digits) {
        _pos = start;
        fail("an integer");
      }
      return Integer(std::string(_text.substr(start, _pos - start)));
    }

    int small_integer() {
      std::size_t const start = position();
      Integer const     x = integer();
      if (x > 1'000'000'000 || x < -1'000'000'000) {
        _pos = start;
        fail("an integer of moderate size");
      }
      return static_cast<int>(x);
    }

    std::size_t position() {
      skip_space();
      return _pos;
    }

    [[noreturn]] void fail(std::string const& expected) {
      skip_space();
      throw ParseError(_pos, expected, std::string(_text.substr(_pos, 16)));
    }

    void finish() {
      if (!at_end()) {
        fail("end of input");
      }
    }

   private:
    std::string_view _text;
    std::size_t      _pos = 0;
  };

  inline void check_vertex(MatrixPair const& pair, Integer const& v) {
    if (v < 1 || v > pair.size()) {
      throw SemanticError("vertex " + v.str() + " out of range");
    }
  }

  inline void check_arc(MatrixPair const& pair, std::string const& atom,
                        Vertex i, Vertex j) {
    if (!pair.in_support(i, j)) {
      throw SemanticError(atom + " names no edge: A[" + std::to_string(i)
                          + "][" + std::to_string(j) + "]=0");
    }
  }

}  // namespace detail

////////////////////////////////////////////////////////////////////////
// Elements
////////////////////////////////////////////////////////////////////////

enum class Grammar { semigroupoid, inverse_semigroup };

// Lambda elements start with h or g, S^{A,B} elements with s, u, q, 0 or (.
inline Grammar detect_grammar(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(') {
      continue;
    }
    return c == 'h' || c == 'g' ? Grammar::semigroupoid
                                : Grammar::inverse_semigroup;
  }
  return Grammar::inverse_semigroup;
}

// Parses a Lambda word without normalizing it.
inline RawWord parse_raw_word(std::string_view text, MatrixPair const& pair) {
  detail::Cursor c(text);
  RawWord        w;
  do {
    std::size_t const at = c.position();
    char const        head = c.peek();
    if (head != 'h' && head != 'g') {
      c.fail("h(...) or g(...)");
    }
    c.accept(head);
    c.expect('(');
    Integer const i = c.integer();
    if (head == 'h') {
      c.expect(')');
      detail::check_vertex(pair, i);
      Integer t = 1;
      if (c.accept('^')) {
        std::size_t const tp = c.position();
        t = c.integer();
        if (t < 1) {
          throw ParseError(tp, "a positive exponent",
                           std::string(text.substr(tp, 16)));
        }
      }
      w.push_back(RawAtom::h(static_cast<Vertex>(i), t));
    } else {
      c.expect(',');
      Integer const j = c.integer();
      c.expect(',');
      Integer const n = c.integer();
      c.expect(')');
      detail::check_vertex(pair, i);
      detail::check_vertex(pair, j);
      std::string const atom = std::string(text.substr(at, c.position() - at));
      detail::check_arc(pair, atom, static_cast<Vertex>(i),
                        static_cast<Vertex>(j));
      w.push_back(RawAtom::g(static_cast<Vertex>(i), static_cast<Vertex>(j),
                             n));
    }
  } while (c.accept('.'));
  c.finish();
  return w;
}

inline SgpElement parse_sgp_element(std::string_view text,
                                    MatrixPair const& pair) {
  return standard_form(pair, parse_raw_word(text, pair));
}

namespace detail {

  inline ISgElement parse_isg_product(Cursor& c, std::string_view text,
                                      MatrixPair const& pair);

  inline ISgElement parse_isg_factor(Cursor& c, std::string_view text,
                                     MatrixPair const& pair) {
    std::size_t const at = c.position();
    char const        head = c.peek();
    ISgElement        x;
    bool              is_u = false;
    if (c.accept('(')) {
      x = parse_isg_product(c, text, pair);
      c.expect(')');
    } else if (c.accept('0')) {
      x = ISgElement::zero();
    } else if (head == 's') {
      c.accept('s');
      c.expect('(');
      Integer const i = c.integer();
      c.expect(',');
      Integer const j = c.integer();
      c.expect(',');
      Integer const n = c.integer();
      c.expect(')');
      check_vertex(pair, i);
      check_vertex(pair, j);
      check_arc(pair, std::string(text.substr(at, c.position() - at)),
                static_cast<Vertex>(i), static_cast<Vertex>(j));
      x = ISgElement::s(pair, static_cast<Vertex>(i), static_cast<Vertex>(j),
                        n);
    } else if (head == 'u' || head == 'q') {
      c.accept(head);
      c.expect('(');
      Integer const v = c.integer();
      c.expect(')');
      check_vertex(pair, v);
      is_u = head == 'u';
      x = is_u ? ISgElement::u(pair, static_cast<Vertex>(v))
               : ISgElement::q(pair, static_cast<Vertex>(v));
      if (is_u && c.peek() == '^') {
        c.accept('^');
        Integer const t = c.integer();
        x = ISgElement::u(pair, static_cast<Vertex>(v), t);
      }
    } else {
      c.fail("s(...), u(...), q(...), 0 or (");
    }
    while (c.accept('*')) {
      x = star(pair, x);
    }
    return x;
  }

  inline ISgElement parse_isg_product(Cursor& c, std::string_view text,
                                      MatrixPair const& pair) {
    ISgElement x = parse_isg_factor(c, text, pair);
    while (c.accept('.')) {
      x = multiply(pair, x, parse_isg_factor(c, text, pair));
    }
    return x;
  }

}  // namespace detail

inline ISgElement parse_isg_element(std::string_view  text,
                                    MatrixPair const& pair) {
  detail::Cursor c(text);
  ISgElement     x = detail::parse_isg_product(c, text, pair);
  c.finish();
  return x;
}

using Element = std::variant<SgpElement, ISgElement>;

inline Element parse_element(std::string_view text, MatrixPair const& pair) {
  if (detect_grammar(text) == Grammar::semigroupoid) {
    return parse_sgp_element(text, pair);
  }
  return parse_isg_element(text, pair);
}

inline std::string to_string(Element const& e) {
  return std::visit([](auto const& x) { return to_string(x); }, e);
}

////////////////////////////////////////////////////////////////////////
// Paths
////////////////////////////////////////////////////////////////////////

namespace detail {

  // `[ (i,j,n), ... ]`, optionally followed by `@v`. Returns the path; the
  // base vertex of an empty list without `@` is 0 and fixed by the caller.
  inline PathWord parse_path_word(Cursor& c, std::string_view text,
                                  MatrixPair const& pair) {
    c.expect('[');
    std::vector<Edge> edges;
    if (!c.accept(']')) {
      do {
        std::size_t const at = c.position();
        c.expect('(');
        Integer const i = c.integer();
        c.expect(',');
        Integer const j = c.integer();
        c.expect(',');
        Integer const n = c.integer();
        c.expect(')');
        check_vertex(pair, i);
        check_vertex(pair, j);
        std::string const atom(text.substr(at, c.position() - at));
        check_arc(pair, atom, static_cast<Vertex>(i), static_cast<Vertex>(j));
        if (n < 1 || n > pair.a(static_cast<Vertex>(i), static_cast<Vertex>(j))) {
          throw SemanticError("edge " + atom + " has offset outside [1, A["
                              + i.str() + "][" + j.str() + "]]");
        }
        Edge const e{static_cast<Vertex>(i), static_cast<Vertex>(j),
                     static_cast<std::int64_t>(n)};
        if (!edges.empty() && edges.back().dst != e.src) {
          throw SemanticError("path breaks between "
                              + to_string(edges.back()) + " and " + atom);
        }
        edges.push_back(e);
      } while (c.accept(','));
      c.expect(']');
    }
    Vertex base = edges.empty() ? 0 : edges.front().src;
    if (c.accept('@')) {
      Integer const v = c.integer();
      check_vertex(pair, v);
      if (!edges.empty() && base != static_cast<Vertex>(v)) {
        throw SemanticError("path starts at " + std::to_string(base)
                            + ", not at " + v.str());
      }
      base = static_cast<Vertex>(v);
    }
    return PathWord(base, std::move(edges));
  }

}  // namespace detail

using Point = std::variant<FinitePath, EventuallyPeriodicPath>;

inline Point parse_point(std::string_view text, MatrixPair const& pair) {
  detail::Cursor c(text);
  PathWord       pre = detail::parse_path_word(c, text, pair);
  if (!c.accept('~')) {
    c.finish();
    if (pre.source() == 0) {
      c.fail("'@v' after an empty path");
    }
    return pre;
  }
  std::size_t const at = c.position();
  PathWord          per = detail::parse_path_word(c, text, pair);
  c.finish();
  if (per.empty()) {
    throw ParseError(at, "a nonempty period", std::string(text.substr(at, 16)));
  }
  if (pre.source() == 0) {
    pre = PathWord(per.source());
  }
  if (pre.range() != per.source() || per.range() != per.source()) {
    throw SemanticError("period " + to_string(per)
                        + " is not a cycle at the end of " + to_string(pre));
  }
  return EventuallyPeriodicPath(pre, per);
}

inline FinitePath parse_finite_path(std::string_view  text,
                                    MatrixPair const& pair) {
  auto p = parse_point(text, pair);
  if (auto const* f = std::get_if<FinitePath>(&p)) {
    return *f;
  }
  throw SemanticError("expected a finite path, got an eventually periodic "
                      "one");
}

inline EventuallyPeriodicPath parse_periodic_path(std::string_view  text,
                                                  MatrixPair const& pair) {
  auto p = parse_point(text, pair);
  if (auto const* x = std::get_if<EventuallyPeriodicPath>(&p)) {
    return *x;
  }
  throw SemanticError("expected an eventually periodic path 'pre ~ per'");
}

////////////////////////////////////////////////////////////////////////
// Groups
////////////////////////////////////////////////////////////////////////

inline AbelianGroup parse_group(std::string_view text) {
  detail::Cursor       c(text);
  std::size_t          free_rank = 0;
  std::vector<Integer> orders;
  if (c.peek() == '0') {
    c.accept('0');
    c.finish();
    return {};
  }
  do {
    if (!c.accept('Z')) {
      c.fail("'Z', 'Z^r' or 'Z/d'");
    }
    if (c.accept('^')) {
      std::size_t const at = c.position();
      Integer const     r = c.integer();
      if (r < 0 || r > 1000) {
        throw ParseError(at, "a rank in [0, 1000]",
                         std::string(text.substr(at, 16)));
      }
      free_rank += static_cast<std::size_t>(r);
    } else if (c.accept('/')) {
      std::size_t const at = c.position();
      Integer const     d = c.integer();
      if (d < 0) {
        throw ParseError(at, "a nonnegative order",
                         std::string(text.substr(at, 16)));
      }
      orders.push_back(d);
    } else {
      ++free_rank;
    }
  } while (c.accept('+'));
  c.finish();
  return abelian_group(free_rank, orders);
}

}  // namespace katsura
