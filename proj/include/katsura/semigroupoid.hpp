#pragma once

// The semigroupoid Lambda_{A,B}: standard forms, composition, divisibility,
// least common multiples and finite partitions.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "katsura/core.hpp"
#include "katsura/matrix_core.hpp"

namespace katsura {

// A letter g_{i,j,n} of a g-word. The offset is unbounded before
// normalization and only the final letter of a standard form may leave
// [1, A[i][j]].
struct GLetter {
  Vertex  src = 0;
  Vertex  dst = 0;
  Integer offset;

  friend bool operator==(GLetter const&, GLetter const&) = default;
  friend bool operator<(GLetter const& x, GLetter const& y) {
    return std::tie(x.src, x.dst, x.offset) < std::tie(y.src, y.dst, y.offset);
  }
};

// Either h_i^t (word empty) or a nonempty g-word in standard form.
class SgpElement {
 public:
  SgpElement() = default;

  static SgpElement h(Vertex i, Integer t = 1) {
    if (t < 1) {
      throw DomainError("h-power exponent must be positive, got "
                        + t.str());
    }
    SgpElement x;
    x._vertex = i;
    x._exponent = std::move(t);
    return x;
  }

  // No normalization happens here; see standard_form.
  static SgpElement word(std::vector<GLetter> letters) {
    if (letters.empty()) {
      throw DomainError("a g-word needs at least one letter");
    }
    SgpElement x;
    x._letters = std::move(letters);
    return x;
  }

  bool is_h_power() const noexcept { return _letters.empty(); }

  Vertex         h_vertex() const noexcept { return _vertex; }
  Integer const& h_exponent() const noexcept { return _exponent; }

  std::vector<GLetter> const& letters() const noexcept { return _letters; }
  std::size_t length() const noexcept { return _letters.size(); }

  Vertex source() const {
    return is_h_power() ? _vertex : _letters.front().src;
  }
  Vertex range() const { return is_h_power() ? _vertex : _letters.back().dst; }

  friend bool operator==(SgpElement const&, SgpElement const&) = default;
  friend bool operator<(SgpElement const& x, SgpElement const& y) {
    return std::tie(x._letters, x._vertex, x._exponent)
           < std::tie(y._letters, y._vertex, y._exponent);
  }

 private:
  Vertex               _vertex = 0;
  Integer              _exponent = 0;
  std::vector<GLetter> _letters;
};

// One atom of a raw word: h(i)^t with t >= 1, or g(i,j,n) with any n.
struct RawAtom {
  enum class Kind { h, g };
  Kind    kind = Kind::h;
  Vertex  src = 0;
  Vertex  dst = 0;
  Integer value;  // exponent for h, offset for g

  static RawAtom h(Vertex i, Integer t = 1) {
    return {Kind::h, i, i, std::move(t)};
  }
  static RawAtom g(Vertex i, Vertex j, Integer n) {
    return {Kind::g, i, j, std::move(n)};
  }

  friend bool operator==(RawAtom const&, RawAtom const&) = default;
};

using RawWord = std::vector<RawAtom>;

inline std::string to_string(SgpElement const& x) {
  if (x.is_h_power()) {
    std::string s = "h(" + std::to_string(x.h_vertex()) + ")";
    if (x.h_exponent() != 1) {
      s += "^" + x.h_exponent().str();
    }
    return s;
  }
  std::string s;
  for (auto const& l : x.letters()) {
    if (!s.empty()) {
      s += ".";
    }
    s += "g(" + std::to_string(l.src) + "," + std::to_string(l.dst) + ","
         + l.offset.str() + ")";
  }
  return s;
}

namespace detail {

  inline void check_atom(MatrixPair const& pair, RawAtom const& a) {
    if (!pair.has_vertex(a.src) || !pair.has_vertex(a.dst)) {
      throw StructuralError("vertex out of range in atom");
    }
    if (a.kind == RawAtom::Kind::h && a.value < 1) {
      throw DomainError("h exponent must be positive, got " + a.value.str());
    }
    if (a.kind == RawAtom::Kind::g && !pair.in_support(a.src, a.dst)) {
      throw DomainError("g(" + std::to_string(a.src) + ","
                        + std::to_string(a.dst)
                        + ",n) is not a generator since A["
                        + std::to_string(a.src) + "]["
                        + std::to_string(a.dst) + "]=0");
    }
  }

  // Brings interior offsets into range, pushing carries rightwards.
  inline void sweep(MatrixPair const& pair, std::vector<GLetter>& w) {
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      auto [m, c] = reduce_offset(w[k].offset, pair.a(w[k].src, w[k].dst));
      w[k].offset = m;
      if (c != 0) {
        w[k + 1].offset += c * pair.b(w[k + 1].src, w[k + 1].dst);
      }
    }
  }

}  // namespace detail

inline SgpElement standard_form(MatrixPair const& pair, RawWord const& w) {
  if (w.empty()) {
    throw DomainError("empty word");
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    detail::check_atom(pair, w[k]);
    if (k > 0 && w[k - 1].dst != w[k].src) {
      throw CompositionError("atoms " + std::to_string(k) + " and "
                             + std::to_string(k + 1)
                             + " are not composable: range "
                             + std::to_string(w[k - 1].dst) + " vs source "
                             + std::to_string(w[k].src));
    }
  }

  std::vector<GLetter> letters;
  Integer              leading = 0;  // h exponents before the first g
  for (auto const& a : w) {
    if (a.kind == RawAtom::Kind::g) {
      letters.push_back({a.src, a.dst, a.value});
      if (letters.size() == 1 && leading != 0) {
        letters.back().offset += leading * pair.b(a.src, a.dst);
      }
    } else if (letters.empty()) {
      leading += a.value;
    } else {
      auto& last = letters.back();
      last.offset += a.value * pair.a(last.src, last.dst);
    }
  }
  if (letters.empty()) {
    return SgpElement::h(w.front().src, leading);
  }
  detail::sweep(pair, letters);
  return SgpElement::word(std::move(letters));
}

inline RawWord to_raw(SgpElement const& x) {
  if (x.is_h_power()) {
    return {RawAtom::h(x.h_vertex(), x.h_exponent())};
  }
  RawWord w;
  for (auto const& l : x.letters()) {
    w.push_back(RawAtom::g(l.src, l.dst, l.offset));
  }
  return w;
}

// Undefined (nullopt) unless the range of f is the source of g.
inline std::optional<SgpElement> compose(MatrixPair const& pair,
                                         SgpElement const& f,
                                         SgpElement const& g) {
  if (f.range() != g.source()) {
    return std::nullopt;
  }
  RawWord w = to_raw(f);
  RawWord rest = to_raw(g);
  w.insert(w.end(), rest.begin(), rest.end());
  return standard_form(pair, w);
}

namespace detail {

  inline bool same_edge(GLetter const& x, GLetter const& y) {
    return x.src == y.src && x.dst == y.dst;
  }

  // f shorter or equal in length to g; both g-words. Checks that the first
  // |f|-1 letters agree and the |f|-th lies on the same edge.
  inline bool prefix_shape(SgpElement const& f, SgpElement const& g) {
    auto const& a = f.letters();
    auto const& b = g.letters();
    if (a.size() > b.size()) {
      return false;
    }
    for (std::size_t k = 0; k + 1 < a.size(); ++k) {
      if (!(a[k] == b[k])) {
        return false;
      }
    }
    return same_edge(a.back(), b[a.size() - 1]);
  }

  inline Integer final_a(MatrixPair const& pair, SgpElement const& f) {
    auto const& l = f.letters().back();
    return pair.a(l.src, l.dst);
  }

}  // namespace detail

// f = g, or f composed with something equals g.
inline bool divides(MatrixPair const& pair, SgpElement const& f,
                    SgpElement const& g) {
  if (f.is_h_power()) {
    if (g.is_h_power()) {
      return f.h_vertex() == g.h_vertex() && g.h_exponent() >= f.h_exponent();
    }
    return g.source() == f.h_vertex();
  }
  if (g.is_h_power() || !detail::prefix_shape(f, g)) {
    return false;
  }
  Integer const  a = detail::final_a(pair, f);
  Integer const& n = f.letters().back().offset;
  Integer const& m = g.letters()[f.length() - 1].offset;
  Integer const  diff = m - n;
  if (diff % a != 0) {
    return false;
  }
  return f.length() < g.length() || diff >= 0;
}

inline bool intersects(MatrixPair const& pair, SgpElement const& f,
                       SgpElement const& g) {
  if (f.is_h_power() || g.is_h_power()) {
    return f.source() == g.source();
  }
  SgpElement const& s = f.length() <= g.length() ? f : g;
  SgpElement const& l = f.length() <= g.length() ? g : f;
  if (!detail::prefix_shape(s, l)) {
    return false;
  }
  Integer const diff
      = l.letters()[s.length() - 1].offset - s.letters().back().offset;
  return diff % detail::final_a(pair, s) == 0;
}

// The least common multiple, or nullopt when f and g do not intersect.
inline std::optional<SgpElement> lcm(MatrixPair const& pair,
                                     SgpElement const& f,
                                     SgpElement const& g) {
  if (!intersects(pair, f, g)) {
    return std::nullopt;
  }
  if (f.is_h_power() && g.is_h_power()) {
    return f.h_exponent() >= g.h_exponent() ? f : g;
  }
  if (f.is_h_power()) {
    return g;
  }
  if (g.is_h_power()) {
    return f;
  }
  if (f.length() != g.length()) {
    return f.length() > g.length() ? f : g;
  }
  return f.letters().back().offset >= g.letters().back().offset ? f : g;
}

// A finite family of pairwise disjoint elements starting at i, containing h,
// such that everything starting at i meets one of them.
inline std::vector<SgpElement> finite_partition(MatrixPair const& pair,
                                                Vertex            i,
                                                SgpElement const& h) {
  if (!pair.has_vertex(i) || h.source() != i) {
    throw DomainError(to_string(h) + " does not start at vertex "
                      + std::to_string(i));
  }
  if (h.is_h_power()) {
    return {SgpElement::h(i)};
  }
  std::vector<SgpElement> result;
  auto const&             w = h.letters();
  std::vector<GLetter>    prefix;
  for (std::size_t k = 0; k < w.size(); ++k) {
    Vertex const v = w[k].src;
    bool const   last = k + 1 == w.size();
    Integer      t = 0;
    if (last) {
      t = reduce_offset(w[k].offset, pair.a(w[k].src, w[k].dst)).second;
    }
    for (Vertex j : pair.successors(v)) {
      Integer const a = pair.a(v, j);
      for (Integer m = t * a + 1; m <= (t + 1) * a; ++m) {
        GLetter const letter{v, j, m};
        if (!last && letter == w[k]) {
          continue;
        }
        auto word = prefix;
        word.push_back(letter);
        result.push_back(SgpElement::word(std::move(word)));
      }
    }
    prefix.push_back(w[k]);
  }
  return result;
}

}  // namespace katsura
