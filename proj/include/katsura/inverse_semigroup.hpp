#pragma once

// The inverse semigroup S^{A,B}: elements s_I u^t s_J^* and zero.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "katsura/core.hpp"
#include "katsura/matrix_core.hpp"

namespace katsura {

// A path of E_A with all offsets in range. The base vertex matters only when
// the path is empty.
class PathWord {
 public:
  PathWord() = default;
  explicit PathWord(Vertex base) : _base(base) {}
  PathWord(Vertex base, std::vector<Edge> edges)
      : _base(base), _edges(std::move(edges)) {
    if (!_edges.empty() && _edges.front().src != _base) {
      throw StructuralError("path starts at " + std::to_string(_edges.front().src)
                            + " but its base vertex is "
                            + std::to_string(_base));
    }
    for (std::size_t k = 1; k < _edges.size(); ++k) {
      if (_edges[k - 1].dst != _edges[k].src) {
        throw StructuralError("path breaks between edges "
                              + to_string(_edges[k - 1]) + " and "
                              + to_string(_edges[k]));
      }
    }
  }

  // Base vertex taken from the first edge.
  static PathWord of(std::vector<Edge> edges) {
    if (edges.empty()) {
      throw StructuralError("an empty path needs an explicit base vertex");
    }
    Vertex const v = edges.front().src;
    return PathWord(v, std::move(edges));
  }

  Vertex source() const noexcept { return _base; }
  Vertex range() const noexcept {
    return _edges.empty() ? _base : _edges.back().dst;
  }

  std::vector<Edge> const& edges() const noexcept { return _edges; }
  std::size_t size() const noexcept { return _edges.size(); }
  bool        empty() const noexcept { return _edges.empty(); }
  Edge const& operator[](std::size_t k) const { return _edges[k]; }

  // Whether this path begins with p (base vertices included).
  bool starts_with(PathWord const& p) const {
    if (p._base != _base || p.size() > size()) {
      return false;
    }
    return std::equal(p._edges.begin(), p._edges.end(), _edges.begin());
  }

  PathWord concat(PathWord const& p) const {
    if (p._base != range()) {
      throw StructuralError("cannot concatenate: range "
                            + std::to_string(range()) + " vs source "
                            + std::to_string(p._base));
    }
    PathWord out = *this;
    out._edges.insert(out._edges.end(), p._edges.begin(), p._edges.end());
    return out;
  }

  // The path with its first k edges removed.
  PathWord drop(std::size_t k) const {
    Vertex const v = k == 0 ? _base : _edges[k - 1].dst;
    return PathWord(
        v, std::vector<Edge>(_edges.begin() + static_cast<std::ptrdiff_t>(k),
                             _edges.end()));
  }

  PathWord take(std::size_t k) const {
    return PathWord(
        _base,
        std::vector<Edge>(_edges.begin(),
                          _edges.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  void push_back(Edge const& e) {
    if (e.src != range()) {
      throw StructuralError("edge " + to_string(e) + " does not continue at "
                            + std::to_string(range()));
    }
    _edges.push_back(e);
  }

  friend bool operator==(PathWord const&, PathWord const&) = default;
  friend auto operator<=>(PathWord const&, PathWord const&) = default;

 private:
  Vertex            _base = 0;
  std::vector<Edge> _edges;
};

inline std::string to_string(PathWord const& p) {
  if (p.empty()) {
    return "[]@" + std::to_string(p.source());
  }
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) {
    s += (k == 0 ? "" : ", ") + to_string(p[k]);
  }
  return s + "]";
}

inline void require_path(MatrixPair const& pair, PathWord const& p) {
  if (!pair.has_vertex(p.source())) {
    throw StructuralError("vertex " + std::to_string(p.source())
                          + " out of range");
  }
  for (auto const& e : p.edges()) {
    if (!pair.has_edge(e)) {
      throw StructuralError(to_string(e) + " is not an edge of E_A");
    }
  }
}

// Moves u_v^t rightwards past s_p: u_v^t s_p = s_{p'} u_{r(p)}^{t'}.
inline std::pair<PathWord, Integer> push_unitary(MatrixPair const& pair,
                                                 Vertex v, Integer t,
                                                 PathWord const& p) {
  if (p.source() != v) {
    throw StructuralError("push_unitary: path starts at "
                          + std::to_string(p.source()) + ", not at "
                          + std::to_string(v));
  }
  std::vector<Edge> out;
  out.reserve(p.size());
  for (auto const& e : p.edges()) {
    if (t == 0) {
      out.push_back(e);
      continue;
    }
    Integer const n = e.offset + t * pair.b(e.src, e.dst);
    auto [m, c] = reduce_offset(n, pair.a(e.src, e.dst));
    out.push_back({e.src, e.dst, static_cast<std::int64_t>(m)});
    t = std::move(c);
  }
  return {PathWord(v, std::move(out)), t};
}

// s_I u^t s_J^* with r(I) = r(J), or zero.
class ISgElement {
 public:
  ISgElement() = default;  // zero

  static ISgElement zero() { return ISgElement(); }

  // Normalizes the exponent; the pair is needed to recognize u_v = q_v.
  static ISgElement triple(MatrixPair const& pair, PathWord left, Integer t,
                           PathWord right) {
    require_path(pair, left);
    require_path(pair, right);
    if (left.range() != right.range()) {
      throw StructuralError("s_I u^t s_J^* needs r(I) = r(J), got "
                            + std::to_string(left.range()) + " and "
                            + std::to_string(right.range()));
    }
    ISgElement x;
    if (pair.b_row_is_zero(left.range())) {
      t = 0;
    }
    x._data = Data{std::move(left), std::move(t), std::move(right)};
    return x;
  }

  static ISgElement q(MatrixPair const& pair, Vertex v) {
    return triple(pair, PathWord(v), 0, PathWord(v));
  }

  static ISgElement u(MatrixPair const& pair, Vertex v, Integer t = 1) {
    return triple(pair, PathWord(v), std::move(t), PathWord(v));
  }

  // s_{i,j,n} for any integer n, reduced via s_{i,j,m+cA} = s_{i,j,m} u_j^c.
  static ISgElement s(MatrixPair const& pair, Vertex i, Vertex j,
                      Integer const& n) {
    if (!pair.has_vertex(i) || !pair.has_vertex(j) || !pair.in_support(i, j)) {
      throw StructuralError("s(" + std::to_string(i) + "," + std::to_string(j)
                            + ",n) is not a generator");
    }
    auto [m, c] = reduce_offset(n, pair.a(i, j));
    return triple(pair, PathWord(i, {{i, j, static_cast<std::int64_t>(m)}}),
                  c, PathWord(j));
  }

  bool is_zero() const noexcept { return !_data.has_value(); }

  PathWord const& left() const { return _data->left; }
  PathWord const& right() const { return _data->right; }
  Integer const&  exponent() const { return _data->t; }

  friend bool operator==(ISgElement const&, ISgElement const&) = default;
  friend bool operator<(ISgElement const& x, ISgElement const& y) {
    if (x.is_zero() || y.is_zero()) {
      return x.is_zero() && !y.is_zero();
    }
    return std::tie(x.left(), x.exponent(), x.right())
           < std::tie(y.left(), y.exponent(), y.right());
  }

 private:
  struct Data {
    PathWord left;
    Integer  t;
    PathWord right;
    friend bool operator==(Data const&, Data const&) = default;
  };
  std::optional<Data> _data;
};

inline ISgElement multiply(MatrixPair const& pair, ISgElement const& x,
                           ISgElement const& y) {
  if (x.is_zero() || y.is_zero()) {
    return ISgElement::zero();
  }
  PathWord const& j = x.right();
  PathWord const& k = y.left();
  if (k.starts_with(j)) {
    auto [k2, c] = push_unitary(pair, j.range(), x.exponent(), k.drop(j.size()));
    return ISgElement::triple(pair, x.left().concat(k2), c + y.exponent(),
                              y.right());
  }
  if (j.starts_with(k)) {
    auto [j2, c] = push_unitary(pair, k.range(), -y.exponent(), j.drop(k.size()));
    return ISgElement::triple(pair, x.left(), x.exponent() - c,
                              y.right().concat(j2));
  }
  return ISgElement::zero();
}

inline ISgElement star(MatrixPair const& pair, ISgElement const& x) {
  if (x.is_zero()) {
    return x;
  }
  return ISgElement::triple(pair, x.right(), -x.exponent(), x.left());
}

inline bool is_idempotent(ISgElement const& x) {
  return x.is_zero() || (x.exponent() == 0 && x.left() == x.right());
}

inline ISgElement range_projection(MatrixPair const& pair, ISgElement const& x) {
  return multiply(pair, x, star(pair, x));
}

inline ISgElement source_projection(MatrixPair const& pair,
                                    ISgElement const& x) {
  return multiply(pair, star(pair, x), x);
}

// Canonical text: s-atoms for I, then u(r)^t, then s(..)* for J reversed.
inline std::string to_string(ISgElement const& x) {
  if (x.is_zero()) {
    return "0";
  }
  auto const atom = [](Edge const& e) {
    return "s(" + std::to_string(e.src) + "," + std::to_string(e.dst) + ","
           + std::to_string(e.offset) + ")";
  };
  std::vector<std::string> parts;
  for (auto const& e : x.left().edges()) {
    parts.push_back(atom(e));
  }
  Vertex const r = x.left().range();
  if (x.exponent() != 0) {
    std::string u = "u(" + std::to_string(r) + ")";
    if (x.exponent() != 1) {
      u += "^" + x.exponent().str();
    }
    parts.push_back(u);
  }
  auto const& right = x.right().edges();
  for (auto it = right.rbegin(); it != right.rend(); ++it) {
    parts.push_back(atom(*it) + "*");
  }
  if (parts.empty()) {
    return "q(" + std::to_string(r) + ")";
  }
  std::string s = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    s += "." + parts[k];
  }
  return s;
}

}  // namespace katsura
