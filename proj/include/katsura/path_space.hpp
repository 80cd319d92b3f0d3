#pragma once

// The path space X_A through finite prefixes and eventually periodic points,
// the partial action of S^{A,B} on it, fixed points, and germs.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "katsura/core.hpp"
#include "katsura/inverse_semigroup.hpp"
#include "katsura/matrix_core.hpp"

namespace katsura {

using FinitePath = PathWord;

// pre followed by per repeated forever. Construction canonicalizes: the
// period is made primitive, and trailing preperiod letters are rotated into
// it, so two presentations of one point compare equal.
class EventuallyPeriodicPath {
 public:
  EventuallyPeriodicPath() = default;

  EventuallyPeriodicPath(PathWord pre, PathWord per)
      : _pre(std::move(pre)), _per(std::move(per)) {
    if (_per.empty()) {
      throw StructuralError("the period of an eventually periodic path is "
                            "empty");
    }
    if (_per.source() != _pre.range() || _per.range() != _per.source()) {
      throw StructuralError("period " + to_string(_per)
                            + " is not a cycle at the end of "
                            + to_string(_pre));
    }
    canonicalize();
  }

  PathWord const& preperiod() const noexcept { return _pre; }
  PathWord const& period() const noexcept { return _per; }

  Vertex source() const noexcept { return _pre.source(); }

  Edge const& letter(std::size_t k) const {
    if (k < _pre.size()) {
      return _pre[k];
    }
    return _per[(k - _pre.size()) % _per.size()];
  }

  // x|_n
  PathWord prefix(std::size_t n) const {
    PathWord p(source());
    for (std::size_t k = 0; k < n; ++k) {
      p.push_back(letter(k));
    }
    return p;
  }

  // The point with its first n letters removed.
  EventuallyPeriodicPath drop(std::size_t n) const {
    if (n <= _pre.size()) {
      return {_pre.drop(n), _per};
    }
    std::size_t const shift = (n - _pre.size()) % _per.size();
    PathWord          rotated = _per.drop(shift).concat(_per.take(shift));
    return {PathWord(rotated.source()), rotated};
  }

  // Phase of position n: itself inside the preperiod, then cyclic.
  std::size_t phase(std::size_t n) const {
    if (n < _pre.size()) {
      return n;
    }
    return _pre.size() + (n - _pre.size()) % _per.size();
  }

  friend bool operator==(EventuallyPeriodicPath const&,
                         EventuallyPeriodicPath const&) = default;

 private:
  void canonicalize() {
    auto const& e = _per.edges();
    std::size_t const len = e.size();
    for (std::size_t d = 1; d < len; ++d) {
      if (len % d != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t k = d; k < len && periodic; ++k) {
        periodic = e[k] == e[k - d];
      }
      if (periodic) {
        _per = _per.take(d);
        break;
      }
    }
    while (!_pre.empty() && _pre.edges().back() == _per.edges().back()) {
      std::vector<Edge> rotated{_pre.edges().back()};
      rotated.insert(rotated.end(), _per.edges().begin(),
                     _per.edges().end() - 1);
      _per = PathWord::of(std::move(rotated));
      _pre = _pre.take(_pre.size() - 1);
    }
  }

  PathWord _pre;
  PathWord _per;
};

inline std::string to_string(EventuallyPeriodicPath const& x) {
  return to_string(x.preperiod()) + " ~ " + to_string(x.period());
}

inline void require_path(MatrixPair const& pair,
                         EventuallyPeriodicPath const& x) {
  require_path(pair, x.preperiod());
  require_path(pair, x.period());
}

////////////////////////////////////////////////////////////////////////
// The action
////////////////////////////////////////////////////////////////////////

struct ActZero {
  friend bool operator==(ActZero, ActZero) { return true; }
};
struct NeedLongerPrefix {
  friend bool operator==(NeedLongerPrefix, NeedLongerPrefix) { return true; }
};
struct ActResult {
  FinitePath prefix;
  Integer    residual;  // applies to any letters appended later
  friend bool operator==(ActResult const&, ActResult const&) = default;
};
using ActOutcome = std::variant<ActZero, NeedLongerPrefix, ActResult>;

inline ActOutcome act_on_prefix(MatrixPair const& pair, ISgElement const& s,
                                FinitePath const& gamma) {
  if (s.is_zero()) {
    return ActZero{};
  }
  PathWord const& j = s.right();
  if (gamma.starts_with(j)) {
    auto [tail, t] = push_unitary(pair, j.range(), s.exponent(),
                                  gamma.drop(j.size()));
    return ActResult{s.left().concat(tail), t};
  }
  if (j.starts_with(gamma)) {
    return NeedLongerPrefix{};
  }
  return ActZero{};
}

// s.x up to `depth` letters, or nullopt if x is outside the domain of s.
inline std::optional<FinitePath> act_on_periodic(
    MatrixPair const& pair, ISgElement const& s,
    EventuallyPeriodicPath const& x, std::size_t depth) {
  if (s.is_zero()) {
    return std::nullopt;
  }
  auto const out
      = act_on_prefix(pair, s, x.prefix(s.right().size() + depth));
  if (auto const* r = std::get_if<ActResult>(&out)) {
    return r->prefix.take(depth);
  }
  return std::nullopt;
}

// Whether x lies in the domain of s, that is in the cylinder of J.
inline bool in_domain(ISgElement const& s, EventuallyPeriodicPath const& x) {
  return !s.is_zero() && x.prefix(s.right().size()) == s.right();
}

// The exact image s.x as an eventually periodic point. The carry is tracked
// at period boundaries; nullopt if it does not cycle within `cap` periods or
// x is outside the domain.
// A period copy only sees the carry mod P = prod A over the period, and a
// shift of the carry by P shifts the next carry by Q = prod B. So when P | Q
// the residue mod P is a complete state even if the carry itself grows.
inline std::optional<EventuallyPeriodicPath>
image_point(MatrixPair const& pair, ISgElement const& s,
            EventuallyPeriodicPath const& x, std::size_t cap = 256) {
  if (!in_domain(s, x)) {
    return std::nullopt;
  }
  auto const rest = x.drop(s.right().size());
  auto [head, t]  = push_unitary(pair, rest.source(), s.exponent(),
                                 rest.preperiod());
  PathWord const&           per = rest.period();
  Integer                   p = 1;
  Integer                   q = 1;
  for (auto const& e : per.edges()) {
    p *= pair.a(e.src, e.dst);
    q *= pair.b(e.src, e.dst);
  }
  bool const residues = q % p == 0;
  std::map<Integer, std::size_t> seen;
  std::vector<PathWord>     copies;
  for (std::size_t k = 0; k <= cap; ++k) {
    Integer const key = residues ? t - floor_div(t, p) * p : t;
    auto const    it = seen.find(key);
    if (it != seen.end()) {
      PathWord pre = s.left().concat(head);
      for (std::size_t m = 0; m < it->second; ++m) {
        pre = pre.concat(copies[m]);
      }
      PathWord cyc = copies[it->second];
      for (std::size_t m = it->second + 1; m < copies.size(); ++m) {
        cyc = cyc.concat(copies[m]);
      }
      return EventuallyPeriodicPath(pre, cyc);
    }
    seen.emplace(key, k);
    auto [copy, next] = push_unitary(pair, per.source(), t, per);
    copies.push_back(std::move(copy));
    t = std::move(next);
  }
  return std::nullopt;
}

////////////////////////////////////////////////////////////////////////
// Fixed points
////////////////////////////////////////////////////////////////////////

// The fixed point of s = s_I u^a s_J^*, to `depth` letters. nullopt when s
// fixes nothing. Throws DomainError for idempotents (every point of the
// cylinder is fixed) and for I = J, where the fixed set is not one point.
inline std::optional<FinitePath>
generate_fixed_point(MatrixPair const& pair, ISgElement const& s,
                     std::size_t depth) {
  if (is_idempotent(s)) {
    throw DomainError("idempotents fix every point of their domain");
  }
  PathWord const& i = s.left();
  PathWord const& j = s.right();
  if (i == j) {
    throw DomainError("s_I u^t s_I^* fixes exactly the points of the "
                      "cylinder of I fixed by u^t, not a single point");
  }
  PathWord head(i.source());
  PathWord cycle(i.source());
  Integer  t;
  if (i.starts_with(j)) {
    head  = j;
    cycle = i.drop(j.size());
    t     = s.exponent();
  } else if (j.starts_with(i)) {
    head = j;
    std::tie(cycle, t)
        = push_unitary(pair, i.range(), -s.exponent(), j.drop(i.size()));
  } else {
    return std::nullopt;
  }
  FinitePath omega = head.take(std::min(head.size(), depth));
  while (omega.size() < depth) {
    for (std::size_t k = 0; k < cycle.size() && omega.size() < depth; ++k) {
      omega.push_back(cycle[k]);
    }
    std::tie(cycle, t) = push_unitary(pair, cycle.source(), t, cycle);
  }
  return omega;
}

struct FixedPointTrace {
  std::vector<Rational> kseq;   // K_0 .. K_{p+q}
  Rational              ratio;  // product of B/A over one period
};

inline FixedPointTrace fixed_point_trace(MatrixPair const& pair,
                                         Integer const& l,
                                         EventuallyPeriodicPath const& x) {
  FixedPointTrace tr;
  tr.kseq.emplace_back(l);
  std::size_t const n = x.preperiod().size() + x.period().size();
  for (std::size_t k = 0; k < n; ++k) {
    Edge const& e = x.letter(k);
    tr.kseq.push_back(tr.kseq.back() * Rational(pair.b(e.src, e.dst))
                      / Rational(pair.a(e.src, e.dst)));
  }
  tr.ratio = 1;
  for (auto const& e : x.period().edges()) {
    tr.ratio *= Rational(pair.b(e.src, e.dst)) / Rational(pair.a(e.src, e.dst));
  }
  return tr;
}

// Whether u_i^l fixes x: every K_j is an integer.
inline bool is_fixed_by_unitary(MatrixPair const& pair, Vertex i,
                                Integer const& l,
                                EventuallyPeriodicPath const& x) {
  if (x.source() != i) {
    throw StructuralError("path starts at " + std::to_string(x.source())
                          + ", not at " + std::to_string(i));
  }
  if (l == 0) {
    return true;
  }
  auto const tr = fixed_point_trace(pair, l, x);
  for (std::size_t k = 1; k < tr.kseq.size(); ++k) {
    if (denominator(tr.kseq[k]) != 1) {
      return false;
    }
    if (tr.kseq[k] == 0) {
      return true;
    }
  }
  return denominator(tr.ratio) == 1;
}

enum class Tri { yes, no, unknown };

inline char const* to_string(Tri v) {
  switch (v) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
  }
}

struct FixedCylinder {
  Tri        value = Tri::unknown;
  FinitePath witness;  // meaningful for yes: u_i^l fixes its whole cylinder
};

// Searches for a cylinder W inside X_{q_i} with u_i^l fixing W pointwise.
// States are (vertex, K) with K integral; only integral moves are followed.
inline FixedCylinder has_fixed_cylinder(MatrixPair const& pair, Vertex i,
                                        Integer const& l,
                                        std::size_t    cap = 64) {
  if (l == 0) {
    throw DomainError("has_fixed_cylinder needs l != 0");
  }
  if (!pair.has_vertex(i)) {
    throw StructuralError("vertex " + std::to_string(i) + " out of range");
  }
  int const  n = pair.size();
  auto const reach = detail::reach_closure(pair);

  // Arcs from v whose ratio B/A keeps every integer K integral.
  std::vector<bool> divisible_from(n + 1, true);
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex w = 1; w <= n; ++w) {
      if (!detail::reachable_or_equal(reach, v, w)) {
        continue;
      }
      for (Vertex z : pair.successors(w)) {
        if (pair.b(w, z) % pair.a(w, z) != 0) {
          divisible_from[v] = false;
        }
      }
    }
  }

  using State = std::pair<Vertex, Integer>;
  struct Node {
    State              state;
    std::size_t        parent;
    Edge               via;
    std::vector<std::size_t> next;
    bool               failing = false;  // some move leaves the integers
    bool               expanded = false;
  };
  std::vector<Node>             nodes;
  std::map<State, std::size_t>  index;
  std::deque<std::size_t>       todo;

  auto const witness = [&](std::size_t k) {
    std::vector<Edge> edges;
    while (k != 0) {
      edges.push_back(nodes[k].via);
      k = nodes[k].parent;
    }
    std::reverse(edges.begin(), edges.end());
    return PathWord(i, std::move(edges));
  };

  nodes.push_back({{i, l}, 0, {}, {}, false, false});
  index.emplace(nodes[0].state, 0);
  todo.push_back(0);
  bool closed = true;
  while (!todo.empty()) {
    std::size_t const k = todo.front();
    todo.pop_front();
    auto const [v, kv] = nodes[k].state;
    if (kv == 0 || divisible_from[v]) {
      return {Tri::yes, witness(k)};
    }
    if (nodes.size() > cap) {
      closed = false;
      break;
    }
    nodes[k].expanded = true;
    for (Vertex w : pair.successors(v)) {
      Integer const num = kv * pair.b(v, w);
      if (num % pair.a(v, w) != 0) {
        nodes[k].failing = true;
        continue;
      }
      State next{w, num / pair.a(v, w)};
      auto  it = index.find(next);
      if (it == index.end()) {
        it = index.emplace(next, nodes.size()).first;
        nodes.push_back({next, k, Edge{v, w, 1}, {}, false, false});
        if (next.second == 0 || divisible_from[w]) {
          return {Tri::yes, witness(it->second)};
        }
        todo.push_back(it->second);
      }
      nodes[k].next.push_back(it->second);
    }
  }

  // A state is safe when nothing reachable from it fails. Unexpanded states
  // are undetermined.
  enum { safe = 0, undetermined = 1, fails = 2 };
  std::vector<int> status(nodes.size(), safe);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    status[k] = nodes[k].failing ? fails
                                 : (nodes[k].expanded ? safe : undetermined);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      for (std::size_t m : nodes[k].next) {
        if (status[m] > status[k]) {
          status[k] = status[m];
          changed = true;
        }
      }
    }
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (status[k] == safe) {
      return {Tri::yes, witness(k)};
    }
  }
  if (closed && std::all_of(status.begin(), status.end(),
                            [](int v) { return v == fails; })) {
    return {Tri::no, PathWord(i)};
  }
  return {Tri::unknown, PathWord(i)};
}

////////////////////////////////////////////////////////////////////////
// Germs
////////////////////////////////////////////////////////////////////////

struct Germ {
  ISgElement             s;
  EventuallyPeriodicPath x;

  friend bool operator==(Germ const&, Germ const&) = default;
};

inline Germ make_germ(ISgElement s, EventuallyPeriodicPath x) {
  if (!in_domain(s, x)) {
    throw DomainError("the point " + to_string(x)
                      + " is not in the domain of " + to_string(s));
  }
  return {std::move(s), std::move(x)};
}

enum class GermEq { equal, not_equal, unknown };

inline char const* to_string(GermEq v) {
  switch (v) {
    case GermEq::equal: return "equal";
    case GermEq::not_equal: return "not_equal";
    default: return "unknown";
  }
}

// Decides [s,x] = [t,x] by looking for n with s.p_{x|n} = t.p_{x|n}.
inline GermEq germ_equal(MatrixPair const& pair, ISgElement const& s,
                         ISgElement const& t, EventuallyPeriodicPath const& x,
                         std::size_t cap = 32) {
  if (!in_domain(s, x) || !in_domain(t, x)) {
    throw DomainError("the point " + to_string(x)
                      + " is not in the domain of both elements");
  }
  auto const shift = [](ISgElement const& e) {
    return static_cast<long long>(e.left().size())
           - static_cast<long long>(e.right().size());
  };
  if (shift(s) != shift(t)) {
    return GermEq::not_equal;
  }
  std::size_t const start = std::max(s.right().size(), t.right().size());
  std::set<std::tuple<std::size_t, Integer, Integer>> seen;
  for (std::size_t n = 0; n <= start + cap; ++n) {
    PathWord const   gamma = x.prefix(n);
    ISgElement const p = ISgElement::triple(pair, gamma, 0, gamma);
    ISgElement const sp = multiply(pair, s, p);
    ISgElement const tp = multiply(pair, t, p);
    if (sp == tp) {
      return GermEq::equal;
    }
    if (n < start) {
      continue;
    }
    // Past the domains the left words only grow, so a mismatch is final.
    if (sp.left() != tp.left()) {
      return GermEq::not_equal;
    }
    auto const state = std::make_tuple(x.phase(n), sp.exponent(),
                                       tp.exponent());
    if (!seen.insert(state).second) {
      return GermEq::not_equal;
    }
  }
  return GermEq::unknown;
}

// [s,x].[t,y] = [st,y] when x = t.y.
inline Germ germ_compose(MatrixPair const& pair, Germ const& g1,
                         Germ const& g2) {
  auto const image = image_point(pair, g2.s, g2.x);
  if (!image) {
    throw DomainError("cannot represent " + to_string(g2.s) + " applied to "
                      + to_string(g2.x) + " exactly");
  }
  if (!(*image == g1.x)) {
    throw DomainError("germs are not composable: " + to_string(*image)
                      + " differs from " + to_string(g1.x));
  }
  return make_germ(multiply(pair, g1.s, g2.s), g2.x);
}

// [s,x]^{-1} = [s*, s.x]
inline Germ germ_inverse(MatrixPair const& pair, Germ const& g) {
  auto const image = image_point(pair, g.s, g.x);
  if (!image) {
    throw DomainError("cannot represent " + to_string(g.s) + " applied to "
                      + to_string(g.x) + " exactly");
  }
  return make_germ(star(pair, g.s), *image);
}

inline EventuallyPeriodicPath germ_source(Germ const& g) { return g.x; }

inline EventuallyPeriodicPath germ_range(MatrixPair const& pair,
                                         Germ const&       g) {
  auto const image = image_point(pair, g.s, g.x);
  if (!image) {
    throw DomainError("cannot represent the range of the germ exactly");
  }
  return *image;
}

}  // namespace katsura
