#pragma once

// The input datum (A, B), its support Omega_A, the edge graph E_A, and the
// purely graph-theoretic conditions on it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "katsura/core.hpp"

namespace katsura {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

class MatrixPair {
 public:
  MatrixPair() = default;

  // Throws StructuralError unless a and b are both n x n.
  MatrixPair(int n, IntMatrix a, IntMatrix b)
      : _n(n), _a(std::move(a)), _b(std::move(b)) {
    if (n < 1) {
      throw StructuralError("matrix size N must be positive, got " +
                            std::to_string(n));
    }
    check_square(_a, "A");
    check_square(_b, "B");
  }

  int size() const noexcept { return _n; }

  std::int64_t a(Vertex i, Vertex j) const { return _a[i - 1][j - 1]; }
  std::int64_t b(Vertex i, Vertex j) const { return _b[i - 1][j - 1]; }

  bool in_support(Vertex i, Vertex j) const { return a(i, j) > 0; }

  bool has_vertex(Vertex v) const noexcept { return v >= 1 && v <= _n; }

  bool has_edge(Edge const& e) const {
    return has_vertex(e.src) && has_vertex(e.dst) && in_support(e.src, e.dst)
           && e.offset >= 1 && e.offset <= a(e.src, e.dst);
  }

  // Omega_A(i), ascending.
  std::vector<Vertex> successors(Vertex i) const {
    std::vector<Vertex> out;
    for (Vertex j = 1; j <= _n; ++j) {
      if (in_support(i, j)) {
        out.push_back(j);
      }
    }
    return out;
  }

  // Every edge (i, j, n) of E_A leaving i, in lexicographic order.
  std::vector<Edge> out_edges(Vertex i) const {
    std::vector<Edge> out;
    for (Vertex j : successors(i)) {
      for (std::int64_t m = 1; m <= a(i, j); ++m) {
        out.push_back({i, j, m});
      }
    }
    return out;
  }

  bool b_row_is_zero(Vertex i) const {
    for (Vertex j = 1; j <= _n; ++j) {
      if (b(i, j) != 0) {
        return false;
      }
    }
    return true;
  }

  IntMatrix const& a_matrix() const noexcept { return _a; }
  IntMatrix const& b_matrix() const noexcept { return _b; }

  friend bool operator==(MatrixPair const&, MatrixPair const&) = default;

 private:
  void check_square(IntMatrix const& m, char const* name) const {
    if (static_cast<int>(m.size()) != _n) {
      throw StructuralError(std::string("matrix ") + name + " has "
                            + std::to_string(m.size()) + " rows, expected "
                            + std::to_string(_n));
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(m[r].size()) != _n) {
        throw StructuralError(std::string("row ") + std::to_string(r + 1)
                              + " of " + name + " has "
                              + std::to_string(m[r].size())
                              + " entries, expected " + std::to_string(_n));
      }
    }
  }

  int       _n = 0;
  IntMatrix _a;
  IntMatrix _b;
};

////////////////////////////////////////////////////////////////////////
// Validation
////////////////////////////////////////////////////////////////////////

struct Violation {
  enum class Kind { negative_a, zero_row, b_off_support };
  Kind        kind;
  Vertex      row;
  Vertex      col;  // 0 for zero_row
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

inline ValidationReport validate(MatrixPair const& pair) {
  ValidationReport report;
  int const        n = pair.size();
  auto const       cell = [](Vertex i, Vertex j) {
    return "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
  };
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = 1; j <= n; ++j) {
      if (pair.a(i, j) < 0) {
        report.violations.push_back({Violation::Kind::negative_a, i, j,
                                     "A" + cell(i, j) + " is negative"});
      }
    }
    bool positive = false;
    for (Vertex j = 1; j <= n; ++j) {
      positive = positive || pair.a(i, j) > 0;
    }
    if (!positive) {
      report.violations.push_back({Violation::Kind::zero_row, i, 0,
                                   "row " + std::to_string(i)
                                       + " of A is zero"});
    }
    for (Vertex j = 1; j <= n; ++j) {
      if (pair.a(i, j) <= 0 && pair.b(i, j) != 0) {
        report.violations.push_back(
            {Violation::Kind::b_off_support, i, j,
             "B" + cell(i, j) + "≠0 but A" + cell(i, j) + "=0"});
      }
    }
  }
  return report;
}

inline void require_valid(MatrixPair const& pair) {
  auto const report = validate(pair);
  if (!report.ok()) {
    std::string msg = "Condition (0) violated:";
    for (auto const& v : report.violations) {
      msg += " " + v.message + ";";
    }
    msg.pop_back();
    throw ValidationError(msg);
  }
}

////////////////////////////////////////////////////////////////////////
// The graph E_A
////////////////////////////////////////////////////////////////////////

struct GraphEA {
  int               vertex_count = 0;
  std::vector<Edge> edges;
};

inline GraphEA graph_ea(MatrixPair const& pair) {
  GraphEA g{pair.size(), {}};
  for (Vertex i = 1; i <= pair.size(); ++i) {
    auto out = pair.out_edges(i);
    g.edges.insert(g.edges.end(), out.begin(), out.end());
  }
  return g;
}

struct Cycle {
  std::vector<Edge> edges;

  Vertex base() const { return edges.front().src; }
  std::size_t length() const noexcept { return edges.size(); }

  friend auto operator<=>(Cycle const&, Cycle const&) = default;
};

namespace detail {

  // reach[i][j] iff there is a path of length >= 1 from i to j (0-based).
  inline std::vector<std::vector<bool>> reach_closure(MatrixPair const& pair) {
    int const n = pair.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (Vertex i = 1; i <= n; ++i) {
      for (Vertex j : pair.successors(i)) {
        r[i - 1][j - 1] = true;
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!r[i][k]) {
          continue;
        }
        for (int j = 0; j < n; ++j) {
          if (r[k][j]) {
            r[i][j] = true;
          }
        }
      }
    }
    return r;
  }

  // Vertex sequences of simple cycles whose least vertex comes first.
  inline std::vector<std::vector<Vertex>>
  simple_vertex_cycles(MatrixPair const& pair, std::size_t max_len) {
    std::vector<std::vector<Vertex>> result;
    std::vector<Vertex>              stack;
    std::vector<bool>                on_stack(pair.size() + 1, false);

    std::function<void(Vertex, Vertex)> extend = [&](Vertex start, Vertex v) {
      for (Vertex w : pair.successors(v)) {
        if (w == start) {
          result.push_back(stack);
        } else if (w > start && !on_stack[w] && stack.size() < max_len) {
          stack.push_back(w);
          on_stack[w] = true;
          extend(start, w);
          on_stack[w] = false;
          stack.pop_back();
        }
      }
    };
    for (Vertex s = 1; s <= pair.size(); ++s) {
      stack = {s};
      on_stack[s] = true;
      extend(s, s);
      on_stack[s] = false;
    }
    return result;
  }

  inline bool reachable_or_equal(std::vector<std::vector<bool>> const& reach,
                                 Vertex from, Vertex to) {
    return from == to || reach[from - 1][to - 1];
  }

}  // namespace detail

////////////////////////////////////////////////////////////////////////
// Conditions
////////////////////////////////////////////////////////////////////////

// B is nonzero on every supported position.
inline bool satisfies_condition_E(MatrixPair const& pair) {
  for (Vertex i = 1; i <= pair.size(); ++i) {
    for (Vertex j = 1; j <= pair.size(); ++j) {
      if (pair.in_support(i, j) && pair.b(i, j) == 0) {
        return false;
      }
    }
  }
  return true;
}

inline bool is_irreducible(MatrixPair const& pair) {
  auto const reach = detail::reach_closure(pair);
  for (auto const& row : reach) {
    if (std::find(row.begin(), row.end(), false) != row.end()) {
      return false;
    }
  }
  return true;
}

// Fails exactly when some vertex cycle runs through vertices that each have a
// single outgoing edge (one arc in Omega_A, with A = 1 on it).
inline bool satisfies_condition_L(MatrixPair const& pair) {
  int const  n = pair.size();
  auto const sole_successor = [&](Vertex v) -> Vertex {
    auto const succ = pair.successors(v);
    if (succ.size() == 1 && pair.a(v, succ.front()) == 1) {
      return succ.front();
    }
    return 0;
  };
  for (Vertex start = 1; start <= n; ++start) {
    Vertex v = start;
    for (int step = 0; step < n; ++step) {
      v = sole_successor(v);
      if (v == 0) {
        break;
      }
      if (v == start) {
        return false;
      }
    }
  }
  return true;
}

// Every vertex on a cycle is the base of at least two distinct first-return
// paths (counted as edge sequences, so parallel edges are distinct).
inline bool satisfies_condition_K(MatrixPair const& pair) {
  int const  n = pair.size();
  auto const reach = detail::reach_closure(pair);

  for (Vertex v = 1; v <= n; ++v) {
    if (!reach[v - 1][v - 1]) {
      continue;
    }
    // Vertices usable as interior points of a first-return path at v.
    std::vector<bool> useful(n + 1, false);
    for (Vertex w = 1; w <= n; ++w) {
      useful[w] = w != v && reach[v - 1][w - 1] && reach[w - 1][v - 1];
    }
    // A cycle among interior vertices yields infinitely many return paths.
    bool interior_cycle = false;
    for (Vertex w = 1; w <= n && !interior_cycle; ++w) {
      if (!useful[w]) {
        continue;
      }
      // w lies on a cycle avoiding v iff w reaches itself inside `useful`.
      std::vector<bool> seen(n + 1, false);
      std::vector<Vertex> todo{w};
      while (!todo.empty() && !interior_cycle) {
        Vertex x = todo.back();
        todo.pop_back();
        for (Vertex y : pair.successors(x)) {
          if (y == w) {
            interior_cycle = true;
            break;
          }
          if (useful[y] && !seen[y]) {
            seen[y] = true;
            todo.push_back(y);
          }
        }
      }
    }
    if (interior_cycle) {
      continue;
    }
    // Acyclic interior: count return paths with edge multiplicities, capped.
    std::vector<std::int64_t> memo(n + 1, -1);
    std::function<std::int64_t(Vertex)> paths_to_v = [&](Vertex x) {
      if (memo[x] >= 0) {
        return memo[x];
      }
      std::int64_t total = 0;
      for (Vertex y : pair.successors(x)) {
        std::int64_t const mult = std::min<std::int64_t>(pair.a(x, y), 2);
        if (y == v) {
          total += mult;
        } else if (useful[y]) {
          total += mult * paths_to_v(y);
        }
        total = std::min<std::int64_t>(total, 2);
      }
      return memo[x] = total;
    };
    std::int64_t total = 0;
    for (Vertex y : pair.successors(v)) {
      std::int64_t const mult = std::min<std::int64_t>(pair.a(v, y), 2);
      total += y == v ? mult : (useful[y] ? mult * paths_to_v(y) : 0);
      total = std::min<std::int64_t>(total, 2);
    }
    if (total < 2) {
      return false;
    }
  }
  return true;
}

// Vertex-simple cycles of E_A of length <= max_len, one per rotation class,
// each rotated to start at its least vertex (its lexicographically least
// rotation). Parallel edges give distinct cycles. Sorted.
inline std::vector<Cycle> enumerate_simple_cycles(MatrixPair const& pair,
                                                  std::size_t max_len) {
  if (max_len < 1) {
    throw DomainError("max_len must be at least 1");
  }
  std::vector<Cycle> result;
  for (auto const& vc : detail::simple_vertex_cycles(pair, max_len)) {
    std::vector<Cycle> partial{Cycle{}};
    for (std::size_t k = 0; k < vc.size(); ++k) {
      Vertex const       i = vc[k];
      Vertex const       j = vc[(k + 1) % vc.size()];
      std::vector<Cycle> next;
      for (auto const& c : partial) {
        for (std::int64_t m = 1; m <= pair.a(i, j); ++m) {
          Cycle d = c;
          d.edges.push_back({i, j, m});
          next.push_back(std::move(d));
        }
      }
      partial = std::move(next);
    }
    result.insert(result.end(), partial.begin(), partial.end());
  }
  std::sort(result.begin(), result.end());
  return result;
}

inline void require_cycle(MatrixPair const& pair, Cycle const& c) {
  if (c.edges.empty()) {
    throw StructuralError("a cycle needs at least one edge");
  }
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    Edge const& e = c.edges[k];
    if (!pair.has_edge(e)) {
      throw StructuralError("edge " + to_string(e) + " is not an edge of E_A");
    }
    if (e.dst != c.edges[(k + 1) % c.edges.size()].src) {
      throw StructuralError("cycle is not closed at edge " + to_string(e));
    }
  }
}

// No exit from the cycle begins a path that comes back to the cycle.
inline bool is_transitory(MatrixPair const& pair, Cycle const& c) {
  require_cycle(pair, c);
  auto const reach = detail::reach_closure(pair);

  std::vector<bool> on_cycle(pair.size() + 1, false);
  for (auto const& e : c.edges) {
    on_cycle[e.src] = true;
  }
  for (auto const& ce : c.edges) {
    for (auto const& e : pair.out_edges(ce.src)) {
      bool const is_cycle_edge
          = std::find(c.edges.begin(), c.edges.end(), e) != c.edges.end();
      if (is_cycle_edge) {
        continue;
      }
      for (Vertex w = 1; w <= pair.size(); ++w) {
        if (on_cycle[w] && detail::reachable_or_equal(reach, e.dst, w)) {
          return false;
        }
      }
    }
  }
  return true;
}

// Every finite path can be closed up into a cycle: whenever j is reachable
// from i, i is reachable from j.
inline bool every_path_extends_to_cycle(MatrixPair const& pair) {
  auto const reach = detail::reach_closure(pair);
  int const  n = pair.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (reach[i][j] && !reach[j][i]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace katsura
