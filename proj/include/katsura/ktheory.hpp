#pragma once

// Smith normal form over the integers, K-groups of O_{A,B}, and realization
// of prescribed K-groups by a matrix pair.

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "katsura/core.hpp"
#include "katsura/matrix_core.hpp"

namespace katsura {

using ZMatrix = std::vector<std::vector<Integer>>;

inline ZMatrix identity_matrix(std::size_t n) {
  ZMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 1;
  }
  return m;
}

inline ZMatrix to_zmatrix(IntMatrix const& m) {
  ZMatrix out;
  for (auto const& row : m) {
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

inline ZMatrix operator*(ZMatrix const& x, ZMatrix const& y) {
  std::size_t const r = x.size();
  std::size_t const c = y.empty() ? 0 : y[0].size();
  ZMatrix           out(r, std::vector<Integer>(c, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (x[i][k] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < c; ++j) {
        out[i][j] += x[i][k] * y[k][j];
      }
    }
  }
  return out;
}

// Fraction-free Gaussian elimination.
inline Integer determinant(ZMatrix m) {
  std::size_t const n = m.size();
  if (n == 0) {
    return 1;
  }
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) {
        ++p;
      }
      if (p == n) {
        return 0;
      }
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct SmithDecomposition {
  ZMatrix u;
  ZMatrix v;
  ZMatrix d;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < d.size() && i < d[i].size(); ++i) {
      out.push_back(d[i][i]);
    }
    return out;
  }
};

// u * m * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ..., all
// nonnegative. Pivot: smallest nonzero absolute value, first in row-major
// order among ties.
inline SmithDecomposition smith_normal_form(ZMatrix const& m) {
  std::size_t const rows = m.size();
  std::size_t const cols = rows == 0 ? 0 : m[0].size();
  SmithDecomposition s{identity_matrix(rows), identity_matrix(cols), m};
  ZMatrix&           d = s.d;

  auto const row_add = [&](std::size_t dst, std::size_t src, Integer const& q) {
    // row_dst += q * row_src
    for (std::size_t j = 0; j < cols; ++j) {
      d[dst][j] += q * d[src][j];
    }
    for (std::size_t j = 0; j < rows; ++j) {
      s.u[dst][j] += q * s.u[src][j];
    }
  };
  auto const col_add = [&](std::size_t dst, std::size_t src, Integer const& q) {
    for (std::size_t i = 0; i < rows; ++i) {
      d[i][dst] += q * d[i][src];
    }
    for (std::size_t i = 0; i < cols; ++i) {
      s.v[i][dst] += q * s.v[i][src];
    }
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t pi = rows;
      std::size_t pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (d[i][j] != 0
              && (pi == rows || abs(d[i][j]) < abs(d[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) {
        break;  // remaining block is zero
      }
      if (pi != t) {
        std::swap(d[pi], d[t]);
        std::swap(s.u[pi], s.u[t]);
      }
      if (pj != t) {
        for (std::size_t i = 0; i < rows; ++i) {
          std::swap(d[i][pj], d[i][t]);
        }
        for (std::size_t i = 0; i < cols; ++i) {
          std::swap(s.v[i][pj], s.v[i][t]);
        }
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] != 0) {
          row_add(i, t, -(d[i][t] / d[t][t]));
          clean = clean && d[i][t] == 0;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] != 0) {
          col_add(j, t, -(d[t][j] / d[t][t]));
          clean = clean && d[t][j] == 0;
        }
      }
      if (!clean) {
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (d[i][j] % d[t][t] != 0) {
            row_add(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) {
        break;
      }
    }
    if (d[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) {
        d[t][j] = -d[t][j];
      }
      for (std::size_t j = 0; j < rows; ++j) {
        s.u[t][j] = -s.u[t][j];
      }
    }
  }
  return s;
}

////////////////////////////////////////////////////////////////////////
// Finitely generated abelian groups
////////////////////////////////////////////////////////////////////////

struct AbelianGroup {
  std::size_t          free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors, each >= 2, dividing

  friend bool operator==(AbelianGroup const&, AbelianGroup const&) = default;
};

// Z^free_rank + sum of Z/orders[k]. Orders 0 count as Z and 1 as trivial.
inline AbelianGroup abelian_group(std::size_t                 free_rank,
                                  std::vector<Integer> const& orders) {
  AbelianGroup g{free_rank, {}};
  if (orders.empty()) {
    return g;
  }
  ZMatrix m(orders.size(), std::vector<Integer>(orders.size(), 0));
  for (std::size_t k = 0; k < orders.size(); ++k) {
    m[k][k] = abs(orders[k]);
  }
  for (auto const& x : smith_normal_form(m).diagonal()) {
    if (x == 0) {
      ++g.free_rank;
    } else if (x > 1) {
      g.torsion.push_back(x);
    }
  }
  return g;
}

inline std::string to_string(AbelianGroup const& g) {
  std::vector<std::string> parts;
  if (g.free_rank == 1) {
    parts.emplace_back("Z");
  } else if (g.free_rank > 1) {
    parts.push_back("Z^" + std::to_string(g.free_rank));
  }
  for (auto const& d : g.torsion) {
    parts.push_back("Z/" + d.str());
  }
  if (parts.empty()) {
    return "0";
  }
  std::string s = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    s += " + " + parts[k];
  }
  return s;
}

struct KTheoryResult {
  AbelianGroup k0;
  AbelianGroup k1;

  friend bool operator==(KTheoryResult const&, KTheoryResult const&) = default;
};

namespace detail {

  // Cokernel and nullity of a square integer matrix.
  inline std::pair<AbelianGroup, std::size_t> coker_and_nullity(
      ZMatrix const& m) {
    AbelianGroup g;
    std::size_t  nullity = 0;
    for (auto const& x : smith_normal_form(m).diagonal()) {
      if (x == 0) {
        ++g.free_rank;
        ++nullity;
      } else if (x > 1) {
        g.torsion.push_back(x);
      }
    }
    return {g, nullity};
  }

  inline ZMatrix identity_minus(IntMatrix const& m) {
    ZMatrix out = to_zmatrix(m);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (auto& x : out[i]) {
        x = -x;
      }
      out[i][i] += 1;
    }
    return out;
  }

}  // namespace detail

// K0 = coker(I-A) + ker(I-B), K1 = coker(I-B) + ker(I-A).
inline KTheoryResult k_groups(MatrixPair const& pair) {
  require_valid(pair);
  auto [coker_a, null_a] = detail::coker_and_nullity(
      detail::identity_minus(pair.a_matrix()));
  auto [coker_b, null_b] = detail::coker_and_nullity(
      detail::identity_minus(pair.b_matrix()));
  coker_a.free_rank += null_b;
  coker_b.free_rank += null_a;
  return {coker_a, coker_b};
}

////////////////////////////////////////////////////////////////////////
// Realization
////////////////////////////////////////////////////////////////////////

// A pair with Condition (E), A irreducible, A_ii >= 2, B_ii = 1 and
// K-groups (g0, g1). The result is checked before it is returned.
inline MatrixPair realize(AbelianGroup g0, AbelianGroup g1) {
  g0 = abelian_group(g0.free_rank, g0.torsion);
  g1 = abelian_group(g1.free_rank, g1.torsion);
  if (g0.free_rank != g1.free_rank) {
    throw UnrealizableWithSquareMatrices(
        "free ranks differ (" + std::to_string(g0.free_rank) + " vs "
        + std::to_string(g1.free_rank)
        + "), but for square matrices both equal nullity(I-A) + "
          "nullity(I-B)");
  }
  std::size_t n = std::max({g0.torsion.size() + g0.free_rank,
                            g1.torsion.size(), std::size_t{1}});
  // An all-zero target can not be densified; one more unit summand fixes it.
  if (n >= 2 && g0.torsion.empty() && g0.free_rank == n) {
    ++n;
  }
  std::vector<Integer> da(n, 1);
  std::vector<Integer> db(n, 1);
  std::copy(g0.torsion.begin(), g0.torsion.end(), da.begin());
  std::fill_n(da.begin() + static_cast<std::ptrdiff_t>(g0.torsion.size()),
              g0.free_rank, Integer(0));
  std::copy(g1.torsion.begin(), g1.torsion.end(), db.begin());

  // P adds row k to every other row, Q adds column k to every other column.
  std::size_t k = 0;
  while (k < n && da[k] == 0) {
    ++k;
  }
  ZMatrix p = identity_matrix(n);
  ZMatrix q = identity_matrix(n);
  if (k < n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) {
        p[i][k] = 1;
        q[k][i] = 1;
      }
    }
  }
  ZMatrix dam(n, std::vector<Integer>(n, 0));
  ZMatrix dbm(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    dam[i][i] = da[i];
    dbm[i][i] = db[i];
  }
  ZMatrix const ma = p * dam * q;  // A'' = I + ma
  ZMatrix const c = p * dbm * q;

  std::size_t const N = 2 * n;
  IntMatrix         a(N, std::vector<std::int64_t>(N, 0));
  IntMatrix         b(N, std::vector<std::int64_t>(N, 0));
  auto const        narrow = [](Integer const& x) {
    if (x > std::numeric_limits<std::int64_t>::max()) {
      throw InternalError("realization entry exceeds 64 bits");
    }
    return static_cast<std::int64_t>(x);
  };
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 2;
    a[n + i][i] = 1;
    a[n + i][n + i] = 2;
    b[i][i] = 1;
    b[n + i][i] = 1;
    b[n + i][n + i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      a[i][n + j] = narrow(ma[i][j] + (i == j ? 1 : 0));
      b[i][n + j] = narrow(c[i][j]);
    }
  }
  MatrixPair pair(static_cast<int>(N), std::move(a), std::move(b));

  std::string failed;
  if (!validate(pair).ok()) {
    failed = "Condition (0)";
  } else if (!satisfies_condition_E(pair)) {
    failed = "Condition (E)";
  } else if (!is_irreducible(pair)) {
    failed = "irreducibility";
  } else {
    for (Vertex i = 1; i <= pair.size(); ++i) {
      if (pair.a(i, i) < 2 || pair.b(i, i) != 1) {
        failed = "diagonal condition at " + std::to_string(i);
      }
    }
    if (failed.empty() && !(k_groups(pair) == KTheoryResult{g0, g1})) {
      failed = "K-theory round trip";
    }
  }
  if (!failed.empty()) {
    throw InternalError("realization certificate failed: " + failed);
  }
  return pair;
}

}  // namespace katsura
