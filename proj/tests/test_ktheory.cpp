#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "support/oracles.hpp"

using namespace katsura;

namespace {

  ZMatrix zm(std::vector<std::vector<int>> rows) {
    ZMatrix m;
    for (auto const& r : rows) {
      m.emplace_back(r.begin(), r.end());
    }
    return m;
  }

  MatrixPair pair_of(IntMatrix a, IntMatrix b) {
    int const n = static_cast<int>(a.size());
    return MatrixPair(n, std::move(a), std::move(b));
  }

  bool is_diagonal(ZMatrix const& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < d[i].size(); ++j) {
        if (i != j && d[i][j] != 0) {
          return false;
        }
      }
    }
    return true;
  }

  ZMatrix submatrix(ZMatrix const& m, std::vector<std::size_t> const& rows,
                    std::vector<std::size_t> const& cols) {
    ZMatrix out(rows.size(), std::vector<Integer>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        out[i][j] = m[rows[i]][cols[j]];
      }
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t>              cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t x = from; x < n; ++x) {
        cur.push_back(x);
        self(self, x + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

  // Invariant factors from determinantal divisors: D_k is the gcd of all
  // k-by-k minors and d_k = D_k / D_{k-1}.
  std::vector<Integer> invariant_factors(ZMatrix const& m) {
    std::size_t const    rows = m.size();
    std::size_t const    cols = rows == 0 ? 0 : m[0].size();
    std::vector<Integer> out;
    Integer              prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      Integer g = 0;
      for (auto const& r : subsets(rows, k)) {
        for (auto const& c : subsets(cols, k)) {
          g = gcd(g, oracle::abs_det(submatrix(m, r, c)));
        }
      }
      if (g == 0) {
        while (out.size() < std::min(rows, cols)) {
          out.push_back(0);
        }
        break;
      }
      out.push_back(g / prev);
      prev = g;
    }
    return out;
  }

  AbelianGroup coker(ZMatrix const& m) {
    return detail::coker_and_nullity(m).first;
  }

}  // namespace

TEST_CASE("smith_normal_form examples", "[ktheory]") {
  CHECK(smith_normal_form(zm({{0, -1}, {-1, 0}})).diagonal()
        == std::vector<Integer>{1, 1});
  CHECK(smith_normal_form(zm({{-1, -1}, {-1, -1}})).diagonal()
        == std::vector<Integer>{1, 0});
  CHECK(smith_normal_form(zm({{0, 0}, {0, 0}})).diagonal()
        == std::vector<Integer>{0, 0});
  CHECK(smith_normal_form(zm({{2, 0}, {0, 3}})).diagonal()
        == std::vector<Integer>{1, 6});
  CHECK(smith_normal_form(zm({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).diagonal()
        == std::vector<Integer>{2, 6, 12});
  auto const rect = smith_normal_form(zm({{4, 6, 2}}));
  CHECK(rect.diagonal() == std::vector<Integer>{2});
  CHECK(rect.u * zm({{4, 6, 2}}) * rect.v == rect.d);
}

TEST_CASE("determinant", "[ktheory]") {
  CHECK(determinant(zm({{2, 3}, {1, 2}})) == 1);
  CHECK(determinant(zm({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(zm({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(determinant(ZMatrix{}) == 1);
}

TEST_CASE("abelian groups", "[ktheory]") {
  CHECK(abelian_group(0, {2, 3}) == AbelianGroup{0, {6}});
  CHECK(abelian_group(1, {4, 6, 1}) == AbelianGroup{1, {2, 12}});
  CHECK(abelian_group(0, {0}) == AbelianGroup{1, {}});
  CHECK(to_string(AbelianGroup{2, {2, 6}}) == "Z^2 + Z/2 + Z/6");
  CHECK(to_string(AbelianGroup{}) == "0");
  CHECK(to_string(AbelianGroup{1, {}}) == "Z");
}

TEST_CASE("k_groups examples", "[ktheory]") {
  for (std::int64_t n = 2; n <= 6; ++n) {
    auto const k = k_groups(pair_of({{n}}, {{0}}));
    CHECK(k.k1 == AbelianGroup{});
    if (n == 2) {
      CHECK(k.k0 == AbelianGroup{});
    } else {
      CHECK(k.k0 == AbelianGroup{0, {n - 1}});
    }
  }
  CHECK(k_groups(pair_of({{2, 1}, {1, 2}}, {{1, 1}, {1, 1}}))
        == KTheoryResult{{1, {}}, {1, {}}});
  CHECK(k_groups(pair_of({{2, 3}, {1, 2}}, {{1, 1}, {1, 1}}))
        == KTheoryResult{{0, {2}}, {}});
  CHECK_THROWS_AS(k_groups(pair_of({{0}}, {{0}})), ValidationError);
}

TEST_CASE("realize examples", "[ktheory]") {
  auto const p = realize({0, {2}}, {});
  CHECK(p.a_matrix() == IntMatrix{{2, 3}, {1, 2}});
  CHECK(p.b_matrix() == IntMatrix{{1, 1}, {1, 1}});
  auto const q = realize({1, {}}, {1, {}});
  CHECK(k_groups(q) == KTheoryResult{{1, {}}, {1, {}}});
  CHECK_THROWS_AS(realize({1, {}}, {}), UnrealizableWithSquareMatrices);
  CHECK_THROWS_AS(realize({}, {2, {3}}), UnrealizableWithSquareMatrices);
}

TEST_CASE("SNF is a unimodular diagonalization", "[ktheory][property]") {
  oracle::Rng rng(0x736e660000000031ULL);
  for (int trial = 0; trial < 300; ++trial) {
    auto const rows = static_cast<std::size_t>(oracle::uniform(rng, 1, 6));
    auto const cols = oracle::uniform(rng, 0, 3) == 0
                          ? static_cast<std::size_t>(oracle::uniform(rng, 1, 6))
                          : rows;
    auto const m = oracle::random_zmatrix(rng, rows, cols, -10, 10);
    auto const s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_diagonal(s.d));
    CHECK(oracle::abs_det(s.u) == 1);
    CHECK(oracle::abs_det(s.v) == 1);
    auto const d = s.diagonal();
    for (std::size_t k = 0; k < d.size(); ++k) {
      CHECK(d[k] >= 0);
      if (k + 1 < d.size() && d[k] != 0) {
        CHECK(d[k + 1] % d[k] == 0);
      }
      if (k + 1 < d.size() && d[k] == 0) {
        CHECK(d[k + 1] == 0);
      }
    }
    if (rows <= 4 && cols <= 4) {
      CHECK(d == invariant_factors(m));
    }
    if (rows == cols) {
      CHECK(determinant(m) == oracle::permutation_det(m));
    }
  }
}

TEST_CASE("torsion order of a nonsingular cokernel is |det|",
          "[ktheory][property]") {
  oracle::Rng rng(0x6465740000000032ULL);
  for (int trial = 0; trial < 200; ++trial) {
    auto const n = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    auto const m = oracle::random_zmatrix(rng, n, n, -6, 6);
    Integer const det = oracle::abs_det(m);
    auto const    g = coker(m);
    if (det == 0) {
      CHECK(g.free_rank >= 1);
      continue;
    }
    CHECK(g.free_rank == 0);
    Integer order = 1;
    for (auto const& t : g.torsion) {
      order *= t;
    }
    CHECK(order == det);
  }
}

TEST_CASE("free ranks of K0 and K1 agree", "[ktheory][property]") {
  oracle::Rng rng(0x72616e6b00000033ULL);
  for (int trial = 0; trial < 200; ++trial) {
    auto const pair = oracle::random_pair(
        rng, static_cast<int>(oracle::uniform(rng, 1, 4)), 3, 3);
    auto const k = k_groups(pair);
    CHECK(k.k0.free_rank == k.k1.free_rank);
  }
}

TEST_CASE("realize round trip and block identities", "[ktheory][property]") {
  std::vector<AbelianGroup> const groups{
      {}, {1, {}}, {2, {}}, {0, {2}}, {0, {6}}, {1, {3}}, {0, {2, 4}}, {1, {2, 2}}};
  for (auto const& g0 : groups) {
    for (auto const& g1 : groups) {
      if (g0.free_rank != g1.free_rank) {
        CHECK_THROWS_AS(realize(g0, g1), UnrealizableWithSquareMatrices);
        continue;
      }
      INFO(to_string(g0) << " / " << to_string(g1));
      auto const p = realize(g0, g1);
      CHECK(validate(p).ok());
      CHECK(satisfies_condition_E(p));
      CHECK(is_irreducible(p));
      for (Vertex i = 1; i <= p.size(); ++i) {
        CHECK(p.a(i, i) >= 2);
        CHECK(p.b(i, i) == 1);
      }
      CHECK(k_groups(p) == KTheoryResult{g0, g1});

      auto const        a = to_zmatrix(p.a_matrix());
      auto const        b = to_zmatrix(p.b_matrix());
      std::size_t const n = a.size() / 2;
      std::vector<std::size_t> top(n), bottom(n);
      std::iota(top.begin(), top.end(), std::size_t{0});
      std::iota(bottom.begin(), bottom.end(), n);
      auto       i_minus_a2 = submatrix(a, top, bottom);
      auto const c = submatrix(b, top, bottom);
      for (std::size_t x = 0; x < n; ++x) {
        for (auto& v : i_minus_a2[x]) {
          v = -v;
        }
        i_minus_a2[x][x] += 1;
      }
      CHECK(coker(detail::identity_minus(p.a_matrix())) == coker(i_minus_a2));
      CHECK(coker(detail::identity_minus(p.b_matrix())) == coker(c));
    }
  }
}
