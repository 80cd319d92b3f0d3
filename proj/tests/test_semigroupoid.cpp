#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace katsura;

namespace {

  MatrixPair const e1(2, {{2, 1}, {1, 2}}, {{1, 1}, {1, 1}});

  SgpElement g(std::vector<GLetter> letters) {
    return SgpElement::word(std::move(letters));
  }

  SgpElement g1(Vertex i, Vertex j, std::int64_t n) { return g({{i, j, n}}); }

}  // namespace

TEST_CASE("standard_form examples", "[semigroupoid]") {
  CHECK(standard_form(e1, {RawAtom::g(1, 1, 3), RawAtom::g(1, 2, 1)})
        == g({{1, 1, 1}, {1, 2, 2}}));
  CHECK(standard_form(e1, {RawAtom::h(1), RawAtom::g(1, 2, 4)})
        == g1(1, 2, 5));
  CHECK(standard_form(e1, {RawAtom::g(1, 1, 1), RawAtom::g(1, 2, 2)})
        == g({{1, 1, 1}, {1, 2, 2}}));
  CHECK(standard_form(e1, {RawAtom::h(2, 2), RawAtom::h(2, 3)})
        == SgpElement::h(2, 5));
  // right h absorbs +A, left h absorbs +B
  CHECK(standard_form(e1, {RawAtom::g(1, 1, 1), RawAtom::h(1, 2)})
        == g1(1, 1, 5));
  CHECK(standard_form(e1, {RawAtom::g(1, 1, -3), RawAtom::g(1, 1, 1)})
        == g({{1, 1, 1}, {1, 1, -1}}));
}

TEST_CASE("standard_form errors", "[semigroupoid]") {
  CHECK_THROWS_AS(standard_form(e1, {RawAtom::g(1, 2, 1), RawAtom::g(1, 1, 1)}),
                  CompositionError);
  CHECK_THROWS_AS(standard_form(e1, {RawAtom::h(1, 0)}), DomainError);
  MatrixPair const sparse(2, {{1, 0}, {1, 1}}, {{0, 0}, {0, 0}});
  CHECK_THROWS_AS(standard_form(sparse, {RawAtom::g(1, 2, 1)}), DomainError);
}

TEST_CASE("compose", "[semigroupoid]") {
  CHECK(compose(e1, SgpElement::h(1, 2), SgpElement::h(1, 3))
        == SgpElement::h(1, 5));
  CHECK(compose(e1, g1(1, 2, 1), SgpElement::h(2, 1)) == g1(1, 2, 2));
  CHECK_FALSE(compose(e1, SgpElement::h(2), g1(1, 2, 1)).has_value());
  CHECK(compose(e1, g1(1, 1, 4), g1(1, 2, 1)) == g({{1, 1, 2}, {1, 2, 2}}));
}

TEST_CASE("divides and intersects", "[semigroupoid]") {
  CHECK(divides(e1, SgpElement::h(1, 1), SgpElement::h(1, 3)));
  CHECK_FALSE(divides(e1, SgpElement::h(1, 3), SgpElement::h(1, 1)));
  CHECK(divides(e1, SgpElement::h(1, 4), g1(1, 2, -7)));
  CHECK(divides(e1, g1(1, 1, 1), g1(1, 1, 3)));
  CHECK_FALSE(divides(e1, g1(1, 1, 3), g1(1, 1, 1)));
  CHECK(divides(e1, g1(1, 1, 3), g({{1, 1, 1}, {1, 2, 7}})));
  CHECK_FALSE(divides(e1, g1(1, 1, 2), g({{1, 1, 1}, {1, 2, 7}})));
  CHECK(intersects(e1, g1(1, 1, 1), g1(1, 1, 3)));
  CHECK_FALSE(intersects(e1, g1(1, 1, 1), g1(1, 1, 2)));
  CHECK_FALSE(intersects(e1, g1(1, 1, 1), g1(1, 2, 1)));
  CHECK(intersects(e1, SgpElement::h(1), g1(1, 2, 1)));
  CHECK_FALSE(intersects(e1, SgpElement::h(2), g1(1, 2, 1)));
}

TEST_CASE("lcm", "[semigroupoid]") {
  CHECK(lcm(e1, SgpElement::h(1, 2), SgpElement::h(1, 5))
        == SgpElement::h(1, 5));
  CHECK(lcm(e1, SgpElement::h(1, 2), g1(1, 2, 1)) == g1(1, 2, 1));
  CHECK(lcm(e1, g1(1, 1, 1), g1(1, 1, 3)) == g1(1, 1, 3));
  CHECK(lcm(e1, g1(1, 1, 3), g1(1, 1, 1)) == g1(1, 1, 3));
  CHECK_FALSE(lcm(e1, g1(1, 1, 1), g1(1, 1, 2)).has_value());
  CHECK(lcm(e1, g1(1, 1, 3), g({{1, 1, 1}, {1, 1, 9}}))
        == g({{1, 1, 1}, {1, 1, 9}}));
}

TEST_CASE("finite_partition", "[semigroupoid]") {
  using V = std::vector<SgpElement>;
  CHECK(finite_partition(e1, 1, SgpElement::h(1, 3)) == V{SgpElement::h(1)});
  CHECK(finite_partition(e1, 1, g1(1, 1, 1))
        == V{g1(1, 1, 1), g1(1, 1, 2), g1(1, 2, 1)});
  CHECK(finite_partition(e1, 1, g1(1, 1, 3))
        == V{g1(1, 1, 3), g1(1, 1, 4), g1(1, 2, 2)});
  CHECK_THROWS_AS(finite_partition(e1, 2, g1(1, 1, 3)), DomainError);
}

TEST_CASE("finite_partition is a disjoint cover", "[semigroupoid][property]") {
  oracle::Rng rng(0x7061727469000002ULL);
  for (int trial = 0; trial < 60; ++trial) {
    int const  n = static_cast<int>(oracle::uniform(rng, 1, 3));
    auto const pair = oracle::random_pair(rng, n, 3, 3);
    auto const h = standard_form(
        pair, oracle::random_raw_word(
                  rng, pair, static_cast<std::size_t>(oracle::uniform(rng, 1, 3)),
                  8));
    Vertex const i = h.source();
    auto const   part = finite_partition(pair, i, h);
    INFO("trial " << trial << " h = " << to_string(h));
    for (std::size_t a = 0; a < part.size(); ++a) {
      CHECK(part[a].source() == i);
      for (std::size_t b = a + 1; b < part.size(); ++b) {
        CHECK_FALSE(intersects(pair, part[a], part[b]));
      }
    }
    if (h.is_h_power()) {
      CHECK(part == std::vector<SgpElement>{SgpElement::h(i)});
      continue;
    }
    CHECK(std::find(part.begin(), part.end(), h) != part.end());
    // anything at least as deep as h meets exactly one member
    std::size_t const depth = h.length() + 1;
    for (auto const& x : oracle::extensions(pair, i, depth, -6, 6, 0)) {
      if (x.length() < h.length()) {
        continue;
      }
      int hits = 0;
      for (auto const& p : part) {
        hits += intersects(pair, p, x) ? 1 : 0;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("standard form matches step-by-step rewriting",
          "[semigroupoid][property]") {
  oracle::Rng rng(0x7374616e64000003ULL);
  for (int trial = 0; trial < 500; ++trial) {
    int const  n = static_cast<int>(oracle::uniform(rng, 1, 4));
    auto const pair = oracle::random_pair(rng, n, 3, 3);
    auto const w = oracle::random_raw_word(
        rng, pair, static_cast<std::size_t>(oracle::uniform(rng, 1, 8)), 12);
    auto const x = standard_form(pair, w);
    CHECK(x == oracle::rewrite_normalize(pair, w));
    CHECK(standard_form(pair, to_raw(x)) == x);
  }
}

TEST_CASE("every element is monic", "[semigroupoid][property]") {
  oracle::Rng rng(0x6d6f6e6963000004ULL);
  int         checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto const pair = oracle::random_pair(
        rng, static_cast<int>(oracle::uniform(rng, 1, 3)), 3, 3);
    auto const f = standard_form(pair, oracle::random_raw_word(rng, pair, 3, 6));
    auto const exts = oracle::extensions(pair, f.range(), 2, -3, 3, 2);
    auto const x = exts[static_cast<std::size_t>(
        oracle::uniform(rng, 0, static_cast<std::int64_t>(exts.size()) - 1))];
    auto const y = exts[static_cast<std::size_t>(
        oracle::uniform(rng, 0, static_cast<std::int64_t>(exts.size()) - 1))];
    auto const fx = compose(pair, f, x);
    auto const fy = compose(pair, f, y);
    REQUIRE(fx.has_value());
    REQUIRE(fy.has_value());
    if (*fx == *fy) {
      ++checked;
      CHECK(x == y);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("epic exactly under condition E", "[semigroupoid][property]") {
  // B[1][2] = 0, so h(1) on the left of g(1,2,n) is invisible
  MatrixPair const not_e(2, {{2, 1}, {1, 2}}, {{1, 0}, {1, 1}});
  REQUIRE_FALSE(satisfies_condition_E(not_e));
  auto const f = g1(1, 2, 1);
  auto const x = SgpElement::h(1, 1);
  auto const y = SgpElement::h(1, 2);
  CHECK(compose(not_e, x, f) == compose(not_e, y, f));
  CHECK_FALSE(x == y);

  oracle::Rng rng(0x6570696300000005ULL);
  for (int trial = 0; trial < 300; ++trial) {
    auto const pair = oracle::random_pair(
        rng, static_cast<int>(oracle::uniform(rng, 1, 3)), 3, 3, true);
    Vertex const v = static_cast<Vertex>(oracle::uniform(rng, 1, pair.size()));
    auto const f = standard_form(pair, {RawAtom::g(v, oracle::random_successor(rng, pair, v),
                                                   oracle::uniform(rng, -4, 4))});
    // all short elements ending at the source of f
    std::vector<SgpElement> ends;
    for (Vertex u = 1; u <= pair.size(); ++u) {
      for (auto const& e : oracle::extensions(pair, u, 2, -4, 4, 3)) {
        if (e.range() == f.source()) {
          ends.push_back(e);
        }
      }
    }
    for (std::size_t a = 0; a < ends.size(); a += 7) {
      for (std::size_t b = a + 1; b < ends.size(); b += 5) {
        auto const xa = compose(pair, ends[a], f);
        auto const xb = compose(pair, ends[b], f);
        if (xa && xb && *xa == *xb) {
          CHECK(ends[a] == ends[b]);
        }
      }
    }
  }
}

TEST_CASE("divides agrees with cofactor search", "[semigroupoid][property]") {
  oracle::Rng rng(0x6469760000000006ULL);
  for (int trial = 0; trial < 300; ++trial) {
    auto const pair = oracle::random_pair(
        rng, static_cast<int>(oracle::uniform(rng, 1, 3)), 3, 3);
    auto const f = standard_form(pair, oracle::random_raw_word(rng, pair, 2, 4));
    // half the time build z as a multiple of f
    SgpElement z;
    if (oracle::uniform(rng, 0, 1) == 0) {
      auto const exts = oracle::extensions(pair, f.range(), 2, -4, 4, 3);
      z = *compose(pair, f,
                   exts[static_cast<std::size_t>(oracle::uniform(
                       rng, 0, static_cast<std::int64_t>(exts.size()) - 1))]);
    } else {
      z = standard_form(pair, oracle::random_raw_word(rng, pair, 3, 6));
    }
    INFO(to_string(f) << " | " << to_string(z));
    CHECK(divides(pair, f, z) == oracle::slow_divides(pair, f, z));
  }
}

TEST_CASE("lcm is the least common multiple", "[semigroupoid][property]") {
  oracle::Rng rng(0x6c636d0000000007ULL);
  int         intersecting = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto const pair = oracle::random_pair(
        rng, static_cast<int>(oracle::uniform(rng, 1, 3)), 3, 3);
    Vertex const v = static_cast<Vertex>(oracle::uniform(rng, 1, pair.size()));
    auto const   cands = oracle::extensions(pair, v, 2, -3, 3, 2);
    auto const   pick = [&] {
      return cands[static_cast<std::size_t>(oracle::uniform(
          rng, 0, static_cast<std::int64_t>(cands.size()) - 1))];
    };
    auto const f = pick();
    auto const g = pick();
    auto const m = lcm(pair, f, g);
    CHECK(m.has_value() == intersects(pair, f, g));
    if (!m) {
      continue;
    }
    ++intersecting;
    INFO(to_string(f) << " v " << to_string(g) << " -> " << to_string(*m));
    CHECK(oracle::slow_divides(pair, f, *m, 20, 40));
    CHECK(oracle::slow_divides(pair, g, *m, 20, 40));
    for (auto const& z : oracle::extensions(pair, v, 3, -4, 4, 3)) {
      if (oracle::slow_divides(pair, f, z, 20, 40)
          && oracle::slow_divides(pair, g, z, 20, 40)) {
        CHECK(oracle::slow_divides(pair, *m, z, 20, 40));
      }
    }
  }
  CHECK(intersecting > 20);
}
