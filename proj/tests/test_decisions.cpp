#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace katsura;

namespace {

  MatrixPair pair_of(IntMatrix a, IntMatrix b) {
    int const n = static_cast<int>(a.size());
    return MatrixPair(n, std::move(a), std::move(b));
  }

  MatrixPair const e1 = pair_of({{2, 1}, {1, 2}}, {{1, 1}, {1, 1}});
  MatrixPair const flip = pair_of({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  MatrixPair const reducible = pair_of({{2, 1}, {0, 2}}, {{1, 1}, {0, 1}});

  bool has_tag(Verdict const& v, std::string const& tag) {
    return std::any_of(v.reasons.begin(), v.reasons.end(),
                       [&](Reason const& r) { return r.tag == tag; });
  }

}  // namespace

TEST_CASE("minimality", "[decisions]") {
  CHECK(minimality(e1).yes());
  CHECK(minimality(reducible).no());
  CHECK(minimality(pair_of({{3}}, {{0}})).yes());
}

TEST_CASE("topological freeness", "[decisions]") {
  auto const free = topological_freeness(e1);
  CHECK(free.yes());
  CHECK(has_tag(free, "contracting_cycles"));
  CHECK(topological_freeness(flip).no());
  auto const identity = topological_freeness(pair_of({{2}}, {{2}}));
  CHECK(identity.no());
  CHECK(has_tag(identity, "fixed_cylinder"));
  // Condition (E) fails
  CHECK(topological_freeness(pair_of({{2, 1}, {1, 2}}, {{1, 0}, {1, 1}})).no());
  // |B/A| = 3/2 on the only loop: no contraction and no fixed cylinder
  auto const expanding = topological_freeness(pair_of({{2}}, {{3}}));
  CHECK(expanding.unknown());
  CHECK(has_tag(expanding, "no_contracting_cycle"));
}

TEST_CASE("simplicity", "[decisions]") {
  auto const s = simplicity(e1);
  CHECK(s.yes());
  CHECK(has_tag(s, "fixed_point_interpretation"));
  CHECK(simplicity(flip).no());
  CHECK(simplicity(reducible).no());
  auto const no_e = simplicity(pair_of({{3}}, {{0}}));
  CHECK(no_e.unknown());
  CHECK(has_tag(no_e, "requires_condition_E"));
  CHECK(has_tag(no_e, "fixed_point_interpretation"));
  // each tag at most once
  std::set<std::string> tags;
  for (auto const& r : s.reasons) {
    CHECK(tags.insert(r.tag).second);
  }
}

TEST_CASE("local contractiveness", "[decisions]") {
  CHECK(locally_contracting(e1).yes());
  CHECK(locally_contracting(pair_of({{0, 1}, {1, 0}}, {{0, 0}, {0, 0}})).unknown());
  CHECK(locally_contracting(pair_of({{2, 1}, {0, 2}}, {{0, 0}, {0, 0}})).unknown());
}

TEST_CASE("pure infiniteness", "[decisions]") {
  CHECK(pure_infiniteness(e1).yes());
  CHECK(pure_infiniteness(flip).no());
  CHECK(pure_infiniteness(pair_of({{2, 1}, {1, 2}}, {{1, 0}, {1, 1}})).unknown());
}

TEST_CASE("classic sufficient conditions", "[decisions]") {
  CHECK(katsura_classic_check(e1).yes());
  CHECK(katsura_classic_check(pair_of({{2}}, {{0}})).no());
  CHECK(katsura_classic_check(pair_of({{1, 1}, {1, 1}}, {{1, 1}, {1, 1}})).no());
}

TEST_CASE("hausdorff and essential principality", "[decisions]") {
  CHECK(hausdorff(e1).yes());
  CHECK(hausdorff(pair_of({{3}}, {{0}})).unknown());
  CHECK(essentially_principal(e1).yes());
  CHECK(essentially_principal(pair_of({{3}}, {{0}})).unknown());
}

TEST_CASE("analyze", "[decisions]") {
  auto const r = analyze(e1);
  CHECK(r.simple.yes());
  CHECK(r.purely_infinite_simple.yes());
  CHECK(r.kgroups == KTheoryResult{{1, {}}, {1, {}}});
  CHECK(r.nuclear.yes());
  CHECK(r.etale.yes());
  for (auto const& [name, v] : r.verdicts()) {
    INFO(name);
    if (!v->unknown()) {
      CHECK_FALSE(v->reasons.empty());
    }
  }

  auto const cuntz = analyze(pair_of({{3}}, {{0}}));
  CHECK(std::find(cuntz.notes.begin(), cuntz.notes.end(),
                  "B=(0): O_{A,B} ≅ Cuntz–Krieger O_A")
        != cuntz.notes.end());
  CHECK(cuntz.kgroups == KTheoryResult{{0, {2}}, {}});

  CHECK_THROWS_AS(analyze(pair_of({{0}}, {{0}})), StructuralError);
}

TEST_CASE("verdicts are consistent", "[decisions][property]") {
  oracle::Rng rng(0x636f6e7300000041ULL);
  for (int trial = 0; trial < 120; ++trial) {
    bool const e = oracle::uniform(rng, 0, 2) != 0;
    auto const pair = oracle::random_pair(
        rng, static_cast<int>(oracle::uniform(rng, 1, 3)), 3, 3, e);
    auto const r = analyze(pair);
    INFO("trial " << trial << " A=" << to_json_text(pair));
    if (r.simple.yes()) {
      CHECK(r.minimal.yes());
      CHECK(r.conditionL.yes());
    }
    if (r.purely_infinite_simple.yes()) {
      CHECK(r.simple.yes());
    }
    if (r.topologically_free.yes()) {
      CHECK(r.essentially_principal.yes());
    }
    if (r.conditionE.yes()) {
      CHECK(r.essentially_principal.value == r.topologically_free.value);
      CHECK(r.hausdorff.yes());
    } else {
      CHECK(r.simple.unknown());
    }
    if (r.katsura_classic.yes() && r.conditionE.yes()) {
      CHECK_FALSE(r.simple.no());
    }
    CHECK(r.minimal.value == (oracle::irreducible(pair) ? Tri::yes : Tri::no));
    CHECK(r.conditionL.value == (oracle::condition_L(pair) ? Tri::yes : Tri::no));
    CHECK(r.kgroups.k0.free_rank == r.kgroups.k1.free_rank);
    for (auto const& [name, v] : r.verdicts()) {
      if (!v->unknown()) {
        CHECK_FALSE(v->reasons.empty());
      }
    }
    auto const again = analyze(pair);
    CHECK(again.simple == r.simple);
    CHECK(again.topologically_free == r.topologically_free);
  }
}
