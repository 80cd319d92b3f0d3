#pragma once

// Verdicts about O_{A,B} assembled from the graph conditions, the fixed point
// machinery and the K-groups.

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "katsura/core.hpp"
#include "katsura/ktheory.hpp"
#include "katsura/matrix_core.hpp"
#include "katsura/path_space.hpp"

namespace katsura {

struct Reason {
  std::string tag;
  std::string text;

  friend bool operator==(Reason const&, Reason const&) = default;
};

struct Verdict {
  Tri                 value = Tri::unknown;
  std::vector<Reason> reasons;

  bool yes() const noexcept { return value == Tri::yes; }
  bool no() const noexcept { return value == Tri::no; }
  bool unknown() const noexcept { return value == Tri::unknown; }

  friend bool operator==(Verdict const&, Verdict const&) = default;
};

inline Verdict verdict(Tri v, std::string tag, std::string text) {
  return {v, {{std::move(tag), std::move(text)}}};
}

inline Verdict verdict(bool v, std::string tag, std::string text) {
  return verdict(v ? Tri::yes : Tri::no, std::move(tag), std::move(text));
}

struct Caps {
  std::size_t fixed_cylinder_cap = 64;  // states per has_fixed_cylinder probe
  int         probe_l = 4;              // probes u_i^l for 1 <= |l| <= probe_l
  std::size_t germ_depth = 32;
};

inline Verdict minimality(MatrixPair const& pair) {
  bool const irr = is_irreducible(pair);
  return verdict(irr, irr ? "irreducible" : "reducible",
                 irr ? "A is irreducible" : "A is not irreducible");
}

namespace detail {

  // Product of B/A along each vertex-simple cycle, with its vertices.
  struct CycleRatio {
    std::vector<Vertex> vertices;
    Rational            ratio;
    Integer             a_product;
  };

  inline std::vector<CycleRatio> cycle_ratios(MatrixPair const& pair) {
    std::vector<CycleRatio> out;
    for (auto const& vc :
         simple_vertex_cycles(pair, static_cast<std::size_t>(pair.size()))) {
      CycleRatio c{vc, 1, 1};
      for (std::size_t k = 0; k < vc.size(); ++k) {
        Vertex const i = vc[k];
        Vertex const j = vc[(k + 1) % vc.size()];
        c.ratio *= Rational(pair.b(i, j)) / Rational(pair.a(i, j));
        c.a_product *= pair.a(i, j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

}  // namespace detail

inline Verdict topological_freeness(MatrixPair const& pair,
                                    Caps const&       caps = {}) {
  if (!satisfies_condition_L(pair)) {
    return verdict(Tri::no, "condition_L_fails",
                   "E_A has a cycle without exit");
  }
  if (!satisfies_condition_E(pair)) {
    return verdict(Tri::no, "condition_E_fails",
                   "B vanishes somewhere on the support of A");
  }
  auto const cycles = detail::cycle_ratios(pair);

  std::set<Integer> ls;
  for (int l = 1; l <= caps.probe_l; ++l) {
    ls.insert(l);
    ls.insert(-l);
  }
  for (auto const& c : cycles) {
    ls.insert(c.a_product);
    ls.insert(-c.a_product);
  }
  bool undecided_probe = false;
  for (Vertex i = 1; i <= pair.size(); ++i) {
    for (auto const& l : ls) {
      auto const probe = has_fixed_cylinder(pair, i, l, caps.fixed_cylinder_cap);
      if (probe.value == Tri::yes) {
        return verdict(Tri::no, "fixed_cylinder",
                       "u_" + std::to_string(i) + "^" + l.str()
                           + " fixes every point of the cylinder of "
                           + to_string(probe.witness));
      }
      undecided_probe = undecided_probe || probe.value == Tri::unknown;
    }
  }

  auto const reach = detail::reach_closure(pair);
  std::vector<bool> contracting(pair.size() + 1, false);
  for (auto const& c : cycles) {
    if (abs(c.ratio) < 1) {
      for (Vertex v : c.vertices) {
        contracting[v] = true;
      }
    }
  }
  bool all_reach = true;
  for (Vertex v = 1; v <= pair.size() && all_reach; ++v) {
    bool found = false;
    for (Vertex w = 1; w <= pair.size() && !found; ++w) {
      found = contracting[w] && detail::reachable_or_equal(reach, v, w);
    }
    all_reach = found;
  }
  if (all_reach) {
    return {Tri::yes,
            {{"condition_L", "every cycle has an exit"},
             {"condition_E", "B is nonzero on the support of A"},
             {"contracting_cycles",
              "every vertex reaches a cycle with |prod B/A| < 1"}}};
  }
  std::string text = "no fixed cylinder found for the probed u_i^l";
  if (undecided_probe) {
    text += " (some probes hit the state cap)";
  }
  return {Tri::unknown,
          {{"no_contracting_cycle",
            "some vertex reaches no cycle with |prod B/A| < 1"},
           {"probes_inconclusive", text}}};
}

inline Verdict essentially_principal(MatrixPair const& pair,
                                     Caps const&       caps = {}) {
  if (!satisfies_condition_E(pair)) {
    return verdict(Tri::unknown, "requires_condition_E",
                   "the equivalence with topological freeness needs "
                   "Condition (E)");
  }
  Verdict v = topological_freeness(pair, caps);
  v.reasons.insert(v.reasons.begin(),
                   {"equals_topological_freeness",
                    "under Condition (E) this is topological freeness"});
  return v;
}

inline Verdict hausdorff(MatrixPair const& pair) {
  if (satisfies_condition_E(pair)) {
    return verdict(Tri::yes, "condition_E",
                   "the groupoid is Hausdorff under Condition (E)");
  }
  return verdict(Tri::unknown, "requires_condition_E",
                 "no criterion without Condition (E)");
}

inline Reason const fixed_point_interpretation{
    "fixed_point_interpretation",
    "fixed points are read as fixed points of the unitaries u_i^l"};

inline Verdict simplicity(MatrixPair const& pair, Caps const& caps = {}) {
  if (!satisfies_condition_E(pair)) {
    return {Tri::unknown,
            {{"requires_condition_E",
              "characterization requires Condition (E)"},
             fixed_point_interpretation}};
  }
  Verdict const irr = minimality(pair);
  bool const    cond_l = satisfies_condition_L(pair);
  Verdict const free = topological_freeness(pair, caps);

  Verdict out;
  if (irr.no() || !cond_l || free.no()) {
    out.value = Tri::no;
  } else if (free.yes()) {
    out.value = Tri::yes;
  }
  out.reasons.push_back(irr.reasons.front());
  out.reasons.push_back(cond_l ? Reason{"condition_L", "every cycle has an exit"}
                               : Reason{"condition_L_fails",
                                        "E_A has a cycle without exit"});
  if (cond_l) {
    for (auto const& r : free.reasons) {
      if (r.tag != "condition_L") {
        out.reasons.push_back(r);
      }
    }
  }
  out.reasons.push_back(fixed_point_interpretation);
  return out;
}

inline Verdict locally_contracting(MatrixPair const& pair) {
  bool const ext = every_path_extends_to_cycle(pair);
  bool const cond_l = satisfies_condition_L(pair);
  if (ext && cond_l) {
    return {Tri::yes,
            {{"paths_extend_to_cycles",
              "every finite path can be enlarged to a cycle"},
             {"condition_L", "every cycle has an exit"}}};
  }
  return verdict(Tri::unknown, ext ? "condition_L_fails" : "paths_do_not_extend",
                 ext ? "Condition (L) fails, the sufficient criterion does "
                       "not apply"
                     : "some path can not be enlarged to a cycle, the "
                       "sufficient criterion does not apply");
}

inline Verdict pure_infiniteness(MatrixPair const& pair,
                                 Caps const&       caps = {}) {
  Verdict const simple = simplicity(pair, caps);
  if (simple.yes() && is_irreducible(pair)) {
    return verdict(Tri::yes, "simple_and_irreducible",
                   "simple with A irreducible, hence purely infinite simple");
  }
  if (simple.no()) {
    return verdict(Tri::no, "not_simple", "O_{A,B} is not simple");
  }
  return verdict(Tri::unknown, "simplicity_unknown",
                 "simplicity is undecided");
}

inline Verdict katsura_classic_check(MatrixPair const& pair) {
  if (!is_irreducible(pair)) {
    return verdict(Tri::no, "reducible", "A is not irreducible");
  }
  for (Vertex i = 1; i <= pair.size(); ++i) {
    if (pair.a(i, i) < 2) {
      return verdict(Tri::no, "diagonal_A",
                     "A[" + std::to_string(i) + "][" + std::to_string(i)
                         + "] < 2");
    }
    if (pair.b(i, i) != 1) {
      return verdict(Tri::no, "diagonal_B",
                     "B[" + std::to_string(i) + "][" + std::to_string(i)
                         + "] != 1");
    }
  }
  return verdict(Tri::yes, "classic_conditions",
                 "A irreducible, A_ii >= 2 and B_ii = 1 for all i");
}

struct AnalysisReport {
  Verdict                  condition0;
  Verdict                  conditionE;
  Verdict                  irreducible;
  Verdict                  conditionL;
  Verdict                  conditionK;
  Verdict                  minimal;
  Verdict                  topologically_free;
  Verdict                  essentially_principal;
  Verdict                  hausdorff;
  Verdict                  simple;
  Verdict                  locally_contracting;
  Verdict                  purely_infinite_simple;
  Verdict                  katsura_classic;
  Verdict                  nuclear;
  Verdict                  etale;
  KTheoryResult            kgroups;
  std::vector<std::string> notes;

  // Field name and verdict, in report order.
  std::vector<std::pair<std::string, Verdict const*>> verdicts() const {
    return {{"condition0", &condition0},
            {"conditionE", &conditionE},
            {"irreducible", &irreducible},
            {"conditionL", &conditionL},
            {"conditionK", &conditionK},
            {"minimal", &minimal},
            {"topologically_free", &topologically_free},
            {"essentially_principal", &essentially_principal},
            {"hausdorff", &hausdorff},
            {"simple", &simple},
            {"locally_contracting", &locally_contracting},
            {"purely_infinite_simple", &purely_infinite_simple},
            {"katsura_classic", &katsura_classic},
            {"nuclear", &nuclear},
            {"etale", &etale}};
  }
};

inline AnalysisReport analyze(MatrixPair const& pair, Caps const& caps = {}) {
  auto const check = validate(pair);
  if (!check.ok()) {
    std::string msg = "invalid matrix pair:";
    for (auto const& v : check.violations) {
      msg += " " + v.message + ";";
    }
    msg.pop_back();
    throw StructuralError(msg);
  }
  AnalysisReport r;
  r.condition0 = verdict(true, "condition_0",
                         "every row of A is nonzero and B vanishes off the "
                         "support of A");
  bool const e = satisfies_condition_E(pair);
  r.conditionE = verdict(e, e ? "condition_E" : "condition_E_fails",
                         e ? "B is nonzero exactly on the support of A"
                           : "B vanishes somewhere on the support of A");
  r.minimal = minimality(pair);
  r.irreducible = r.minimal;
  bool const l = satisfies_condition_L(pair);
  r.conditionL = verdict(l, l ? "condition_L" : "condition_L_fails",
                         l ? "every cycle has an exit"
                           : "E_A has a cycle without exit");
  bool const k = satisfies_condition_K(pair);
  r.conditionK = verdict(k, k ? "condition_K" : "condition_K_fails",
                         k ? "every cycle vertex bases two distinct cycles"
                           : "some cycle vertex bases only one cycle");
  r.topologically_free = topological_freeness(pair, caps);
  r.essentially_principal = essentially_principal(pair, caps);
  r.hausdorff = hausdorff(pair);
  r.simple = simplicity(pair, caps);
  r.locally_contracting = locally_contracting(pair);
  r.purely_infinite_simple = pure_infiniteness(pair, caps);
  r.katsura_classic = katsura_classic_check(pair);
  r.nuclear = verdict(true, "nuclear", "O_{A,B} is always nuclear");
  r.etale = verdict(true, "etale",
                    "the groupoid of germs is etale with second countable "
                    "unit space");
  r.kgroups = k_groups(pair);

  bool b_zero = true;
  for (Vertex i = 1; i <= pair.size(); ++i) {
    b_zero = b_zero && pair.b_row_is_zero(i);
  }
  if (b_zero) {
    r.notes.emplace_back("B=(0): O_{A,B} ≅ Cuntz–Krieger O_A");
  }
  if (r.katsura_classic.yes()) {
    r.notes.emplace_back("A irreducible with A_ii >= 2 and B_ii = 1: simple "
                         "and purely infinite");
  }
  return r;
}

}  // namespace katsura
