#pragma once

// JSON and plain-text renderings of analysis results.

#include <sstream>
#include <string>

#include <json.hpp>

#include "katsura/decisions.hpp"
#include "katsura/ktheory.hpp"

namespace katsura {

inline nlohmann::json to_json(Verdict const& v) {
  nlohmann::json reasons = nlohmann::json::array();
  for (auto const& r : v.reasons) {
    reasons.push_back({{"tag", r.tag}, {"text", r.text}});
  }
  return {{"value", to_string(v.value)}, {"reasons", reasons}};
}

inline nlohmann::json to_json(AbelianGroup const& g) {
  nlohmann::json torsion = nlohmann::json::array();
  for (auto const& d : g.torsion) {
    // Invariant factors may exceed 64 bits; strings keep them exact.
    if (d <= std::numeric_limits<std::int64_t>::max()) {
      torsion.push_back(static_cast<std::int64_t>(d));
    } else {
      torsion.push_back(d.str());
    }
  }
  return {{"free_rank", g.free_rank}, {"torsion", torsion}};
}

inline nlohmann::json to_json(KTheoryResult const& k) {
  return {{"K0", to_json(k.k0)}, {"K1", to_json(k.k1)}};
}

inline nlohmann::json to_json(AnalysisReport const& r) {
  nlohmann::json doc;
  for (auto const& [name, v] : r.verdicts()) {
    doc[name] = to_json(*v);
  }
  doc["kgroups"] = to_json(r.kgroups);
  doc["notes"] = r.notes;
  return doc;
}

inline std::string to_text(KTheoryResult const& k) {
  return "K0 = " + to_string(k.k0) + "\nK1 = " + to_string(k.k1) + "\n";
}

inline std::string to_text(AnalysisReport const& r) {
  std::ostringstream out;
  for (auto const& [name, v] : r.verdicts()) {
    out << name << ": " << to_string(v->value);
    if (!v->reasons.empty()) {
      out << " (";
      for (std::size_t k = 0; k < v->reasons.size(); ++k) {
        out << (k == 0 ? "" : "; ") << v->reasons[k].text;
      }
      out << ")";
    }
    out << "\n";
  }
  out << to_text(r.kgroups);
  for (auto const& n : r.notes) {
    out << "note: " << n << "\n";
  }
  return out.str();
}

}  // namespace katsura
