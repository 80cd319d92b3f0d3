#pragma once

// The katsura command line. `run` is the whole program minus main(), so the
// tests can drive it with string streams.
//
// Exit codes: 0 success, 1 validation/semantic/domain errors, 2 parse and
// usage errors, 3 when --strict meets an unknown verdict.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "katsura/decisions.hpp"
#include "katsura/inverse_semigroup.hpp"
#include "katsura/ktheory.hpp"
#include "katsura/path_space.hpp"
#include "katsura/report_json.hpp"
#include "katsura/semigroupoid.hpp"
#include "katsura/text_format.hpp"

namespace katsura::cli {

namespace detail {

  struct IoError : Error {
    explicit IoError(std::string const& what) : Error("io_error", what) {}
  };

  inline std::string slurp(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  inline MatrixPair load(std::string const& path, bool check = true) {
    return parse_matrix_json(slurp(path), check);
  }

  inline void report_error(std::ostream& err, Error const& e) {
    nlohmann::json doc{{"kind", e.kind()}, {"message", e.what()}};
    if (auto const* p = dynamic_cast<ParseError const*>(&e)) {
      doc["position"] = p->position();
      doc["expected"] = p->expected();
      doc["excerpt"] = p->excerpt();
    }
    err << doc.dump() << "\n";
  }

  inline int exit_code(Error const& e) {
    return e.kind() == "parse_error" ? 2 : 1;
  }

  inline ISgElement as_isg(Element const& e, char const* what) {
    if (auto const* x = std::get_if<ISgElement>(&e)) {
      return *x;
    }
    throw SemanticError(std::string(what)
                        + " needs an element of S^{A,B} (s, u, q, 0)");
  }

  inline std::string strip_space(std::string const& s) {
    std::string out;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        out += c;
      }
    }
    return out;
  }

}  // namespace detail

inline int run(int argc, char const* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact computations with Katsura algebra data (A, B)",
               "katsura"};
  app.require_subcommand(1);

  std::string file;
  std::string expr1;
  std::string expr2;
  std::string path;
  std::string k0;
  std::string k1;
  bool        json = false;
  bool        strict = false;
  bool        raw = false;
  std::size_t depth = 10;
  std::size_t depth_cap = 0;
  int         probe_l = 4;

  auto* validate_cmd = app.add_subcommand("validate", "check Condition (0)");
  validate_cmd->add_option("FILE", file, "matrix file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "run every decision");
  analyze_cmd->add_option("FILE", file, "matrix file")->required();
  analyze_cmd->add_flag("--json", json, "emit JSON");
  analyze_cmd->add_flag("--strict", strict, "exit 3 on any unknown verdict");
  analyze_cmd->add_option("--depth-cap", depth_cap, "state cap for searches")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--probe-l", probe_l, "probe u_i^l for |l| <= L")
      ->check(CLI::PositiveNumber);

  auto* kgroups_cmd = app.add_subcommand("kgroups", "K0 and K1");
  kgroups_cmd->add_option("FILE", file, "matrix file")->required();
  kgroups_cmd->add_flag("--json", json, "emit JSON");

  auto* realize_cmd
      = app.add_subcommand("realize", "find (A, B) with given K-groups");
  realize_cmd->add_option("--k0", k0, "group expression")->required();
  realize_cmd->add_option("--k1", k1, "group expression")->required();
  realize_cmd->add_flag("--json", json, "emit JSON");

  auto* normalize_cmd = app.add_subcommand("normalize", "normal form");
  normalize_cmd->add_option("EXPR", expr1, "element")->required();
  normalize_cmd->add_option("FILE", file, "matrix file")->required();
  normalize_cmd->add_flag("--raw", raw, "echo without normalizing");

  auto* mul_cmd = app.add_subcommand("mul", "product or composition");
  mul_cmd->add_option("EXPR1", expr1, "element")->required();
  mul_cmd->add_option("EXPR2", expr2, "element")->required();
  mul_cmd->add_option("FILE", file, "matrix file")->required();

  auto* lcm_cmd = app.add_subcommand("lcm", "least common multiple");
  lcm_cmd->add_option("EXPR1", expr1, "element")->required();
  lcm_cmd->add_option("EXPR2", expr2, "element")->required();
  lcm_cmd->add_option("FILE", file, "matrix file")->required();

  auto* act_cmd = app.add_subcommand("act", "act on a path");
  act_cmd->add_option("EXPR", expr1, "element of S^{A,B}")->required();
  act_cmd->add_option("PATH", path, "finite or eventually periodic path")
      ->required();
  act_cmd->add_option("FILE", file, "matrix file")->required();
  act_cmd->add_option("--depth", depth, "letters of the image")
      ->check(CLI::PositiveNumber);

  auto* fixed_cmd = app.add_subcommand("fixedpoint", "the fixed point");
  fixed_cmd->add_option("EXPR", expr1, "element of S^{A,B}")->required();
  fixed_cmd->add_option("FILE", file, "matrix file")->required();
  fixed_cmd->add_option("--depth", depth, "letters to print")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* germ_cmd = app.add_subcommand("germ-eq", "compare germs");
  germ_cmd->add_option("EXPR1", expr1, "element of S^{A,B}")->required();
  germ_cmd->add_option("EXPR2", expr2, "element of S^{A,B}")->required();
  germ_cmd->add_option("--at", path, "eventually periodic point")->required();
  germ_cmd->add_option("FILE", file, "matrix file")->required();
  germ_cmd->add_option("--depth-cap", depth_cap, "prefix lengths to try")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return 0;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (CLI::ParseError const& e) {
    err << nlohmann::json{{"kind", "parse_error"},
                          {"message", std::string("usage: ") + e.what()}}
               .dump()
        << "\n";
    return 2;
  }

  try {
    if (validate_cmd->parsed()) {
      auto const pair = detail::load(file, false);
      auto const report = validate(pair);
      if (report.ok()) {
        out << "ok\n";
        return 0;
      }
      nlohmann::json list = nlohmann::json::array();
      for (auto const& v : report.violations) {
        out << v.message << "\n";
        list.push_back(v.message);
      }
      err << nlohmann::json{{"kind", "validation_error"},
                            {"message", "Condition (0) violated"},
                            {"violations", list}}
                 .dump()
          << "\n";
      return 1;
    }
    if (analyze_cmd->parsed()) {
      auto const pair = detail::load(file, false);
      Caps       caps;
      caps.probe_l = probe_l;
      if (depth_cap > 0) {
        caps.fixed_cylinder_cap = depth_cap;
        caps.germ_depth = depth_cap;
      }
      auto const report = analyze(pair, caps);
      out << (json ? to_json(report).dump(2) + "\n" : to_text(report));
      if (strict) {
        for (auto const& [name, v] : report.verdicts()) {
          if (v->unknown()) {
            return 3;
          }
        }
      }
      return 0;
    }
    if (kgroups_cmd->parsed()) {
      auto const k = k_groups(detail::load(file));
      out << (json ? to_json(k).dump() + "\n" : to_text(k));
      return 0;
    }
    if (realize_cmd->parsed()) {
      auto const g0 = parse_group(k0);
      auto const g1 = parse_group(k1);
      auto const pair = realize(g0, g1);
      auto const k = k_groups(pair);
      if (json) {
        auto doc = nlohmann::json::parse(to_json_text(pair));
        doc["K0"] = to_json(k.k0);
        doc["K1"] = to_json(k.k1);
        out << doc.dump() << "\n";
      } else {
        out << to_json_text(pair) << "\n" << to_text(k);
      }
      return 0;
    }
    if (normalize_cmd->parsed()) {
      auto const pair = detail::load(file);
      auto const e = parse_element(expr1, pair);
      out << (raw ? detail::strip_space(expr1) : to_string(e)) << "\n";
      return 0;
    }
    if (mul_cmd->parsed() || lcm_cmd->parsed()) {
      auto const pair = detail::load(file);
      auto const x = parse_element(expr1, pair);
      auto const y = parse_element(expr2, pair);
      if (x.index() != y.index()) {
        throw SemanticError("both elements must come from the same structure");
      }
      if (auto const* f = std::get_if<SgpElement>(&x)) {
        auto const& g = std::get<SgpElement>(y);
        auto const  r = mul_cmd->parsed() ? compose(pair, *f, g)
                                          : lcm(pair, *f, g);
        out << (r ? to_string(*r)
                  : std::string(mul_cmd->parsed() ? "undefined" : "none"))
            << "\n";
        return 0;
      }
      if (lcm_cmd->parsed()) {
        throw SemanticError("lcm needs semigroupoid elements (h, g)");
      }
      out << to_string(multiply(pair, std::get<ISgElement>(x),
                                std::get<ISgElement>(y)))
          << "\n";
      return 0;
    }
    if (act_cmd->parsed()) {
      auto const pair = detail::load(file);
      auto const s = detail::as_isg(parse_element(expr1, pair), "act");
      auto const p = parse_point(path, pair);
      if (auto const* gamma = std::get_if<FinitePath>(&p)) {
        auto const r = act_on_prefix(pair, s, *gamma);
        if (std::holds_alternative<ActZero>(r)) {
          out << "0\n";
        } else if (std::holds_alternative<NeedLongerPrefix>(r)) {
          out << "need longer prefix\n";
        } else {
          auto const& res = std::get<ActResult>(r);
          out << to_string(res.prefix) << " residual " << res.residual.str()
              << "\n";
        }
        return 0;
      }
      auto const r
          = act_on_periodic(pair, s, std::get<EventuallyPeriodicPath>(p), depth);
      out << (r ? to_string(*r) : std::string("0")) << "\n";
      return 0;
    }
    if (fixed_cmd->parsed()) {
      auto const pair = detail::load(file);
      auto const s = detail::as_isg(parse_element(expr1, pair), "fixedpoint");
      auto const r = generate_fixed_point(pair, s, depth);
      out << (r ? to_string(*r) : std::string("none")) << "\n";
      return 0;
    }
    if (germ_cmd->parsed()) {
      auto const pair = detail::load(file);
      auto const s = detail::as_isg(parse_element(expr1, pair), "germ-eq");
      auto const t = detail::as_isg(parse_element(expr2, pair), "germ-eq");
      auto const x = parse_periodic_path(path, pair);
      out << to_string(germ_equal(pair, s, t, x,
                                  depth_cap > 0 ? depth_cap : 32))
          << "\n";
      return 0;
    }
  } catch (Error const& e) {
    detail::report_error(err, e);
    return detail::exit_code(e);
  }
  return 0;
}

inline int run(std::vector<std::string> const& args, std::ostream& out,
               std::ostream& err) {
  std::vector<char const*> argv{"katsura"};
  for (auto const& a : args) {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace katsura::cli
