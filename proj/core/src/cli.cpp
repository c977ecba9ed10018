#include "evident/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evident/bext.hpp"
#include "evident/defaults.hpp"
#include "evident/errors.hpp"
#include "evident/kb.hpp"
#include "evident/montecarlo.hpp"
#include "evident/parser.hpp"
#include "evident/sat.hpp"
#include "evident/sources.hpp"

namespace evident {

namespace {

using nlohmann::ordered_json;

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open knowledge base '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_kb(text.str());
}

std::string id_set(const std::vector<std::size_t>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(ids[i]);
  }
  return out + "}";
}

std::string base_set(const TheoryBase& theory) {
  std::string out = "{";
  for (std::size_t i = 0; i < theory.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(theory.formulas()[i]);
  }
  return out + "}";
}

void extensions_text(std::ostream& out, const std::vector<Extension>& exts) {
  out << "extensions: " << exts.size() << "\n";
  for (std::size_t i = 0; i < exts.size(); ++i) {
    const Extension& e = exts[i];
    out << (i + 1) << ": generator " << id_set(e.generator.members()) << " fired "
        << id_set(e.fired) << " base " << base_set(e.theory) << "\n";
  }
}

ordered_json extensions_json(const std::string& command, const std::vector<Extension>& exts) {
  ordered_json j;
  j["command"] = command;
  j["extensions"] = ordered_json::array();
  for (const Extension& e : exts) {
    ordered_json item;
    item["generator"] = e.generator.members();
    item["fired"] = e.fired;
    ordered_json base = ordered_json::array();
    for (const Formula& f : e.theory.formulas()) base.push_back(to_string(f));
    item["base"] = std::move(base);
    j["extensions"].push_back(std::move(item));
  }
  return j;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"belief and default-extension queries over rule knowledge bases"};
  app.name("evident");
  app.require_subcommand(1);

  std::string kb_path;
  bool as_json = false;
  std::string model = "ds";
  std::string query;
  std::uint64_t trials = McConfig{}.trials;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--kb", kb_path, "knowledge base file")->required();
    cmd->add_flag("--json", as_json, "emit a JSON report");
  };
  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", model, "probability model (ds or priority)")
        ->check(CLI::IsMember({"ds", "priority"}));
  };

  CLI::App* cmd_check = app.add_subcommand("check", "parse and validate a knowledge base");
  add_common(cmd_check);

  CLI::App* cmd_bel = app.add_subcommand("bel", "exact belief in a formula");
  cmd_bel->add_option("formula", query, "query formula")->required();
  add_common(cmd_bel);
  add_model(cmd_bel);

  CLI::App* cmd_mc = app.add_subcommand("mc-bel", "Monte-Carlo belief estimate");
  cmd_mc->add_option("formula", query, "query formula")->required();
  add_common(cmd_mc);
  cmd_mc->add_option("--trials", trials, "number of trials");
  cmd_mc->add_option("--seed", seed, "RNG seed");

  CLI::App* cmd_ext = app.add_subcommand("extensions", "classical extensions of the defaults");
  add_common(cmd_ext);

  CLI::App* cmd_mext =
      app.add_subcommand("m-extensions", "maximal delta-consistent extensions");
  add_common(cmd_mext);

  CLI::App* cmd_bext =
      app.add_subcommand("b-extensions", "extensions reached as reliabilities tend to one");
  add_common(cmd_bext);
  add_model(cmd_bext);

  CLI::App* cmd_belstar =
      app.add_subcommand("belstar", "belief range over the extensions of the defaults");
  cmd_belstar->add_option("formula", query, "query formula")->required();
  add_common(cmd_belstar);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    KnowledgeBase kb = load_kb(kb_path);
    auto require_rule_base = [&]() {
      if (kb.has_defaults()) {
        throw ValidationError(
            "the knowledge base declares defaults; use belstar or the extension commands");
      }
    };

    if (app.got_subcommand(cmd_check)) {
      bool consistent = satisfiable(kb.facts);
      if (as_json) {
        ordered_json j;
        j["command"] = "check";
        j["atoms"] = kb.atoms().size();
        j["facts"] = kb.facts.size();
        j["rules"] = kb.rules.size();
        j["defaults"] = kb.defaults.size();
        j["facts_consistent"] = consistent;
        emit(out, j);
      } else {
        out << "atoms: " << kb.atoms().size() << "\n"
            << "facts: " << kb.facts.size() << "\n"
            << "rules: " << kb.rules.size() << "\n"
            << "defaults: " << kb.defaults.size() << "\n"
            << "facts consistent: " << (consistent ? "yes" : "no") << "\n";
      }
    } else if (app.got_subcommand(cmd_bel)) {
      require_rule_base();
      Formula d = parse_formula(query);
      double value = belief_exact(kb.evidence_model(model == "priority"), d);
      if (as_json) {
        ordered_json j;
        j["command"] = "bel";
        j["query"] = to_string(d);
        j["model"] = model;
        j["value"] = value;
        emit(out, j);
      } else {
        out << "Bel(" << to_string(d) << ") = " << fixed9(value) << "\n";
      }
    } else if (app.got_subcommand(cmd_mc)) {
      require_rule_base();
      Formula d = parse_formula(query);
      McConfig cfg;
      cfg.trials = trials;
      cfg.seed = seed;
      McEstimate est = belief_monte_carlo(kb.evidence_model(), d, cfg);
      if (as_json) {
        ordered_json j;
        j["command"] = "mc-bel";
        j["query"] = to_string(d);
        j["model"] = "ds";
        j["estimate"] = est.estimate;
        j["ci_low"] = est.ci_low;
        j["ci_high"] = est.ci_high;
        j["trials"] = est.trials;
        j["seed"] = seed;
        j["successes"] = est.successes;
        j["rejected_samples"] = est.rejected_samples;
        emit(out, j);
      } else {
        out << "estimate(" << to_string(d) << ") = " << fixed9(est.estimate) << "\n"
            << "ci95 = [" << fixed9(est.ci_low) << ", " << fixed9(est.ci_high) << "]\n"
            << "trials = " << est.trials << ", seed = " << seed
            << ", successes = " << est.successes << ", rejected = " << est.rejected_samples
            << "\n";
      }
    } else if (app.got_subcommand(cmd_ext) || app.got_subcommand(cmd_mext)) {
      DefaultTheory dt = kb.default_theory();
      bool reiter = app.got_subcommand(cmd_ext);
      auto exts = reiter ? reiter_extensions(dt) : m_extensions(dt);
      if (as_json) {
        emit(out, extensions_json(reiter ? "extensions" : "m-extensions", exts));
      } else {
        extensions_text(out, exts);
      }
    } else if (app.got_subcommand(cmd_bext)) {
      BExtensions bx;
      if (kb.has_defaults()) {
        if (cmd_bext->count("--model") > 0) {
          throw ValidationError("--model applies only to rule knowledge bases");
        }
        bx = b_extensions(kb.default_theory());
      } else {
        bx = b_extensions(kb.evidence_model(model == "priority"));
      }
      if (bx.sigma_theory_divergence) {
        err << "warning: index-set-maximal and theory-maximal readings disagree; "
               "reporting theory-maximal extensions\n";
      }
      if (as_json) {
        ordered_json j = extensions_json("b-extensions", bx.extensions);
        j["divergence_warning"] = bx.sigma_theory_divergence;
        emit(out, j);
      } else {
        extensions_text(out, bx.extensions);
      }
    } else if (app.got_subcommand(cmd_belstar)) {
      Formula d = parse_formula(query);
      CombinedBelief cb = combined_belief(kb.combined_model(), d);
      if (as_json) {
        ordered_json j;
        j["command"] = "belstar";
        j["query"] = to_string(d);
        j["lower"] = cb.lower;
        j["upper"] = cb.upper;
        j["average"] = cb.average;
        emit(out, j);
      } else {
        out << "BEL_*(" << to_string(d) << ") = " << fixed9(cb.lower) << "\n"
            << "BEL^*(" << to_string(d) << ") = " << fixed9(cb.upper) << "\n"
            << "BEL-average(" << to_string(d) << ") = " << fixed9(cb.average) << "\n";
      }
    }
    return 0;
  } catch (const ContradictorySources& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeLimit& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RejectionLimit& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (near '" << e.snippet() << "')\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace evident
