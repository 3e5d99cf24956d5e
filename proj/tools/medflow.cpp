#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "medflow/observer.hpp"
#include "medflow/parser.hpp"
#include "medflow/scenario.hpp"
#include "medflow/symexec.hpp"

using namespace medflow;

namespace {

enum Exit { kOk = 0, kRejected = 1, kLoad = 2, kViolation = 3, kBudget = 4 };

std::size_t env_budget() {
  const char* s = std::getenv("MEDFLOW_BUDGET");
  if (!s) return 1000;
  try {
    return static_cast<std::size_t>(std::stoul(s));
  } catch (...) {
    return 1000;
  }
}

std::set<std::string> split(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

int cmd_typecheck(const Scenario& sc, const std::string& program, bool levels) {
  const auto& pe = sc.program(program);
  auto tp = infer(pe.program);
  if (levels) {
    std::cout << tp.report();
  } else {
    for (const auto& v : tp.violations) std::cout << "violation " << v.str() << "\n";
    std::cout << (tp.accepted() ? "accepted" : "rejected") << "\n";
  }
  return tp.accepted() ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"medflow: typed mediator with flow tracking and censoring"};
  app.require_subcommand(1);
  std::string scenario_path, program, db_text, props, format = "text";
  std::size_t budget = env_budget();
  bool no_censor = false, emit_levels = false, trace = false, trace_views = false, trace_censor = false, persist = false;

  auto* tc = app.add_subcommand("typecheck", "level and fragment report");
  tc->add_option("scenario", scenario_path)->required();
  tc->add_option("--program", program);
  tc->add_flag("--emit-levels", emit_levels);

  auto* run = app.add_subcommand("run", "mediated run on one database state");
  run->add_option("scenario", scenario_path)->required();
  run->add_option("--db", db_text)->required();
  run->add_option("--program", program);
  run->add_flag("--trace", trace);
  run->add_flag("--trace-views", trace_views);
  run->add_flag("--trace-censor", trace_censor);
  run->add_flag("--persist-view", persist, "read and update the partner's previous view");

  auto* verify = app.add_subcommand("verify", "exhaustive property check");
  verify->add_option("scenario", scenario_path)->required();
  verify->add_option("--program", program);
  verify->add_option("--properties", props, "comma list of p1,p2,p3,p4,t1,t2,t3");
  verify->add_option("--budget", budget, "maximum number of states to simulate");
  verify->add_flag("--no-censor", no_censor, "forward declassified values unchanged (negative control)");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* oracle = app.add_subcommand("oracle", "uncensored concrete run");
  oracle->add_option("scenario", scenario_path)->required();
  oracle->add_option("--db", db_text)->required();
  oracle->add_option("--program", program);

  auto* dump = app.add_subcommand("dump-symexec", "symbolic expressions per fragment");
  dump->add_option("scenario", scenario_path)->required();
  dump->add_option("--program", program);

  CLI11_PARSE(app, argc, argv);

  Scenario sc;
  try {
    sc = load_scenario(scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return kLoad;
  }

  try {
    if (*tc) return cmd_typecheck(sc, program, emit_levels);

    if (*dump) {
      const auto& pe = sc.program(program);
      auto tp = typecheck(pe.program);
      for (const auto& f : tp.fragments) {
        std::cout << "fragment " << f.id << " [";
        for (std::size_t i = 0; i < f.stmts.size(); ++i) std::cout << (i ? "," : "") << f.stmts[i]->id;
        std::cout << "]\n" << sym_exec(to_tree(f.stmts), tp).dump();
      }
      return kOk;
    }

    if (*oracle) {
      const auto& pe = sc.program(program);
      State db = parse_state(sc.schema, db_text);
      Operators ops(&sc.schema, &sc.hierarchy);
      auto r = run_concrete(pe.program, pe.args, db, EvalCtx{&sc.schema, &ops});
      std::cout << r.reaction.str() << "\n";
      return kOk;
    }

    std::shared_ptr<System> sys;
    std::optional<StateSet> view;
    if (*run && persist) view = load_view(sc);
    try {
      sys = build_system(sc, program, view);
    } catch (const TypeError& e) {
      std::cerr << "type error: " << e.what() << "\n";
      return kRejected;
    }

    if (*run) {
      State db = parse_state(sc.schema, db_text);
      if (sys->space().index_of(db) < 0) throw ScenarioError("db outside the state space");
      auto tr = run_mediated(*sys, db);
      if (trace || trace_views || trace_censor)
        std::cout << tr.dump(*sys, trace_views, trace_censor);
      else
        std::cout << tr.reaction.str() << "\n";
      if (persist) save_view(sc, tr.steps.back().st.view);
      return kOk;
    }

    if (*verify) {
      CheckOptions co;
      co.properties = split(props);
      for (const auto& p : co.properties)
        if (std::find(all_properties().begin(), all_properties().end(), p) == all_properties().end())
          throw ScenarioError("unknown property '" + p + "'");
      co.budget = budget;
      co.censor = !no_censor;
      auto rep = check_properties(*sys, co);
      std::cout << (format == "json" ? rep.json() : rep.text());
      // Knowledge over a subset of Ω is not the observer's knowledge, so a
      // partial report is inconclusive either way.
      if (rep.partial) return kBudget;
      return rep.all_pass() ? kOk : kViolation;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return kLoad;
  } catch (const SchemaError& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return kLoad;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kOk;
}
