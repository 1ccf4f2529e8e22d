// Command-line front end: scripted evidence ledgers, model queries,
// provisional measures, and the brute-force oracle.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "credal/errors.hpp"
#include "credal/measures.hpp"
#include "credal/oracle.hpp"
#include "credal/script.hpp"

namespace {

using nlohmann::json;

credal::ConstraintSet load_model_file(const std::string& path, std::size_t letter_cap) {
  std::ifstream in(path);
  if (!in) throw credal::Error("cannot open model file '" + path + "'");
  return credal::load_model(in, path, letter_cap);
}

void print_plain_report(const json& report) {
  for (const auto& w : report["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
  for (const auto& entry : report["ledger"]) {
    if (entry["kind"] != "query") continue;
    std::cout << entry["text"].get<std::string>() << " = " << entry["answer"].dump() << "\n";
  }
  if (report.contains("oracle_check"))
    std::cout << "oracle check: " << report["oracle_check"].dump() << "\n";
}

json distribution_report(const credal::ProbFunction& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.masses().size(); ++i)
    if (p.mass(i) != 0)
      out.push_back(std::to_string(i) + ":" + credal::format_rational(p.mass(i)));
  return out;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"belief-change engine: constraining, conditioning and "
               "minimum-cross-entropy updating over credal sets"};
  app.require_subcommand(1);

  credal::ScriptOptions opts;
  app.add_option("--mce.residual_tol", opts.mce.residual_tol,
                 "constraint residual tolerance of the MCE solver");
  app.add_option("--mce.max_iters", opts.mce.max_iters, "MCE solver iteration cap");
  app.add_option("--caps.vertex_n", opts.vertex_letter_cap,
                 "letter cap for vertex/event enumeration");
  app.add_option("--caps.letters", opts.letter_cap, "letter cap for languages");

  auto* run = app.add_subcommand("run", "execute a script of evidence entries and queries");
  std::string script_path;
  bool as_json = false;
  run->add_option("script", script_path, "script file")->required();
  run->add_flag("--json", as_json, "emit the full JSON report");
  run->add_flag("--oracle", opts.oracle_check,
                "cross-check envelope answers against the vertex oracle");

  auto* query = app.add_subcommand("query", "answer queries against a model file");
  std::string model_path;
  std::vector<std::string> query_exprs;
  query->add_option("-m,--model", model_path, "model file")->required();
  query->add_option("expr", query_exprs, "query expressions")->required();

  auto* measure_cmd = app.add_subcommand("measure", "uncertainty and ignorance of a model");
  measure_cmd->add_option("-m,--model", model_path, "model file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
  oracle_cmd->require_subcommand(1);
  unsigned resolution = 20;
  std::string prior_literal;
  auto* grid = oracle_cmd->add_subcommand("grid", "feasible grid distributions");
  grid->add_option("-m,--model", model_path, "model file")->required();
  grid->add_option("--resolution", resolution, "grid denominator");
  auto* verts = oracle_cmd->add_subcommand("vertices", "polytope vertices");
  verts->add_option("-m,--model", model_path, "model file")->required();
  auto* klmin = oracle_cmd->add_subcommand("kl-min", "grid minimizer of I(., prior)");
  klmin->add_option("-m,--model", model_path, "model file")->required();
  klmin->add_option("--resolution", resolution, "grid denominator");
  klmin->add_option("--prior", prior_literal, "prior as 'index:rational ...'")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::ifstream in(script_path);
    if (!in) throw credal::Error("cannot open script '" + script_path + "'");
    json report = credal::run_script(in, script_path, opts);
    if (as_json)
      std::cout << report.dump(2) << "\n";
    else
      print_plain_report(report);
    return 0;
  }

  if (query->parsed()) {
    auto base = load_model_file(model_path, opts.letter_cap);
    credal::Session session(base.lang, opts);
    for (const auto& c : base.constraints) session.constrain_entry(c);
    json answers = json::object();
    for (const auto& expr : query_exprs) answers[expr] = session.query(expr);
    std::cout << answers.dump(2) << "\n";
    return 0;
  }

  if (measure_cmd->parsed()) {
    auto model = credal::PartialModel::from_constraints(
        load_model_file(model_path, opts.letter_cap));
    credal::MeasureReport r = credal::measure(model, opts.mce, opts.vertex_letter_cap);
    json out{{"uncertainty_bits", r.uncertainty_bits},
             {"ignorance", r.ignorance},
             {"note", "provisional measures"}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  auto base = load_model_file(model_path, opts.letter_cap);
  if (grid->parsed()) {
    json out = json::array();
    for (const auto& p : credal::oracle::grid_points(base, {resolution}))
      out.push_back(distribution_report(p));
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (verts->parsed()) {
    json out = json::array();
    for (const auto& p : credal::oracle::vertices(base, opts.vertex_letter_cap))
      out.push_back(distribution_report(p));
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  // kl-min
  credal::ProbFunction prior = credal::parse_distribution(prior_literal, base.lang);
  auto [point, objective] = credal::oracle::kl_grid_min(prior, base, {resolution});
  json out{{"point", distribution_report(point)}, {"objective_nats", objective}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const credal::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const credal::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const credal::NullEvidenceError& e) {
    std::cerr << "null evidence: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
