// Command-line surface over the takagi library. Every subcommand prints a
// single JSON document on stdout (except the CSV emitters `graph` and
// `humps --format csv`) and a one-line human summary on stderr. Exit codes:
// 0 success, 2 domain or usage error, 3 budget exhausted with partial result.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "takagi/takagi.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace takagi;

json result_shell(const std::string& command, json inputs, json output,
                  std::vector<std::string> certificates, int exit_code) {
  json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["output"] = std::move(output);
  j["certificates"] = std::move(certificates);
  j["exit_code"] = exit_code;
  return j;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::string tail_name(Tail t) {
  switch (t) {
    case Tail::Terminated: return "terminated";
    case Tail::Periodic: return "periodic";
    default: return "truncated";
  }
}

json expansion_json(const TakagiExpansion& e) {
  json j;
  j["text"] = to_string(e);
  j["terms"] = e.terms;
  j["tail"] = tail_name(e.tail);
  if (e.tail == Tail::Periodic) j["cycle_entry"] = e.cycle_entry;
  return j;
}

json cardinality_json(const CardinalityResult& c) {
  json j;
  switch (c.kind) {
    case CardinalityResult::Kind::Exact:
      j["kind"] = "Exact";
      j["count"] = c.count;
      break;
    case CardinalityResult::Kind::Infinite:
      j["kind"] = "Infinite";
      break;
    default:
      j["kind"] = "AtLeast";
      j["count"] = c.count;
      break;
  }
  return j;
}

std::vector<std::string> split_certificates(const std::string& joined) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < joined.size()) {
    const std::size_t next = joined.find("; ", pos);
    if (next == std::string::npos) {
      out.push_back(joined.substr(pos));
      break;
    }
    out.push_back(joined.substr(pos, next - pos));
    pos = next + 2;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact computation with the Takagi function and its level sets"};
  app.require_subcommand(1);

  long budget = kDefaultBudget;
  int depth = 30;
  int max_k = 40;
  int max_order = 12;
  std::size_t max_terms = 64;

  // eval
  std::string eval_x;
  long partial_k = -1;
  auto* eval_cmd = app.add_subcommand("eval", "Exact value T(x) at a rational x in [0,1]");
  eval_cmd->add_option("x", eval_x, "abscissa as p/q")->required();
  eval_cmd->add_option("--partial", partial_k, "also report the partial sum T_k and its slope");

  // expand
  std::string expand_y;
  auto* expand_cmd = app.add_subcommand("expand", "Takagi expansion of an ordinate in [0,2/3]");
  expand_cmd->add_option("y", expand_y, "ordinate as p/q")->required();
  expand_cmd->add_option("--max-terms", max_terms, "term cap before truncation (default 64)");

  // solve
  std::string solve_y;
  bool solve_all = false;
  int solve_depth = 2;
  auto* solve_cmd = app.add_subcommand("solve", "Solutions of T(x) = y via Takagi expansions");
  solve_cmd->add_option("y", solve_y, "ordinate as p/q")->required();
  solve_cmd->add_flag("--all", solve_all, "also enumerate alternative expansions");
  solve_cmd->add_option("--depth", solve_depth, "rewrite applications for --all (default 2)");
  solve_cmd->add_option("--max-terms", max_terms, "term cap before truncation (default 64)");

  // cardinality
  std::string card_y;
  auto* card_cmd = app.add_subcommand("cardinality", "|L(y)| via the set-equation recursion");
  card_cmd->add_option("y", card_y, "ordinate as p/q")->required();
  card_cmd->add_option("--budget", budget, "work budget (default 10000)");

  // levelset
  std::string level_y;
  int cover_depth = 0;
  auto* level_cmd = app.add_subcommand("levelset", "Exact enumeration of a finite level set");
  level_cmd->add_option("y", level_y, "ordinate as p/q")->required();
  level_cmd->add_option("--budget", budget, "work budget (default 10000)");
  level_cmd->add_option("--cover-depth", cover_depth,
                        "also report the dyadic branch-and-bound cover at this depth");

  // humps
  std::string filter_name = "all";
  std::string format = "json";
  auto* humps_cmd = app.add_subcommand("humps", "Enumerate balanced-dyadic humps");
  humps_cmd->add_option("--max-order", max_order, "largest order to enumerate (default 12)");
  humps_cmd->add_option("--filter", filter_name, "all|first_generation|leading|non_subsidiary");
  humps_cmd->add_option("--format", format, "json|csv");

  // measure
  int depth_n = 2;
  auto* measure_cmd =
      app.add_subcommand("measure", "Certified bounds on the measure of the two-point set");
  measure_cmd->add_option("--depth-n", depth_n, "composition depth of removed intervals (default 2)");
  measure_cmd->add_option("--max-k", max_k, "largest band index enumerated (default 40)");

  // witness
  unsigned long long witness_n = 0;
  auto* witness_cmd = app.add_subcommand("witness", "Ordinate with |L(y)| = 2n, engine validated");
  witness_cmd->add_option("n", witness_n, "half of the target cardinality")->required();
  witness_cmd->add_option("--budget", budget, "work budget (default 10000)");

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "CSV of exact graph samples (i/2^m, T(i/2^m))");
  graph_cmd->add_option("--depth", depth, "dyadic sampling depth m (default 30 is far too fine; use <= 12)");

  CLI11_PARSE(app, argc, argv);

  if (eval_cmd->parsed()) {
    const Rational x = parse_rational(eval_x);
    const Rational v = takagi_eval(x);
    json out;
    out["value"] = to_string(v);
    if (partial_k >= 0) {
      const PartialEvaluation pe = takagi_partial(x, partial_k);
      out["partial"] = {{"k", pe.k}, {"value", to_string(pe.value)}, {"slope", pe.slope}};
    }
    emit(result_shell("eval", {{"x", eval_x}, {"partial", partial_k}}, out, {}, 0));
    std::cerr << "T(" << to_string(x) << ") = " << to_string(v) << "\n";
    return 0;
  }

  if (expand_cmd->parsed()) {
    const Rational y = parse_rational(expand_y);
    const TakagiExpansion e = canonical_expansion(y, max_terms);
    const int code = e.tail == Tail::Truncated ? 3 : 0;
    emit(result_shell("expand", {{"y", expand_y}, {"max_terms", max_terms}}, expansion_json(e),
                      {}, code));
    std::cerr << to_string(y) << " = " << to_string(e) << "\n";
    return code;
  }

  if (solve_cmd->parsed()) {
    const Rational y = parse_rational(solve_y);
    std::vector<SolvedExpansion> solutions;
    if (solve_all) {
      solutions = alternative_expansions(y, solve_depth, max_terms);
    } else {
      SolvedExpansion s{canonical_expansion(y, max_terms), std::nullopt};
      if (s.expansion.tail != Tail::Truncated) s.abscissa = to_abscissa(s.expansion);
      solutions.push_back(std::move(s));
    }
    json list = json::array();
    bool partial = false;
    for (const auto& s : solutions) {
      json item = expansion_json(s.expansion);
      if (s.abscissa) {
        if (takagi_eval(*s.abscissa) != y) throw std::logic_error("solve: verification failed");
        item["abscissa"] = to_string(*s.abscissa);
        item["verified"] = true;
      } else {
        item["abscissa"] = nullptr;
        partial = true;
      }
      list.push_back(std::move(item));
    }
    const int code = partial ? 3 : 0;
    emit(result_shell("solve",
                      {{"y", solve_y}, {"all", solve_all}, {"depth", solve_depth},
                       {"max_terms", max_terms}},
                      {{"solutions", list}}, {}, code));
    std::cerr << "T(x) = " << to_string(y) << ": " << list.size() << " expansion(s)\n";
    return code;
  }

  if (card_cmd->parsed()) {
    const Rational y = parse_rational(card_y);
    LevelSetEngine engine;
    const CardinalityResult c = engine.cardinality(y, budget);
    const int code = c.kind == CardinalityResult::Kind::AtLeast ? 3 : 0;
    emit(result_shell("cardinality", {{"y", card_y}, {"budget", budget}}, cardinality_json(c),
                      split_certificates(c.certificate), code));
    std::cerr << "|L(" << to_string(y) << ")|: " << cardinality_json(c).dump() << "\n";
    return code;
  }

  if (level_cmd->parsed()) {
    const Rational y = parse_rational(level_y);
    LevelSetEngine engine;
    const CardinalityResult c = engine.cardinality(y, budget);
    if (c.kind != CardinalityResult::Kind::Exact) {
      json out = cardinality_json(c);
      out["error"] = "level set is not certified finite";
      const int code = c.kind == CardinalityResult::Kind::Infinite ? 2 : 3;
      emit(result_shell("levelset", {{"y", level_y}, {"budget", budget}}, out,
                        split_certificates(c.certificate), code));
      std::cerr << "cannot enumerate: " << out["error"].get<std::string>() << "\n";
      return code;
    }
    const LevelSetEnumeration e = engine.enumerate_level_set(y, budget);
    json points = json::array();
    for (const auto& x : e.points) points.push_back(to_string(x));
    json out;
    out["cardinality"] = cardinality_json(c);
    out["points"] = points;
    out["complete"] = e.complete;
    if (cover_depth > 0) {
      const IntervalCover cover = level_set_cover(y, cover_depth);
      json clusters = json::array();
      for (const auto& [lo, hi] : cover.clusters)
        clusters.push_back({to_string(lo), to_string(hi)});
      out["cover"] = {{"depth", cover.depth},
                      {"clusters", clusters},
                      {"stabilized", cover.stabilized}};
    }
    emit(result_shell("levelset",
                      {{"y", level_y}, {"budget", budget}, {"cover_depth", cover_depth}}, out,
                      split_certificates(c.certificate), 0));
    std::cerr << "|L(" << to_string(y) << ")| = " << e.points.size() << "\n";
    return 0;
  }

  if (humps_cmd->parsed()) {
    HumpFilter filter = HumpFilter::All;
    if (filter_name == "first_generation") filter = HumpFilter::FirstGeneration;
    else if (filter_name == "leading") filter = HumpFilter::Leading;
    else if (filter_name == "non_subsidiary") filter = HumpFilter::NonSubsidiary;
    else if (filter_name != "all") throw std::domain_error("humps: unknown filter " + filter_name);
    const auto humps = enumerate_humps(max_order, filter);
    if (format == "csv") {
      std::cout << "x0,bits,order,generation,leading,first_generation,subsidiary,j_lo,j_hi\n";
      for (const auto& h : humps)
        std::cout << to_string(h.x0) << ',' << h.bits << ',' << h.order << ',' << h.generation
                  << ',' << int(h.leading) << ',' << int(h.first_generation) << ','
                  << int(h.subsidiary) << ',' << to_string(h.j_lo) << ',' << to_string(h.j_hi)
                  << '\n';
    } else if (format == "json") {
      json list = json::array();
      for (const auto& h : humps)
        list.push_back({{"x0", to_string(h.x0)},
                        {"bits", h.bits},
                        {"order", h.order},
                        {"generation", h.generation},
                        {"leading", h.leading},
                        {"first_generation", h.first_generation},
                        {"subsidiary", h.subsidiary},
                        {"i", {to_string(h.i_lo), to_string(h.i_hi)}},
                        {"j", {to_string(h.j_lo), to_string(h.j_hi)}}});
      emit(result_shell("humps", {{"max_order", max_order}, {"filter", filter_name}},
                        {{"humps", list}}, {}, 0));
    } else {
      throw std::domain_error("humps: unknown format " + format);
    }
    std::cerr << humps.size() << " hump(s)\n";
    return 0;
  }

  if (measure_cmd->parsed()) {
    const MeasureBounds b = s2_measure_bounds(depth_n, max_k);
    json out;
    out["lower"] = to_string(b.lower);
    out["upper"] = to_string(b.upper);
    out["lower_decimal"] = decimal_string(b.lower);
    out["upper_decimal"] = decimal_string(b.upper);
    out["union_measure"] = to_string(b.union_measure);
    out["tail_bound"] = to_string(b.tail_bound);
    emit(result_shell("measure", {{"depth_n", depth_n}, {"max_k", max_k}}, out, {}, 0));
    std::cerr << "lambda(S2) in [" << decimal_string(b.lower) << ", " << decimal_string(b.upper)
              << "]\n";
    return 0;
  }

  if (witness_cmd->parsed()) {
    LevelSetEngine engine;
    const WitnessConstruction w = engine.construct_witness(witness_n, budget);
    json out;
    out["target"] = w.target_cardinality;
    out["ordinate"] = to_string(w.ordinate);
    out["recipe"] = w.recipe;
    out["base"] = to_string(w.base_ordinate);
    out["validated"] = true;
    emit(result_shell("witness", {{"n", witness_n}, {"budget", budget}}, out, {}, 0));
    std::cerr << "|L(" << to_string(w.ordinate) << ")| = " << w.target_cardinality << "\n";
    return 0;
  }

  if (graph_cmd->parsed()) {
    if (depth < 0 || depth > 24) throw std::domain_error("graph: depth outside [0,24]");
    std::cout << "x_rational,x_decimal,y_rational,y_decimal\n";
    const Integer n = Integer(1) << static_cast<unsigned long>(depth);
    for (Integer i = 0; i <= n; ++i) {
      const Rational x(i, n);
      const Rational y = takagi_eval(x);
      std::cout << to_string(x) << ',' << decimal_string(x) << ',' << to_string(y) << ','
                << decimal_string(y) << '\n';
    }
    std::cerr << Integer(n + 1).str() << " samples\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::domain_error& e) {
    std::cout << json{{"error", e.what()}, {"exit_code", 2}}.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cout << json{{"error", e.what()}, {"exit_code", 2}}.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
