#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "lotcycle/errors.hpp"
#include "lotcycle/evaluator.hpp"
#include "lotcycle/io.hpp"
#include "lotcycle/oracles.hpp"
#include "lotcycle/reductions.hpp"
#include "lotcycle/solvers.hpp"
#include "lotcycle/transforms.hpp"

namespace lotcycle::cli {

namespace {

using io::Json;

struct Options {
  std::string instance_path;
  std::string schedule_path;
  std::string tsp_path;
  std::string csv_path;
  std::string transform;
  std::string variant = "discrete";
  std::string t_value;
  std::int64_t initial_stock = 0;
  std::size_t period = 0;
  bool fixpoint = false;

  // oracle
  std::int64_t p = 0, d = 0, h = 1, max_length = 0;
  std::int64_t budget = 0;
  std::string a_value, b_value;
  double tolerance = 1e-12;

  // gen
  std::uint64_t seed = 0;
  std::size_t products = 2;
  std::int64_t max_rate = 10;
  std::int64_t max_holding = 5;
  std::int64_t max_switch = 10;
  bool allow_infeasible = false;
};

Instance load_instance(const std::string& path) {
  Instance instance = io::instance_from_json(io::read_json_file(path));
  require_valid(instance);
  return instance;
}

// Accepts a bare schedule document or any document with a "schedule" field
// (as emitted by `solve`).
CyclicSchedule load_schedule(const std::string& path, const Instance& instance) {
  Json doc = io::read_json_file(path);
  if (doc.is_object() && doc.contains("schedule") && !doc.contains("phases") && !doc.contains("slots")) {
    doc = doc.at("schedule");
  }
  return io::schedule_from_json(doc, instance);
}

std::int64_t default_budget() {
  if (const char* env = std::getenv("LOTCYCLE_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string("LOTCYCLE_BUDGET is not an integer: ") + env);
    }
  }
  return kDefaultSearchBudget;
}

std::string case_name(const Instance& instance) {
  const char tag = instance.variant == Variant::Continuous ? 'C' : instance.variant == Variant::Discrete ? 'D' : 'F';
  return std::string("LSP(") + tag + "," + std::to_string(instance.size()) + ")";
}

int cmd_feasible(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance_path);
  const Feasibility f = check_feasibility(instance);
  out << Json{{"feasible", f.feasible}, {"load", io::to_json(f.load)}, {"load_decimal", f.load.decimal()}}.dump(2)
      << '\n';
  return f.feasible ? 0 : 1;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance_path);
  out << io::to_json(construct_feasible(instance)).dump(2) << '\n';
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance_path);
  Json doc{{"instance", io::to_json(instance)}, {"case", case_name(instance)}};
  const std::size_t n = instance.size();
  if (n == 1 && instance.variant == Variant::Continuous) {
    auto solution = solve_c1(instance);
    doc["schedule"] = io::to_json(CyclicSchedule(solution.schedule));
    doc["report"] = io::to_json(solution.report);
  } else if (n == 1 && instance.variant == Variant::Discrete) {
    auto solution = solve_d1(instance);
    doc["schedule"] = io::to_json(CyclicSchedule(solution.schedule));
    doc["report"] = io::to_json(solution.report);
  } else if (n == 1 && instance.variant == Variant::Fixed) {
    auto solution = solve_f1(instance, o.initial_stock);
    Json body = io::to_json(solution);
    doc["schedule"] = body["schedule"];
    body.erase("schedule");
    doc["report"] = io::to_json(evaluate(instance, solution.schedule));
    doc["solution"] = body;
  } else if (n == 2 && instance.variant == Variant::Continuous) {
    auto solution = solve_c2(instance);
    const Rational t = o.t_value.empty() ? solution.t_star.convergent() : Rational::parse(o.t_value);
    Json body = io::to_json(solution, t);
    doc["schedule"] = body["schedule"];
    body.erase("schedule");
    doc["report"] = io::to_json(evaluate(instance, solution.schedule_at(t)));
    doc["solution"] = body;
  } else {
    throw Error(ErrorKind::UnsupportedCase,
                "no exact algorithm is known for " + case_name(instance) +
                    "; closed forms exist only for LSP(C,1), LSP(D,1), LSP(F,1) and LSP(C,2)");
  }
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance_path);
  out << io::to_json(evaluate(instance, load_schedule(o.schedule_path, instance))).dump(2) << '\n';
  return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance_path);
  const auto violations = validate_schedule(instance, load_schedule(o.schedule_path, instance));
  out << Json{{"valid", violations.empty()}, {"violations", io::to_json(violations)}}.dump(2) << '\n';
  return violations.empty() ? 0 : 1;
}

int cmd_improve(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(o.instance_path);
  const CyclicSchedule schedule = load_schedule(o.schedule_path, instance);
  const TransformKind kind = o.transform == "canonicalize" ? TransformKind::Canonicalize
                             : o.transform == "average"    ? TransformKind::Average
                                                           : TransformKind::Deidle;
  auto continuous = [&]() -> const ContinuousSchedule& {
    if (!std::holds_alternative<ContinuousSchedule>(schedule)) {
      throw Error(ErrorKind::MismatchedVariant, o.transform + " needs a continuous schedule");
    }
    return std::get<ContinuousSchedule>(schedule);
  };

  CyclicSchedule result = schedule;
  try {
    if (o.fixpoint) {
      if (kind == TransformKind::Average) continuous();
      result = apply_to_fixpoint(instance, schedule, kind);
    } else if (kind == TransformKind::Canonicalize) {
      result = canonicalize_production_period(instance, continuous(), o.period);
    } else if (kind == TransformKind::Average) {
      result = average_to_simple_cycle(instance, continuous());
    } else {
      result = improve_idle(instance, schedule);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoIdleTime) throw;
    err << "warning: " << e.what() << "; schedule left unchanged\n";
  }
  out << io::to_json(result).dump(2) << '\n';
  return 0;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance_path);
  const StockTrajectory trajectory = stock_trajectory(instance, load_schedule(o.schedule_path, instance));
  if (o.csv_path.empty() || o.csv_path == "-") {
    io::write_trajectory_csv(out, trajectory);
    return 0;
  }
  std::ofstream file(o.csv_path);
  if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + o.csv_path + "'");
  io::write_trajectory_csv(file, trajectory);
  if (!file) throw Error(ErrorKind::ParseError, "failed writing '" + o.csv_path + "'");
  return 0;
}

int cmd_brute_f1(const Options& o, std::ostream& out) {
  const std::int64_t budget = o.budget > 0 ? o.budget : default_budget();
  const std::int64_t max_length = o.max_length > 0 ? o.max_length : o.p;
  out << io::to_json(brute_force_f1(o.p, o.d, o.h, max_length, budget)).dump(2) << '\n';
  return 0;
}

int cmd_ternary(const Options& o, std::ostream& out) {
  const Rational a = Rational::parse(o.a_value);
  const Rational b = Rational::parse(o.b_value);
  const double t = ternary_search_c2(a, b, o.tolerance);
  std::ostringstream text;
  text.precision(17);
  text << t;
  out << Json{{"t", text.str()}, {"closed_form", SquareRoot{b / a}.decimal(17)}}.dump(2) << '\n';
  return 0;
}

int cmd_held_karp(const Options& o, std::ostream& out) {
  out << io::to_json(held_karp(io::tsp_from_json(io::read_json_file(o.tsp_path)))).dump(2) << '\n';
  return 0;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const TspInstance tsp = io::tsp_from_json(io::read_json_file(o.tsp_path));
  const Variant variant = parse_variant(o.variant);
  const Instance instance =
      variant == Variant::Continuous ? tsp_to_lsp_continuous(tsp) : tsp_to_lsp_discrete(tsp, variant);
  out << io::to_json(instance).dump(2) << '\n';
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const TspInstance tsp = io::tsp_from_json(io::read_json_file(o.tsp_path));
  const VerificationReport report = verify_correspondence(tsp, parse_variant(o.variant));
  out << io::to_json(report).dump(2) << '\n';
  return report.ok ? 0 : 1;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.products == 0 || o.max_rate < 1 || o.max_holding < 1 || o.max_switch < 0) {
    throw Error(ErrorKind::InvalidInstance, "gen needs --n >= 1, --max-rate >= 1, --max-holding >= 1");
  }
  std::mt19937_64 engine(o.seed);
  // Modulo mapping keeps the stream identical across standard libraries.
  auto draw = [&engine](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  Instance instance;
  instance.variant = parse_variant(o.variant);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    instance.products.clear();
    for (std::size_t i = 0; i < o.products; ++i) {
      const std::int64_t p = draw(1, o.max_rate);
      instance.products.push_back({draw(1, p), p, draw(1, o.max_holding)});
    }
    if (o.allow_infeasible || check_feasibility(instance).feasible) break;
    instance.products.clear();
  }
  if (instance.products.empty()) throw Error(ErrorKind::InfeasibleInstance, "no feasible instance found; raise --max-rate");
  instance.switching.assign(o.products, std::vector<std::int64_t>(o.products, 0));
  for (std::size_t i = 0; i < o.products; ++i) {
    for (std::size_t j = 0; j < o.products; ++j) {
      if (i != j) instance.switching[i][j] = draw(0, o.max_switch);
    }
  }
  out << io::to_json(instance).dump(2) << '\n';
  return 0;
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::ParseError ? 2 : 1; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclic lot-sizing with sequence-dependent switching costs", "lotcycle"};
  app.require_subcommand(1);
  Options o;

  auto* feasible = app.add_subcommand("feasible", "Check the load criterion sum d/p <= 1");
  feasible->add_option("instance", o.instance_path, "Instance file")->required();

  auto* construct = app.add_subcommand("construct", "Build a feasible schedule of length prod p_i");
  construct->add_option("instance", o.instance_path, "Instance file")->required();

  auto* solve = app.add_subcommand("solve", "Optimal schedule for LSP(C,1), (D,1), (F,1) or (C,2)");
  solve->add_option("instance", o.instance_path, "Instance file")->required();
  solve->add_option("--q0", o.initial_stock, "Initial stock for LSP(F,1)")->check(CLI::NonNegativeNumber);
  solve->add_option("--t", o.t_value, "Rational length of the first phase for LSP(C,2)");

  auto* eval = app.add_subcommand("eval", "Cost report of a schedule");
  eval->add_option("instance", o.instance_path, "Instance file")->required();
  eval->add_option("schedule", o.schedule_path, "Schedule file")->required();

  auto* validate = app.add_subcommand("validate", "List constraint violations of a schedule");
  validate->add_option("instance", o.instance_path, "Instance file")->required();
  validate->add_option("schedule", o.schedule_path, "Schedule file")->required();

  auto* improve = app.add_subcommand("improve", "Apply a cost-non-increasing transform");
  improve->add_option("instance", o.instance_path, "Instance file")->required();
  improve->add_option("schedule", o.schedule_path, "Schedule file")->required();
  improve->add_option("--transform", o.transform, "Transform to apply")
      ->required()
      ->check(CLI::IsMember({"canonicalize", "average", "deidle"}));
  improve->add_option("--period", o.period, "Production period for canonicalize");
  improve->add_flag("--fixpoint", o.fixpoint, "Repeat until nothing changes");

  auto* trace = app.add_subcommand("trace", "Stock levels at every breakpoint as CSV");
  trace->add_option("instance", o.instance_path, "Instance file")->required();
  trace->add_option("schedule", o.schedule_path, "Schedule file")->required();
  trace->add_option("--csv", o.csv_path, "Output file ('-' for standard output)");

  auto* oracle = app.add_subcommand("oracle", "Brute-force and numeric reference engines");
  oracle->require_subcommand(1);
  auto* brute = oracle->add_subcommand("brute-f1", "Exhaustive LSP(F,1) search");
  brute->add_option("--p", o.p, "Production rate")->required();
  brute->add_option("--d", o.d, "Demand rate")->required();
  brute->add_option("--holding", o.h, "Holding cost");
  brute->add_option("--max-length", o.max_length, "Longest cycle examined (default p)");
  brute->add_option("--budget", o.budget, "Search budget (default LOTCYCLE_BUDGET or built in)");
  auto* ternary = oracle->add_subcommand("ternary", "Ternary search for argmin A t + B / t");
  ternary->add_option("--A", o.a_value, "Coefficient A (rational)")->required();
  ternary->add_option("--B", o.b_value, "Coefficient B (rational)")->required();
  ternary->add_option("--tol", o.tolerance, "Relative tolerance");
  auto* held = oracle->add_subcommand("held-karp", "Exact TSP tour");
  held->add_option("tsp", o.tsp_path, "TSP file")->required();

  auto* reduce = app.add_subcommand("reduce-tsp", "Build the lot-sizing instance of a TSP instance");
  reduce->add_option("tsp", o.tsp_path, "TSP file")->required();
  reduce->add_option("--variant", o.variant, "continuous, discrete or fixed");

  auto* verify = app.add_subcommand("verify-reduction", "Replay the TSP cost correspondence");
  verify->add_option("tsp", o.tsp_path, "TSP file")->required();
  verify->add_option("--variant", o.variant, "continuous, discrete or fixed");

  auto* gen = app.add_subcommand("gen", "Random instance");
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->add_option("--variant", o.variant, "continuous, discrete or fixed");
  gen->add_option("--n", o.products, "Number of products");
  gen->add_option("--max-rate", o.max_rate, "Largest production rate");
  gen->add_option("--max-holding", o.max_holding, "Largest holding cost");
  gen->add_option("--max-switch", o.max_switch, "Largest switching cost");
  gen->add_flag("--allow-infeasible", o.allow_infeasible, "Do not reject load > 1");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*feasible) return cmd_feasible(o, out);
    if (*construct) return cmd_construct(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*eval) return cmd_eval(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*improve) return cmd_improve(o, out, err);
    if (*trace) return cmd_trace(o, out);
    if (*brute) return cmd_brute_f1(o, out);
    if (*ternary) return cmd_ternary(o, out);
    if (*held) return cmd_held_karp(o, out);
    if (*reduce) return cmd_reduce(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*gen) return cmd_gen(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace lotcycle::cli
