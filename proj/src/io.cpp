#include "lotcycle/io.hpp"

#include <fstream>
#include <ostream>

#include "lotcycle/errors.hpp"

namespace lotcycle::io {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::ParseError, message); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) fail(std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::int64_t integer(const Json& value, const std::string& what) {
  if (!value.is_number_integer()) fail(what + " must be an integer");
  return value.get<std::int64_t>();
}

CostMatrix matrix_from_json(const Json& value, const std::string& what) {
  if (!value.is_array()) fail(what + " must be a matrix");
  CostMatrix matrix;
  for (const Json& row : value) {
    if (!row.is_array()) fail(what + " rows must be arrays");
    auto& out = matrix.emplace_back();
    for (const Json& entry : row) out.push_back(integer(entry, what + " entry"));
  }
  return matrix;
}

std::vector<Rational> stocks_from_json(const Json& doc) {
  std::vector<Rational> stock;
  const Json& list = field(doc, "initial_stock");
  if (!list.is_array()) fail("initial_stock must be a list");
  for (const Json& entry : list) stock.push_back(rational_from_json(entry));
  return stock;
}

std::optional<std::size_t> product_from_json(const Json& entry) {
  if (!entry.contains("product") || entry.at("product").is_null()) return std::nullopt;
  const Json& value = entry.at("product");
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) fail("product must be a non-negative index or null");
  return value.get<std::size_t>();
}

Json product_to_json(const std::optional<std::size_t>& product) {
  return product ? Json(*product) : Json(nullptr);
}


}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("'" + path + "': " + e.what());
  }
}

Json to_json(const Rational& value) { return value.str(); }

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  fail("expected a rational \"num/den\" string, got " + value.dump());
}

Instance instance_from_json(const Json& doc) {
  Instance instance;
  const Json& variant = field(doc, "variant");
  if (!variant.is_string()) fail("variant must be a string");
  instance.variant = parse_variant(variant.get<std::string>());
  const Json& products = field(doc, "products");
  if (!products.is_array()) fail("products must be a list");
  for (const Json& entry : products) {
    instance.products.push_back(Product{integer(field(entry, "d"), "d"), integer(field(entry, "p"), "p"),
                                        integer(field(entry, "h"), "h")});
  }
  instance.switching = matrix_from_json(field(doc, "switch"), "switch");
  return instance;
}

Json to_json(const Instance& instance) {
  Json products = Json::array();
  for (const Product& p : instance.products) products.push_back({{"d", p.demand}, {"p", p.production}, {"h", p.holding}});
  return {{"variant", to_string(instance.variant)}, {"products", products}, {"switch", instance.switching}};
}

CyclicSchedule schedule_from_json(const Json& doc, const Instance& instance) {
  std::vector<Rational> stock = stocks_from_json(doc);
  const bool has_phases = doc.contains("phases");
  const bool has_slots = doc.contains("slots");
  if (has_phases == has_slots) fail("a schedule needs exactly one of 'phases' or 'slots'");
  if (doc.contains("variant") && doc.at("variant").is_string() &&
      parse_variant(doc.at("variant").get<std::string>()) != instance.variant) {
    throw Error(ErrorKind::MismatchedVariant, "schedule variant differs from the instance variant");
  }
  if (has_phases != (instance.variant == Variant::Continuous)) {
    throw Error(ErrorKind::MismatchedVariant, std::string(has_phases ? "phases" : "slots") + " given for a " +
                                                  std::string(to_string(instance.variant)) + " instance");
  }

  if (has_phases) {
    ContinuousSchedule schedule;
    schedule.initial_stock = std::move(stock);
    for (const Json& entry : doc.at("phases")) {
      Phase phase;
      phase.duration = rational_from_json(field(entry, "duration"));
      if (auto product = product_from_json(entry)) {
        phase.activity = Production{*product, rational_from_json(field(entry, "rate"))};
      }
      schedule.phases.push_back(std::move(phase));
    }
    return schedule;
  }

  std::vector<Slot> slots;
  for (const Json& entry : doc.at("slots")) {
    auto product = product_from_json(entry);
    if (!product) {
      slots.push_back(Slot::idle_slot());
    } else if (entry.contains("amount")) {
      slots.push_back(Slot::produce(*product, rational_from_json(entry.at("amount"))));
    } else if (instance.variant == Variant::Fixed && *product < instance.size()) {
      slots.push_back(fixed_slot(instance, *product));
    } else {
      fail("slot producing product " + std::to_string(*product) + " needs an amount");
    }
  }
  if (instance.variant == Variant::Fixed) return FixedSchedule{std::move(slots), std::move(stock)};
  return DiscreteSchedule{std::move(slots), std::move(stock)};
}

Json to_json(const CyclicSchedule& schedule) {
  Json doc;
  doc["variant"] = to_string(variant_of(schedule));
  Json stock = Json::array();
  for (const Rational& q : initial_stock_of(schedule)) stock.push_back(to_json(q));
  doc["initial_stock"] = stock;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        Json list = Json::array();
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          for (const Phase& phase : s.phases) {
            Json entry{{"duration", to_json(phase.duration)},
                       {"product", product_to_json(phase.activity ? std::optional(phase.activity->product)
                                                                  : std::nullopt)}};
            entry["rate"] = phase.activity ? to_json(phase.activity->rate) : Json("0/1");
            list.push_back(entry);
          }
          doc["phases"] = list;
        } else {
          for (const Slot& slot : s.slots) {
            list.push_back({{"product", product_to_json(slot.product)},
                            {"amount", to_json(slot.idle() ? Rational(0) : slot.amount)}});
          }
          doc["slots"] = list;
        }
      },
      schedule);
  return doc;
}

Json to_json(const CostReport& report) {
  Json per_product = Json::array();
  for (const Rational& h : report.per_product_holding) per_product.push_back(to_json(h));
  return {{"cycle_length", to_json(report.cycle_length)},
          {"holding_total", to_json(report.holding_total)},
          {"switching_total", to_json(report.switching_total)},
          {"average_cost", to_json(report.average_cost)},
          {"per_product_holding", per_product},
          {"decimal",
           {{"cycle_length", report.cycle_length.decimal()},
            {"holding_total", report.holding_total.decimal()},
            {"switching_total", report.switching_total.decimal()},
            {"average_cost", report.average_cost.decimal()}}}};
}

Json to_json(const std::vector<Violation>& violations) {
  Json list = Json::array();
  for (const Violation& v : violations) {
    list.push_back({{"kind", to_string(v.kind)},
                    {"product", product_to_json(v.product)},
                    {"time", to_json(v.time)},
                    {"detail", v.detail}});
  }
  return list;
}

TspInstance tsp_from_json(const Json& doc) {
  CostMatrix cost = matrix_from_json(field(doc, "cost"), "cost");
  if (doc.contains("n") && integer(doc.at("n"), "n") != static_cast<std::int64_t>(cost.size())) {
    fail("n does not match the cost matrix");
  }
  return TspInstance::from_matrix(std::move(cost));
}

Json to_json(const TspInstance& tsp) { return {{"n", tsp.n}, {"cost", tsp.cost}, {"metric", tsp.metric}}; }

Json to_json(const Tour& tour) { return {{"order", tour.order}, {"cost", tour.cost}}; }

Json to_json(const F1Solution& solution) {
  return {{"cycle_length", solution.cycle_length},
          {"gcd", solution.gcd},
          {"unit_cost", to_json(solution.unit_cost)},
          {"total_cost", to_json(solution.total_cost)},
          {"idle_prefix", solution.idle_prefix},
          {"schedule", to_json(CyclicSchedule(solution.schedule))}};
}

Json to_json(const C2Solution& solution, const Rational& t) {
  return {{"A", to_json(solution.a)},
          {"B", to_json(solution.b)},
          {"t_star_squared", to_json(solution.t_star.radicand)},
          {"cycle_length_squared", to_json(solution.cycle_length.radicand)},
          {"avg_cost_squared", to_json(solution.average_cost.radicand)},
          {"role_swap", solution.role_swap},
          {"first_product", solution.first},
          {"middle_phase_empty", solution.middle_phase_empty()},
          {"decimals",
           {{"t_star", solution.t_star.decimal()},
            {"cycle_length", solution.cycle_length.decimal()},
            {"average_cost", solution.average_cost.decimal()}}},
          {"t", to_json(t)},
          {"cost_at_t", to_json(solution.cost_at(t))},
          {"schedule", to_json(CyclicSchedule(solution.schedule_at(t)))}};
}

Json to_json(const BruteForceResult& result) {
  return {{"best_average_cost", to_json(result.best_average_cost)},
          {"best_length", result.best_length},
          {"search_space_size", result.search_space_size},
          {"best_schedule", to_json(CyclicSchedule(result.best_schedule))}};
}

Json to_json(const VerificationReport& report) {
  Json doc{{"variant", to_string(report.variant)},
           {"n", report.n},
           {"ok", report.ok},
           {"optimal_tour", to_json(report.optimal_tour)}};
  if (report.variant == Variant::Continuous) {
    doc["balanced_cycle_squared"] = to_json(report.balanced_cycle.radicand);
    doc["balanced_cycle"] = report.balanced_cycle.decimal();
    doc["cycle_used"] = to_json(report.cycle_used);
    doc["exact_cycle"] = report.exact_cycle;
    doc["average_cost_squared"] = report.average_cost_squared.decimal();
    doc["predicted_average_squared"] = to_json(report.predicted_average_squared);
    doc["relative_error"] = report.relative_error;
    doc["holding_equals_switching"] =
        report.holding_equals_switching ? Json(*report.holding_equals_switching) : Json(nullptr);
  } else {
    doc["tours_scanned"] = report.tours_scanned;
    doc["best_average_cost"] = to_json(report.best_average_cost);
    doc["predicted_average_cost"] = to_json(report.predicted_average_cost);
    doc["best_tour_cost"] = report.best_tour_cost;
  }
  return doc;
}

void write_trajectory_csv(std::ostream& out, const StockTrajectory& trajectory) {
  out << "t,product,stock\n";
  for (std::size_t i = 0; i < trajectory.products.size(); ++i) {
    for (const StockPoint& point : trajectory.products[i]) {
      out << point.time.decimal() << ',' << i << ',' << point.stock.decimal() << '\n';
    }
  }
}

}  // namespace lotcycle::io
