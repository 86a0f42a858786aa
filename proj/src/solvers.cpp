#include "lotcycle/solvers.hpp"

#include <numeric>

#include "lotcycle/errors.hpp"

namespace lotcycle {

namespace {

void require_case(const Instance& instance, Variant variant, std::size_t n) {
  require_valid(instance);
  if (instance.variant != variant) {
    throw Error(ErrorKind::MismatchedVariant, "expected a " + std::string(to_string(variant)) + " instance");
  }
  if (instance.size() != n) {
    throw Error(ErrorKind::UnsupportedCase, "expected " + std::to_string(n) + " product(s), got " +
                                                std::to_string(instance.size()));
  }
  auto [feasible, load] = check_feasibility(instance);
  if (!feasible) throw Error(ErrorKind::InfeasibleInstance, "load " + load.str() + " exceeds 1");
}

}  // namespace

ContinuousSolution solve_c1(const Instance& instance) {
  require_case(instance, Variant::Continuous, 1);
  ContinuousSchedule schedule{{Phase::produce(Rational(1), 0, Rational(instance.products[0].demand))}, {Rational(0)}};
  CostReport report = evaluate(instance, schedule);
  return {std::move(schedule), std::move(report)};
}

DiscreteSolution solve_d1(const Instance& instance) {
  require_case(instance, Variant::Discrete, 1);
  DiscreteSchedule schedule{{Slot::produce(0, Rational(instance.products[0].demand))}, {Rational(0)}};
  CostReport report = evaluate(instance, schedule);
  return {std::move(schedule), std::move(report)};
}

GreedyF1Generator::GreedyF1Generator(std::int64_t production, std::int64_t demand, std::int64_t stock)
    : production_(production), demand_(demand), start_(stock), stock_(stock) {}

std::optional<bool> GreedyF1Generator::next() {
  if (started_ && stock_ == start_) return std::nullopt;
  started_ = true;
  const bool produce = stock_ < demand_;
  stock_ += produce ? production_ - demand_ : -demand_;
  return produce;
}

std::int64_t f1_min_cycle_length(std::int64_t production, std::int64_t demand) {
  return production / std::gcd(production, demand);
}

Rational f1_optimal_unit_cost(std::int64_t production, std::int64_t demand, std::int64_t holding) {
  return Rational(holding * (production - std::gcd(production, demand)), 2);
}

Rational f1_offset_cycle_cost(std::int64_t production, std::int64_t demand, std::int64_t holding,
                              std::int64_t initial_stock) {
  const std::int64_t g = std::gcd(production, demand);
  const Rational base = Rational(holding * production, 2) * Rational(production / g - 1);
  return base + Rational(holding * production / g) * Rational(initial_stock % g);
}

F1Solution solve_f1(const Instance& instance, std::int64_t initial_stock) {
  require_case(instance, Variant::Fixed, 1);
  if (initial_stock < 0) throw Error(ErrorKind::InvalidSchedule, "initial stock must be non-negative");
  const Product& product = instance.products[0];
  const std::int64_t p = product.production;
  const std::int64_t d = product.demand;

  F1Solution solution;
  solution.gcd = std::gcd(p, d);
  std::int64_t stock = initial_stock;
  if (stock >= p) {
    solution.idle_prefix = (stock - p) / d + 1;
    stock -= solution.idle_prefix * d;
  }

  solution.schedule.initial_stock = {Rational(stock)};
  GreedyF1Generator generator(p, d, stock);
  while (auto produce = generator.next()) {
    solution.schedule.slots.push_back(*produce ? fixed_slot(instance, 0) : Slot::idle_slot());
  }
  solution.cycle_length = solution.schedule.cycle_length();

  const CostReport report = evaluate(instance, solution.schedule);
  solution.total_cost = report.holding_total + report.switching_total;
  solution.unit_cost = report.average_cost;
  return solution;
}

std::pair<Rational, Rational> c2_coefficients(const Instance& instance, std::size_t first, std::size_t second) {
  const Product& one = instance.products[first];
  const Product& two = instance.products[second];
  const Rational d1(one.demand), p1(one.production), h1(one.holding);
  const Rational d2(two.demand), p2(two.production), h2(two.holding);
  const Rational a = h1 * (p1 - d1) / Rational(2) +
                     h2 * d1 * d2 / (Rational(2) * p1) * (Rational(1) + d2 / (p2 - d2));
  const Rational b = Rational(instance.switching[first][second] + instance.switching[second][first]) * d1 / p1;
  return {a, b};
}

Rational C2Solution::cycle_length_at(const Rational& t) const {
  const Product& one = instance.products[first];
  return t * Rational(one.production, one.demand);
}

ContinuousSchedule C2Solution::schedule_at(const Rational& t) const {
  if (t.sign() <= 0) throw Error(ErrorKind::InvalidSchedule, "t must be positive");
  const Product& one = instance.products[first];
  const Product& two = instance.products[second];
  const Rational cycle = cycle_length_at(t);
  const Rational refill = Rational(two.demand) * t / Rational(two.production - two.demand);
  const Rational slack = cycle - t - refill;

  ContinuousSchedule schedule;
  schedule.initial_stock.assign(instance.size(), Rational(0));
  schedule.initial_stock[second] = Rational(two.demand) * t;
  schedule.phases.push_back(Phase::produce(t, first, Rational(one.production)));
  if (slack.sign() > 0) schedule.phases.push_back(Phase::produce(slack, second, Rational(two.demand)));
  schedule.phases.push_back(Phase::produce(refill, second, Rational(two.production)));
  return schedule;
}

bool C2Solution::middle_phase_empty() const {
  const Product& one = instance.products[first];
  const Product& two = instance.products[second];
  // C - t - L = t (p1/d1 - 1 - d2/(p2-d2)), sign independent of t.
  const Rational factor = Rational(one.production, one.demand) - Rational(1) -
                          Rational(two.demand, two.production - two.demand);
  return factor.sign() == 0;
}

C2Solution solve_c2(const Instance& instance) {
  require_case(instance, Variant::Continuous, 2);
  if (instance.switching[0][1] + instance.switching[1][0] == 0) {
    throw Error(ErrorKind::DegenerateSwitchingCosts,
                "s12 + s21 = 0: the average cost approaches 0 as the cycle shrinks and has no minimizer");
  }

  C2Solution solution;
  solution.instance = instance;
  auto [a, b] = c2_coefficients(instance, 0, 1);
  auto [a_swapped, b_swapped] = c2_coefficients(instance, 1, 0);
  // Average cost 2 sqrt(AB): compare the products; ties keep the given labels.
  if (a_swapped * b_swapped < a * b) {
    solution.first = 1;
    solution.second = 0;
    solution.role_swap = true;
    a = a_swapped;
    b = b_swapped;
  }
  solution.a = a;
  solution.b = b;
  solution.t_star = SquareRoot{b / a};
  const Product& one = instance.products[solution.first];
  const Rational ratio(one.production, one.demand);
  solution.cycle_length = SquareRoot{b / a * ratio * ratio};
  solution.average_cost = SquareRoot{Rational(4) * a * b};
  return solution;
}

}  // namespace lotcycle
