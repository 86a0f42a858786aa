#include "lotcycle/reductions.hpp"

#include <algorithm>
#include <numeric>

#include "lotcycle/errors.hpp"
#include "lotcycle/evaluator.hpp"

namespace lotcycle {

namespace {

Instance base_instance(const TspInstance& tsp, Variant variant, std::int64_t holding) {
  if (tsp.n < 2) throw Error(ErrorKind::InvalidInstance, "the reduction needs at least two nodes");
  Instance instance;
  instance.variant = variant;
  const auto n = static_cast<std::int64_t>(tsp.n);
  instance.products.assign(tsp.n, Product{1, n, holding});
  instance.switching = tsp.cost;
  return instance;
}

void check_tour(const Instance& instance, const Tour& tour) {
  std::vector<std::size_t> sorted = tour.order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expected(instance.size());
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw Error(ErrorKind::InvalidTour, "tour is not a permutation of the products");
}

}  // namespace

Instance tsp_to_lsp_discrete(const TspInstance& tsp, Variant variant) {
  if (variant == Variant::Continuous) {
    throw Error(ErrorKind::MismatchedVariant, "use the continuous reduction for the Continuous variant");
  }
  std::int64_t total = 0;
  for (const auto& row : tsp.cost) total = std::accumulate(row.begin(), row.end(), total);
  return base_instance(tsp, variant, total + 1);
}

Instance tsp_to_lsp_continuous(const TspInstance& tsp) {
  if (!tsp.metric) throw Error(ErrorKind::NotMetric, "the continuous reduction needs the triangle inequality");
  return base_instance(tsp, Variant::Continuous, 1);
}

CyclicSchedule tour_to_schedule_discrete(const Instance& instance, const Tour& tour) {
  check_tour(instance, tour);
  const std::size_t n = instance.size();
  std::vector<Slot> slots;
  std::vector<Rational> stock(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t product = tour.order[k];
    slots.push_back(Slot::produce(product, Rational(instance.products[product].production)));
    stock[product] = Rational(static_cast<std::int64_t>(k));
  }
  if (instance.variant == Variant::Fixed) return FixedSchedule{std::move(slots), std::move(stock)};
  if (instance.variant == Variant::Discrete) return DiscreteSchedule{std::move(slots), std::move(stock)};
  throw Error(ErrorKind::MismatchedVariant, "expected a Discrete or Fixed instance");
}

ContinuousSchedule tour_to_schedule_continuous(const Instance& instance, const Tour& tour, const Rational& cycle) {
  check_tour(instance, tour);
  if (instance.variant != Variant::Continuous) throw Error(ErrorKind::MismatchedVariant, "expected Continuous");
  if (cycle.sign() <= 0) throw Error(ErrorKind::InvalidSchedule, "cycle length must be positive");
  const auto n = static_cast<std::int64_t>(instance.size());
  const Rational share = cycle / Rational(n);
  ContinuousSchedule schedule;
  schedule.initial_stock.assign(instance.size(), Rational(0));
  for (std::size_t k = 0; k < instance.size(); ++k) {
    const std::size_t product = tour.order[k];
    schedule.phases.push_back(Phase::produce(share, product, Rational(instance.products[product].production)));
    // Demand 1 per unit time until its own period starts at k C / n.
    schedule.initial_stock[product] = share * Rational(static_cast<std::int64_t>(k));
  }
  return schedule;
}

namespace {

VerificationReport verify_discrete(const TspInstance& tsp, Variant variant) {
  VerificationReport report;
  report.variant = variant;
  report.n = tsp.n;
  const Instance instance = tsp_to_lsp_discrete(tsp, variant);
  report.optimal_tour = held_karp(tsp);
  const auto n = static_cast<std::int64_t>(tsp.n);
  const Rational h(instance.products.front().holding);
  report.predicted_average_cost = h * Rational(n * (n - 1), 2) + Rational(report.optimal_tour.cost, n);

  std::vector<std::size_t> order(tsp.n);
  std::iota(order.begin(), order.end(), 0);
  bool first = true;
  if (tsp.n <= kVerifyFullScanNodes) {
    do {
      const CostReport cost = evaluate(instance, tour_to_schedule_discrete(instance, Tour{order, 0}));
      ++report.tours_scanned;
      if (first || cost.average_cost < report.best_average_cost) {
        report.best_average_cost = cost.average_cost;
        report.best_tour_cost = tour_cost(tsp, order);
        first = false;
      }
    } while (std::next_permutation(order.begin() + 1, order.end()));
  } else {
    std::int64_t cheapest = tour_cost(tsp, order);
    do {
      cheapest = std::min(cheapest, tour_cost(tsp, order));
      ++report.tours_scanned;
    } while (std::next_permutation(order.begin() + 1, order.end()));
    report.best_average_cost = evaluate(instance, tour_to_schedule_discrete(instance, report.optimal_tour)).average_cost;
    report.best_tour_cost = cheapest;
  }
  report.ok = report.best_average_cost == report.predicted_average_cost &&
              report.best_tour_cost == report.optimal_tour.cost;
  return report;
}

VerificationReport verify_continuous(const TspInstance& tsp) {
  VerificationReport report;
  report.variant = Variant::Continuous;
  report.n = tsp.n;
  const Instance instance = tsp_to_lsp_continuous(tsp);
  report.optimal_tour = held_karp(tsp);
  const std::int64_t c = report.optimal_tour.cost;
  if (c == 0) throw Error(ErrorKind::DegenerateSwitchingCosts, "optimal tour has cost 0; no balanced cycle exists");
  const auto n = static_cast<std::int64_t>(tsp.n);

  report.balanced_cycle = SquareRoot{Rational(2 * c, n - 1)};
  const auto exact = report.balanced_cycle.exact();
  report.exact_cycle = exact.has_value();
  report.cycle_used = exact ? *exact : report.balanced_cycle.convergent();

  const CostReport cost =
      evaluate(instance, tour_to_schedule_continuous(instance, report.optimal_tour, report.cycle_used));
  report.average_cost_squared = cost.average_cost * cost.average_cost;
  report.predicted_average_squared = Rational(2 * (n - 1) * c);
  report.relative_error =
      (abs(report.average_cost_squared - report.predicted_average_squared) / report.predicted_average_squared)
          .to_double();
  const bool within = abs(report.average_cost_squared - report.predicted_average_squared) <=
                      report.predicted_average_squared * Rational(1, 1'000'000'000);
  if (report.exact_cycle) report.holding_equals_switching = cost.holding_total == cost.switching_total;
  report.ok = within && report.holding_equals_switching.value_or(true);
  return report;
}

}  // namespace

VerificationReport verify_correspondence(const TspInstance& tsp, Variant variant) {
  if (tsp.n > kVerifyMaxNodes) {
    throw Error(ErrorKind::TooManyNodes, std::to_string(tsp.n) + " nodes exceed " + std::to_string(kVerifyMaxNodes));
  }
  return variant == Variant::Continuous ? verify_continuous(tsp) : verify_discrete(tsp, variant);
}

}  // namespace lotcycle
