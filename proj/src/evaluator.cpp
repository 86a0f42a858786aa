#include "lotcycle/evaluator.hpp"

#include "lotcycle/errors.hpp"

namespace lotcycle {

namespace {

void require_schedule_valid(const Instance& instance, const CyclicSchedule& schedule) {
  auto violations = validate_schedule(instance, schedule);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw Error(ErrorKind::InvalidSchedule,
                std::string(to_string(v.kind)) + " (" + v.detail + ")" +
                    (violations.size() > 1 ? " and " + std::to_string(violations.size() - 1) + " more" : ""));
  }
}

StockTrajectory trajectory_unchecked(const Instance& instance, const CyclicSchedule& schedule) {
  StockTrajectory out;
  out.variant = variant_of(schedule);
  out.products.resize(instance.size());
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        std::vector<std::vector<Rational>> table;
        std::vector<Rational> times{Rational(0)};
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          table = phase_boundary_stocks(instance, s);
          for (const Phase& phase : s.phases) times.push_back(times.back() + phase.duration);
        } else {
          table = slot_stocks(instance, s);
          for (std::size_t t = 1; t <= s.slots.size(); ++t) times.emplace_back(static_cast<std::int64_t>(t));
        }
        for (std::size_t i = 0; i < instance.size(); ++i) {
          out.products[i].reserve(table.size());
          for (std::size_t k = 0; k < table.size(); ++k) out.products[i].push_back({times[k], table[k][i]});
        }
      },
      schedule);
  return out;
}

}  // namespace

StockTrajectory stock_trajectory(const Instance& instance, const CyclicSchedule& schedule) {
  require_schedule_valid(instance, schedule);
  return trajectory_unchecked(instance, schedule);
}

std::vector<std::size_t> production_sequence(const CyclicSchedule& schedule) {
  std::vector<std::size_t> sequence;
  auto push = [&sequence](std::size_t product) {
    if (sequence.empty() || sequence.back() != product) sequence.push_back(product);
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          for (const Phase& phase : s.phases) {
            if (phase.activity) push(phase.activity->product);
          }
        } else {
          for (const Slot& slot : s.slots) {
            if (slot.product) push(*slot.product);
          }
        }
      },
      schedule);
  if (sequence.size() > 1 && sequence.front() == sequence.back()) sequence.pop_back();
  return sequence;
}

Rational switching_cost(const Instance& instance, const std::vector<std::size_t>& sequence) {
  if (sequence.size() < 2) return Rational(0);
  std::int64_t total = 0;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    total += instance.switching[sequence[k]][sequence[(k + 1) % sequence.size()]];
  }
  return Rational(total);
}

CostReport evaluate(const Instance& instance, const CyclicSchedule& schedule) {
  require_schedule_valid(instance, schedule);
  const StockTrajectory trajectory = trajectory_unchecked(instance, schedule);
  const bool continuous = trajectory.variant == Variant::Continuous;

  CostReport report;
  report.per_product_holding.assign(instance.size(), Rational(0));
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto& points = trajectory.products[i];
    Rational area(0);
    for (std::size_t k = 1; k < points.size(); ++k) {
      if (continuous) {
        area += (points[k].time - points[k - 1].time) * (points[k].stock + points[k - 1].stock) / Rational(2);
      } else {
        area += points[k].stock;
      }
    }
    report.per_product_holding[i] = Rational(instance.products[i].holding) * area;
    report.holding_total += report.per_product_holding[i];
  }
  report.cycle_length = trajectory.products.empty() ? Rational(0) : trajectory.products.front().back().time;
  report.switching_total = switching_cost(instance, production_sequence(schedule));
  report.average_cost = (report.holding_total + report.switching_total) / report.cycle_length;
  return report;
}

}  // namespace lotcycle
