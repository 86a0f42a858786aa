#include "lotcycle/transforms.hpp"

#include "lotcycle/errors.hpp"
#include "lotcycle/evaluator.hpp"

namespace lotcycle {

namespace {

void require_schedule_valid(const Instance& instance, const CyclicSchedule& schedule) {
  auto violations = validate_schedule(instance, schedule);
  if (!violations.empty()) {
    throw Error(ErrorKind::InvalidSchedule, std::string(to_string(violations.front().kind)) + " (" +
                                                violations.front().detail + ")");
  }
}

std::optional<std::size_t> product_of(const Phase& phase) {
  return phase.activity ? std::optional(phase.activity->product) : std::nullopt;
}

bool same_phases(const std::vector<Phase>& a, const std::vector<Phase>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].duration != b[k].duration || a[k].activity != b[k].activity) return false;
  }
  return true;
}

}  // namespace

std::vector<ProductionPeriod> production_periods(const ContinuousSchedule& schedule) {
  const auto& phases = schedule.phases;
  const std::size_t size = phases.size();
  std::vector<ProductionPeriod> periods;
  if (size == 0) return periods;

  std::optional<std::size_t> anchor;
  for (std::size_t k = 0; k < size; ++k) {
    if (product_of(phases[k]) != product_of(phases[(k + size - 1) % size])) {
      anchor = k;
      break;
    }
  }
  if (!anchor) {
    // One activity throughout.
    if (phases.front().activity) periods.push_back({phases.front().activity->product, 0, size});
    return periods;
  }
  for (std::size_t step = 0; step < size;) {
    const std::size_t k = (*anchor + step) % size;
    const auto product = product_of(phases[k]);
    std::size_t count = 1;
    while (count < size - step && product_of(phases[(k + count) % size]) == product) ++count;
    if (product) periods.push_back({*product, k, count});
    step += count;
  }
  std::sort(periods.begin(), periods.end(),
            [](const ProductionPeriod& a, const ProductionPeriod& b) { return a.first < b.first; });
  return periods;
}

ContinuousSchedule canonicalize_production_period(const Instance& instance, const ContinuousSchedule& schedule,
                                                  std::size_t period_index) {
  require_schedule_valid(instance, schedule);
  auto periods = production_periods(schedule);
  if (period_index >= periods.size()) {
    throw Error(ErrorKind::InvalidPeriodIndex, "period " + std::to_string(period_index) + " of " +
                                                   std::to_string(periods.size()));
  }
  ContinuousSchedule work = schedule;
  ProductionPeriod period = periods[period_index];
  if (period.first + period.count > work.phases.size()) {
    work = rotate(instance, work, period.first);
    period.first = 0;
  }

  const Product& product = instance.products[period.product];
  const Rational demand(product.demand);
  const Rational cap(product.production);
  Rational duration(0);
  Rational output(0);
  for (std::size_t k = period.first; k < period.first + period.count; ++k) {
    const Phase& phase = work.phases[k];
    if (phase.activity->rate < demand) return work;
    duration += phase.duration;
    output += phase.duration * phase.activity->rate;
  }
  if (cap == demand) return work;

  const Rational at_cap = (output - demand * duration) / (cap - demand);
  const Rational at_demand = duration - at_cap;
  std::vector<Phase> replacement;
  if (at_demand.sign() > 0) replacement.push_back(Phase::produce(at_demand, period.product, demand));
  if (at_cap.sign() > 0) replacement.push_back(Phase::produce(at_cap, period.product, cap));

  const auto begin = work.phases.begin() + static_cast<std::ptrdiff_t>(period.first);
  const std::vector<Phase> current(begin, begin + static_cast<std::ptrdiff_t>(period.count));
  if (same_phases(current, replacement)) return work;
  work.phases.erase(begin, begin + static_cast<std::ptrdiff_t>(period.count));
  work.phases.insert(work.phases.begin() + static_cast<std::ptrdiff_t>(period.first), replacement.begin(),
                     replacement.end());
  return work;
}

ContinuousSchedule average_to_simple_cycle(const Instance& instance, const ContinuousSchedule& schedule) {
  if (instance.size() != 2) throw Error(ErrorKind::UnsupportedShape, "needs a two-product instance");
  require_schedule_valid(instance, schedule);
  for (const Phase& phase : schedule.phases) {
    if (phase.idle()) throw Error(ErrorKind::UnsupportedShape, "schedule contains idle time");
  }
  auto periods = production_periods(schedule);
  if (periods.size() != 4) {
    throw Error(ErrorKind::UnsupportedShape,
                "needs four production periods, found " + std::to_string(periods.size()));
  }
  const ContinuousSchedule work = rotate(instance, schedule, periods.front().first);
  periods = production_periods(work);

  std::vector<Rational> lengths;
  for (const ProductionPeriod& period : periods) {
    Rational length(0);
    for (std::size_t k = period.first; k < period.first + period.count; ++k) length += work.phases[k].duration;
    lengths.push_back(length);
  }
  const std::size_t one = periods[0].product;
  const std::size_t two = periods[1].product;
  const Rational span_one = (lengths[0] + lengths[2]) / Rational(2);
  const Rational span_two = (lengths[1] + lengths[3]) / Rational(2);

  // Each product rises at full rate just in time to cover the other's period.
  const Product& p1 = instance.products[one];
  const Product& p2 = instance.products[two];
  const Rational rise_one = Rational(p1.demand) * span_two / Rational(p1.production - p1.demand);
  const Rational rise_two = Rational(p2.demand) * span_one / Rational(p2.production - p2.demand);

  ContinuousSchedule out;
  out.initial_stock.assign(2, Rational(0));
  out.initial_stock[two] = Rational(p2.demand) * span_one;
  if (span_one > rise_one) out.phases.push_back(Phase::produce(span_one - rise_one, one, Rational(p1.demand)));
  out.phases.push_back(Phase::produce(rise_one, one, Rational(p1.production)));
  if (span_two > rise_two) out.phases.push_back(Phase::produce(span_two - rise_two, two, Rational(p2.demand)));
  out.phases.push_back(Phase::produce(rise_two, two, Rational(p2.production)));
  return out;
}

namespace {

ContinuousSchedule improve_idle_continuous(const Instance& instance, const ContinuousSchedule& schedule) {
  const std::size_t size = schedule.phases.size();
  std::optional<std::size_t> idle;
  for (std::size_t k = 0; k < size; ++k) {
    if (schedule.phases[k].idle()) {
      idle = k;
      break;
    }
  }
  if (!idle) throw Error(ErrorKind::NoIdleTime, "schedule has no idle phase");
  const std::size_t before = (*idle + size - 1) % size;
  const Phase& source = schedule.phases[before];
  if (source.idle()) throw Error(ErrorKind::InvalidSchedule, "schedule never produces");

  const std::size_t product = source.activity->product;
  const Rational gap = schedule.phases[*idle].duration;
  const Rational stock_at_gap = phase_boundary_stocks(instance, schedule)[*idle][product];
  const Rational moved = min(min(source.activity->rate * source.duration / Rational(2), stock_at_gap),
                             Rational(instance.products[product].production) * gap);

  ContinuousSchedule out = schedule;
  out.phases[before].activity->rate -= moved / source.duration;
  out.phases[*idle].activity = Production{product, moved / gap};
  if (before > *idle) {
    // Wrapped: the source phase is last, so stock at t = 0 drops by `moved`.
    out.initial_stock[product] -= moved;
  }
  return normalize(instance, out);
}

template <Variant V>
SlotSchedule<V> improve_idle_slots(const Instance& instance, const SlotSchedule<V>& schedule) {
  const std::size_t size = schedule.slots.size();
  std::optional<std::size_t> idle;
  for (std::size_t k = 0; k < size; ++k) {
    if (schedule.slots[k].idle() && !schedule.slots[(k + size - 1) % size].idle()) {
      idle = k;
      break;
    }
  }
  if (!idle) {
    for (const Slot& slot : schedule.slots) {
      if (slot.idle()) throw Error(ErrorKind::InvalidSchedule, "schedule never produces");
    }
    throw Error(ErrorKind::NoIdleTime, "schedule has no idle slot");
  }
  const std::size_t before = (*idle + size - 1) % size;
  const Slot& source = schedule.slots[before];
  const std::size_t product = *source.product;
  // Stock at the end of the source slot, i.e. q^{idle} with 0-based slots.
  const Rational stock_at_gap = slot_stocks(instance, schedule)[before + 1][product];
  const Rational moved =
      min(min(source.amount, stock_at_gap), Rational(instance.products[product].production));

  SlotSchedule<V> out = schedule;
  out.slots[before].amount -= moved;
  if (out.slots[before].amount.sign() == 0) out.slots[before] = Slot::idle_slot();
  out.slots[*idle] = Slot::produce(product, moved);
  if (before > *idle) out.initial_stock[product] -= moved;
  return out;
}

}  // namespace

CyclicSchedule improve_idle(const Instance& instance, const CyclicSchedule& schedule) {
  require_schedule_valid(instance, schedule);
  return std::visit(
      [&](const auto& s) -> CyclicSchedule {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          return improve_idle_continuous(instance, s);
        } else if constexpr (T::variant == Variant::Discrete) {
          return improve_idle_slots(instance, s);
        } else {
          throw Error(ErrorKind::UnsupportedCase, "idle removal applies to Continuous and Discrete schedules only");
        }
      },
      schedule);
}

CyclicSchedule apply_to_fixpoint(const Instance& instance, CyclicSchedule schedule, TransformKind kind) {
  const std::size_t units = std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          return s.phases.size();
        } else {
          return s.slots.size();
        }
      },
      schedule);
  const std::size_t cap = 10 * std::max<std::size_t>(units, 1);

  switch (kind) {
    case TransformKind::Deidle:
      schedule = improve_idle(instance, schedule);
      for (std::size_t step = 1; step < cap; ++step) {
        try {
          schedule = improve_idle(instance, schedule);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NoIdleTime) throw;
          break;
        }
      }
      return schedule;
    case TransformKind::Average:
      return average_to_simple_cycle(instance, std::get<ContinuousSchedule>(schedule));
    case TransformKind::Canonicalize: {
      if (!std::holds_alternative<ContinuousSchedule>(schedule)) {
        throw Error(ErrorKind::MismatchedVariant, "canonicalization needs a continuous schedule");
      }
      auto current = std::get<ContinuousSchedule>(schedule);
      for (std::size_t step = 0; step < cap; ++step) {
        bool changed = false;
        const std::size_t count = production_periods(current).size();
        for (std::size_t index = 0; index < count && step < cap; ++index, ++step) {
          auto next = canonicalize_production_period(instance, current, index);
          if (!same_phases(next.phases, current.phases)) {
            changed = true;
            current = std::move(next);
          }
        }
        if (!changed) break;
      }
      return current;
    }
  }
  return schedule;
}

}  // namespace lotcycle
