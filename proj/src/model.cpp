#include "lotcycle/model.hpp"

#include <algorithm>

#include "lotcycle/errors.hpp"

namespace lotcycle {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::InfeasibleInstance: return "InfeasibleInstance";
    case ErrorKind::MismatchedVariant: return "MismatchedVariant";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::DegenerateSwitchingCosts: return "DegenerateSwitchingCosts";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::InvalidPeriodIndex: return "InvalidPeriodIndex";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::NoIdleTime: return "NoIdleTime";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::TooManyNodes: return "TooManyNodes";
    case ErrorKind::NotMetric: return "NotMetric";
    case ErrorKind::InvalidTour: return "InvalidTour";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Continuous: return "continuous";
    case Variant::Discrete: return "discrete";
    case Variant::Fixed: return "fixed";
  }
  return "unknown";
}

Variant parse_variant(std::string_view text) {
  if (text == "continuous" || text == "C") return Variant::Continuous;
  if (text == "discrete" || text == "D") return Variant::Discrete;
  if (text == "fixed" || text == "F") return Variant::Fixed;
  throw Error(ErrorKind::ParseError, "unknown variant '" + std::string(text) + "'");
}

std::vector<std::string> validate_instance(const Instance& instance) {
  std::vector<std::string> problems;
  const std::size_t n = instance.size();
  if (n == 0) problems.emplace_back("instance has no products");
  for (std::size_t i = 0; i < n; ++i) {
    const Product& p = instance.products[i];
    const std::string tag = "product " + std::to_string(i) + ": ";
    if (p.demand < 1) problems.push_back(tag + "demand rate must be >= 1");
    if (p.production < 1) problems.push_back(tag + "production rate must be >= 1");
    if (p.holding < 1) problems.push_back(tag + "holding cost must be >= 1");
  }
  if (instance.switching.size() != n) {
    problems.push_back("switching matrix must have " + std::to_string(n) + " rows");
    return problems;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (instance.switching[i].size() != n) {
      problems.push_back("switching row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (instance.switching[i][j] < 0) {
        problems.push_back("switching cost (" + std::to_string(i) + "," + std::to_string(j) + ") is negative");
      }
    }
    if (instance.switching[i][i] != 0) problems.push_back("switching diagonal entry " + std::to_string(i) + " is not 0");
  }
  return problems;
}

void require_valid(const Instance& instance) {
  auto problems = validate_instance(instance);
  if (!problems.empty()) throw Error(ErrorKind::InvalidInstance, problems.front());
}

Rational ContinuousSchedule::cycle_length() const {
  Rational total(0);
  for (const Phase& phase : phases) total += phase.duration;
  return total;
}

Variant variant_of(const CyclicSchedule& schedule) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          return Variant::Continuous;
        } else {
          return T::variant;
        }
      },
      schedule);
}

const std::vector<Rational>& initial_stock_of(const CyclicSchedule& schedule) {
  return std::visit([](const auto& s) -> const std::vector<Rational>& { return s.initial_stock; }, schedule);
}

Slot fixed_slot(const Instance& instance, std::size_t product) {
  return Slot::produce(product, Rational(instance.products.at(product).production));
}

Feasibility check_feasibility(const Instance& instance) {
  Rational load(0);
  for (const Product& p : instance.products) load += Rational(p.demand, p.production);
  return {load <= Rational(1), load};
}

CyclicSchedule construct_feasible(const Instance& instance) {
  require_valid(instance);
  auto [feasible, load] = check_feasibility(instance);
  if (!feasible) throw Error(ErrorKind::InfeasibleInstance, "load " + load.str() + " exceeds 1");

  const std::size_t n = instance.size();
  BigInt cycle = 1;
  for (const Product& p : instance.products) cycle *= p.production;

  std::vector<Rational> stock(n);
  std::vector<BigInt> block(n);
  BigInt start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Product& p = instance.products[i];
    stock[i] = Rational(BigInt(p.demand) * start, BigInt(1));
    block[i] = cycle * p.demand / p.production;  // integral: p_i divides cycle
    start += block[i];
  }
  const BigInt idle = cycle - start;

  if (instance.variant == Variant::Continuous) {
    ContinuousSchedule schedule;
    schedule.initial_stock = std::move(stock);
    for (std::size_t i = 0; i < n; ++i) {
      schedule.phases.push_back(
          Phase::produce(Rational(block[i], BigInt(1)), i, Rational(instance.products[i].production)));
    }
    if (idle > 0) schedule.phases.push_back(Phase::idle_for(Rational(idle, BigInt(1))));
    return schedule;
  }

  constexpr std::int64_t kMaxSlots = 50'000'000;
  if (cycle > kMaxSlots) {
    throw Error(ErrorKind::InvalidInstance, "constructed cycle of " + cycle.str() + " slots is too long");
  }
  std::vector<Slot> slots;
  slots.reserve(cycle.convert_to<std::size_t>());
  for (std::size_t i = 0; i < n; ++i) {
    const auto count = block[i].convert_to<std::size_t>();
    slots.insert(slots.end(), count, Slot::produce(i, Rational(instance.products[i].production)));
  }
  slots.insert(slots.end(), idle.convert_to<std::size_t>(), Slot::idle_slot());
  if (instance.variant == Variant::Discrete) return DiscreteSchedule{std::move(slots), std::move(stock)};
  return FixedSchedule{std::move(slots), std::move(stock)};
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::NegativeStock: return "NegativeStock";
    case Violation::Kind::CycleMismatch: return "CycleMismatch";
    case Violation::Kind::RateExceeded: return "RateExceeded";
    case Violation::Kind::FixedAmountMismatch: return "FixedAmountMismatch";
    case Violation::Kind::NonPositiveDuration: return "NonPositiveDuration";
    case Violation::Kind::NonPositiveRate: return "NonPositiveRate";
    case Violation::Kind::NonIntegralStock: return "NonIntegralStock";
    case Violation::Kind::RepeatedActivity: return "RepeatedActivity";
    case Violation::Kind::EmptySchedule: return "EmptySchedule";
  }
  return "Violation";
}

namespace {

void check_shape(const Instance& instance, const std::vector<Rational>& initial_stock) {
  if (initial_stock.size() != instance.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "initial stock has " + std::to_string(initial_stock.size()) +
                                                " entries for " + std::to_string(instance.size()) + " products");
  }
}

void check_index(const Instance& instance, std::size_t product, std::size_t position) {
  if (product >= instance.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "product index " + std::to_string(product) + " at position " +
                                                std::to_string(position) + " is out of range");
  }
}

// Appends NegativeStock (first occurrence per product) and CycleMismatch
// violations for a stock table indexed [time point][product].
void check_stocks(const std::vector<std::vector<Rational>>& table, const std::vector<Rational>& times,
                  std::vector<Violation>& out) {
  if (table.empty()) return;
  const std::size_t n = table.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (table[k][i].sign() < 0) {
        out.push_back({Violation::Kind::NegativeStock, i, times[k],
                       "stock " + table[k][i].str() + " at t=" + times[k].str()});
        break;
      }
    }
    if (table.back()[i] != table.front()[i]) {
      out.push_back({Violation::Kind::CycleMismatch, i, times.back(),
                     "stock " + table.back()[i].str() + " at cycle end differs from initial " +
                         table.front()[i].str()});
    }
  }
}

std::vector<Violation> validate_continuous(const Instance& instance, const ContinuousSchedule& schedule) {
  check_shape(instance, schedule.initial_stock);
  for (std::size_t k = 0; k < schedule.phases.size(); ++k) {
    if (const auto& a = schedule.phases[k].activity) check_index(instance, a->product, k);
  }
  std::vector<Violation> out;
  if (schedule.phases.empty()) {
    out.push_back({Violation::Kind::EmptySchedule, std::nullopt, Rational(0), "schedule has no phases"});
    return out;
  }

  std::vector<Rational> times{Rational(0)};
  for (std::size_t k = 0; k < schedule.phases.size(); ++k) {
    const Phase& phase = schedule.phases[k];
    const Rational& start = times.back();
    if (phase.duration.sign() <= 0) {
      out.push_back({Violation::Kind::NonPositiveDuration, std::nullopt, start,
                     "phase " + std::to_string(k) + " has duration " + phase.duration.str()});
    }
    if (phase.activity) {
      const auto& a = *phase.activity;
      const std::int64_t cap = instance.products[a.product].production;
      if (a.rate.sign() <= 0) {
        out.push_back({Violation::Kind::NonPositiveRate, a.product, start,
                       "phase " + std::to_string(k) + " produces at rate " + a.rate.str()});
      } else if (a.rate > Rational(cap)) {
        out.push_back({Violation::Kind::RateExceeded, a.product, start,
                       "phase " + std::to_string(k) + " rate " + a.rate.str() + " exceeds p=" + std::to_string(cap)});
      }
    }
    const std::size_t next = (k + 1) % schedule.phases.size();
    if (schedule.phases.size() > 1 && schedule.phases[next].activity == phase.activity) {
      out.push_back({Violation::Kind::RepeatedActivity, phase.activity ? std::optional(phase.activity->product)
                                                                       : std::nullopt,
                     start + phase.duration,
                     "phases " + std::to_string(k) + " and " + std::to_string(next) + " share their activity"});
    }
    times.push_back(start + phase.duration);
  }
  check_stocks(phase_boundary_stocks(instance, schedule), times, out);
  return out;
}

template <Variant V>
std::vector<Violation> validate_slots(const Instance& instance, const SlotSchedule<V>& schedule) {
  check_shape(instance, schedule.initial_stock);
  for (std::size_t t = 0; t < schedule.slots.size(); ++t) {
    if (const auto& j = schedule.slots[t].product) check_index(instance, *j, t);
  }
  std::vector<Violation> out;
  if (schedule.slots.empty()) {
    out.push_back({Violation::Kind::EmptySchedule, std::nullopt, Rational(0), "schedule has no slots"});
    return out;
  }
  for (std::size_t t = 0; t < schedule.slots.size(); ++t) {
    const Slot& slot = schedule.slots[t];
    if (slot.idle()) continue;
    const std::size_t j = *slot.product;
    const Rational cap(instance.products[j].production);
    const Rational start(static_cast<std::int64_t>(t));
    if (slot.amount.sign() <= 0) {
      out.push_back({Violation::Kind::NonPositiveRate, j, start,
                     "slot " + std::to_string(t + 1) + " produces amount " + slot.amount.str()});
    } else if (slot.amount > cap) {
      out.push_back({Violation::Kind::RateExceeded, j, start,
                     "slot " + std::to_string(t + 1) + " amount " + slot.amount.str() + " exceeds p=" + cap.str()});
    }
    if constexpr (V == Variant::Fixed) {
      if (slot.amount != cap && slot.amount.sign() > 0 && slot.amount <= cap) {
        out.push_back({Violation::Kind::FixedAmountMismatch, j, start,
                       "slot " + std::to_string(t + 1) + " amount " + slot.amount.str() + " must be exactly " +
                           cap.str()});
      }
    }
  }
  if constexpr (V == Variant::Fixed) {
    for (std::size_t i = 0; i < schedule.initial_stock.size(); ++i) {
      if (!schedule.initial_stock[i].is_integer()) {
        out.push_back({Violation::Kind::NonIntegralStock, i, Rational(0),
                       "initial stock " + schedule.initial_stock[i].str() + " is not an integer"});
      }
    }
  }
  std::vector<Rational> times;
  for (std::size_t t = 0; t <= schedule.slots.size(); ++t) times.emplace_back(static_cast<std::int64_t>(t));
  check_stocks(slot_stocks(instance, schedule), times, out);
  return out;
}

}  // namespace

std::vector<Violation> validate_schedule(const Instance& instance, const CyclicSchedule& schedule) {
  if (variant_of(schedule) != instance.variant) {
    throw Error(ErrorKind::MismatchedVariant, "schedule is " + std::string(to_string(variant_of(schedule))) +
                                                  ", instance is " + std::string(to_string(instance.variant)));
  }
  return std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          return validate_continuous(instance, s);
        } else {
          return validate_slots(instance, s);
        }
      },
      schedule);
}

std::vector<std::vector<Rational>> phase_boundary_stocks(const Instance& instance,
                                                         const ContinuousSchedule& schedule) {
  const std::size_t n = instance.size();
  std::vector<std::vector<Rational>> table;
  table.reserve(schedule.phases.size() + 1);
  table.push_back(schedule.initial_stock);
  for (const Phase& phase : schedule.phases) {
    std::vector<Rational> next = table.back();
    for (std::size_t i = 0; i < n; ++i) {
      Rational slope(-instance.products[i].demand);
      if (phase.activity && phase.activity->product == i) slope += phase.activity->rate;
      next[i] += slope * phase.duration;
    }
    table.push_back(std::move(next));
  }
  return table;
}

template <Variant V>
std::vector<std::vector<Rational>> slot_stocks(const Instance& instance, const SlotSchedule<V>& schedule) {
  const std::size_t n = instance.size();
  std::vector<std::vector<Rational>> table;
  table.reserve(schedule.slots.size() + 1);
  table.push_back(schedule.initial_stock);
  for (const Slot& slot : schedule.slots) {
    std::vector<Rational> next = table.back();
    for (std::size_t i = 0; i < n; ++i) next[i] -= Rational(instance.products[i].demand);
    if (slot.product) next[*slot.product] += slot.amount;
    table.push_back(std::move(next));
  }
  return table;
}

template std::vector<std::vector<Rational>> slot_stocks(const Instance&, const DiscreteSchedule&);
template std::vector<std::vector<Rational>> slot_stocks(const Instance&, const FixedSchedule&);

ContinuousSchedule rotate(const Instance& instance, const ContinuousSchedule& schedule, std::size_t start) {
  if (schedule.phases.empty()) return schedule;
  start %= schedule.phases.size();
  ContinuousSchedule out;
  out.initial_stock = phase_boundary_stocks(instance, schedule)[start];
  out.phases.assign(schedule.phases.begin() + static_cast<std::ptrdiff_t>(start), schedule.phases.end());
  out.phases.insert(out.phases.end(), schedule.phases.begin(),
                    schedule.phases.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

template <Variant V>
SlotSchedule<V> rotate(const Instance& instance, const SlotSchedule<V>& schedule, std::size_t start) {
  if (schedule.slots.empty()) return schedule;
  start %= schedule.slots.size();
  SlotSchedule<V> out;
  out.initial_stock = slot_stocks(instance, schedule)[start];
  out.slots.assign(schedule.slots.begin() + static_cast<std::ptrdiff_t>(start), schedule.slots.end());
  out.slots.insert(out.slots.end(), schedule.slots.begin(), schedule.slots.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

template DiscreteSchedule rotate(const Instance&, const DiscreteSchedule&, std::size_t);
template FixedSchedule rotate(const Instance&, const FixedSchedule&, std::size_t);

ContinuousSchedule normalize(const Instance& instance, ContinuousSchedule schedule) {
  std::vector<Phase> merged;
  for (Phase& phase : schedule.phases) {
    if (phase.duration.sign() == 0) continue;
    if (!merged.empty() && merged.back().activity == phase.activity) {
      merged.back().duration += phase.duration;
    } else {
      merged.push_back(std::move(phase));
    }
  }
  schedule.phases = std::move(merged);
  if (schedule.phases.size() > 1 && schedule.phases.front().activity == schedule.phases.back().activity) {
    schedule = rotate(instance, schedule, schedule.phases.size() - 1);
    schedule.phases[0].duration += schedule.phases[1].duration;
    schedule.phases.erase(schedule.phases.begin() + 1);
  }
  return schedule;
}

CyclicSchedule repeat(const CyclicSchedule& schedule, std::size_t times) {
  return std::visit(
      [times](auto s) -> CyclicSchedule {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ContinuousSchedule>) {
          auto one = s.phases;
          s.phases.clear();
          for (std::size_t k = 0; k < times; ++k) s.phases.insert(s.phases.end(), one.begin(), one.end());
        } else {
          auto one = s.slots;
          s.slots.clear();
          for (std::size_t k = 0; k < times; ++k) s.slots.insert(s.slots.end(), one.begin(), one.end());
        }
        return s;
      },
      schedule);
}

}  // namespace lotcycle
