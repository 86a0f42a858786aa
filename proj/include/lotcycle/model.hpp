#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lotcycle/rational.hpp"

namespace lotcycle {

enum class Variant { Continuous, Discrete, Fixed };

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

struct Product {
  std::int64_t demand = 1;      // d: units per time
  std::int64_t production = 1;  // p: maximum units per time
  std::int64_t holding = 1;     // h: cost per unit per time
};

using CostMatrix = std::vector<std::vector<std::int64_t>>;

struct Instance {
  Variant variant = Variant::Continuous;
  std::vector<Product> products;
  CostMatrix switching;  // switching[i][j]: cost of changing from i to j

  std::size_t size() const { return products.size(); }
};

// Problems that make an instance unusable (empty list when well formed):
// positive rates and holding costs, square switching matrix with zero
// diagonal and non-negative entries.
std::vector<std::string> validate_instance(const Instance& instance);
// Throws InvalidInstance listing the first problem, if any.
void require_valid(const Instance& instance);

// ---------------------------------------------------------------------------
// Schedules

struct Production {
  std::size_t product = 0;
  Rational rate;

  friend bool operator==(const Production&, const Production&) = default;
};

// A phase either idles or produces one product at a constant rate.
struct Phase {
  Rational duration;
  std::optional<Production> activity;  // nullopt: idle

  bool idle() const { return !activity.has_value(); }

  static Phase idle_for(Rational duration) { return {std::move(duration), std::nullopt}; }
  static Phase produce(Rational duration, std::size_t product, Rational rate) {
    return {std::move(duration), Production{product, std::move(rate)}};
  }
};

struct ContinuousSchedule {
  std::vector<Phase> phases;            // cyclic order
  std::vector<Rational> initial_stock;  // per product, at t = 0

  Rational cycle_length() const;
};

// One unit-length slot of a Discrete or Fixed schedule.
struct Slot {
  std::optional<std::size_t> product;  // nullopt: idle
  Rational amount;                     // 0 when idle

  bool idle() const { return !product.has_value(); }

  static Slot idle_slot() { return {std::nullopt, Rational(0)}; }
  static Slot produce(std::size_t product, Rational amount) { return {product, std::move(amount)}; }
};

// Discrete and Fixed schedules share a representation; the tag keeps them
// apart in the type system. In a Fixed schedule every producing slot must
// carry exactly p_j.
template <Variant V>
struct SlotSchedule {
  static constexpr Variant variant = V;
  std::vector<Slot> slots;              // cyclic order, slot t covers [t-1, t]
  std::vector<Rational> initial_stock;  // per product, at t = 0

  std::int64_t cycle_length() const { return static_cast<std::int64_t>(slots.size()); }
};

using DiscreteSchedule = SlotSchedule<Variant::Discrete>;
using FixedSchedule = SlotSchedule<Variant::Fixed>;

using CyclicSchedule = std::variant<ContinuousSchedule, DiscreteSchedule, FixedSchedule>;

Variant variant_of(const CyclicSchedule& schedule);
const std::vector<Rational>& initial_stock_of(const CyclicSchedule& schedule);

// A producing Fixed slot for product j of `instance` (amount p_j).
Slot fixed_slot(const Instance& instance, std::size_t product);

// ---------------------------------------------------------------------------
// Feasibility

struct Feasibility {
  bool feasible = false;
  Rational load;  // sum of d_i / p_i
};

Feasibility check_feasibility(const Instance& instance);

// A schedule of length prod(p_i): product i is produced at full rate in the
// block [t_{i-1}, t_i], t_i = t_{i-1} + C d_i / p_i, the remainder idles.
// Initial stocks are the minimal ones, d_i t_{i-1}.
CyclicSchedule construct_feasible(const Instance& instance);

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind {
    NegativeStock,
    CycleMismatch,
    RateExceeded,
    FixedAmountMismatch,
    NonPositiveDuration,
    NonPositiveRate,
    NonIntegralStock,
    RepeatedActivity,
    EmptySchedule,
  };

  Kind kind;
  std::optional<std::size_t> product;
  Rational time;
  std::string detail;
};

std::string_view to_string(Violation::Kind kind);

// Collects every violated constraint. Throws MismatchedVariant when the
// schedule kind does not match the instance and IndexOutOfRange for bad
// product indices or a stock vector of the wrong length.
std::vector<Violation> validate_schedule(const Instance& instance, const CyclicSchedule& schedule);

// ---------------------------------------------------------------------------
// Stock simulation shared by validation and the evaluator.

// Stock of every product at the start of each phase and at C:
// result[k][i] is q_i at the start of phase k, result.back() is q_i^C.
std::vector<std::vector<Rational>> phase_boundary_stocks(const Instance& instance,
                                                         const ContinuousSchedule& schedule);

// End-of-slot stocks: result[t][i] is q_i^t for t = 0..C.
template <Variant V>
std::vector<std::vector<Rational>> slot_stocks(const Instance& instance, const SlotSchedule<V>& schedule);

// Merges cyclically consecutive phases with identical activity and drops
// zero-length phases. A merge across the cycle end rotates the schedule so
// the merged phase comes first.
ContinuousSchedule normalize(const Instance& instance, ContinuousSchedule schedule);

// Start the cycle at phase / slot `start`; initial stocks follow.
ContinuousSchedule rotate(const Instance& instance, const ContinuousSchedule& schedule, std::size_t start);
template <Variant V>
SlotSchedule<V> rotate(const Instance& instance, const SlotSchedule<V>& schedule, std::size_t start);

// Repeats the cycle `times` times. A one-phase Continuous cycle comes back
// with identical neighbouring phases, which validation rejects.
CyclicSchedule repeat(const CyclicSchedule& schedule, std::size_t times);

}  // namespace lotcycle
