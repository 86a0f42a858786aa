#pragma once

#include <cstdint>
#include <optional>

#include "lotcycle/evaluator.hpp"
#include "lotcycle/model.hpp"
#include "lotcycle/rational.hpp"

namespace lotcycle {

struct ContinuousSolution {
  ContinuousSchedule schedule;
  CostReport report;
};

struct DiscreteSolution {
  DiscreteSchedule schedule;
  CostReport report;
};

// LSP(C,1): one phase at rate d_1 (canonical cycle length 1), zero cost.
ContinuousSolution solve_c1(const Instance& instance);

// LSP(D,1): one slot producing d_1, zero cost.
DiscreteSolution solve_d1(const Instance& instance);

// ---------------------------------------------------------------------------
// LSP(F,1)

// Polynomial-delay generator for the optimal single-product Fixed schedule:
// from stock q a slot produces iff q < d, production moves q to q + p - d,
// idling to q - d. Stocks stay in [0, p) once there and the state returns
// to its start after p / gcd(p, d) slots.
class GreedyF1Generator {
 public:
  // `stock` must lie in [0, p).
  GreedyF1Generator(std::int64_t production, std::int64_t demand, std::int64_t stock);

  // Next slot decision (true = produce), or nullopt once the cycle closed.
  std::optional<bool> next();

  std::int64_t stock() const { return stock_; }

 private:
  std::int64_t production_;
  std::int64_t demand_;
  std::int64_t start_;
  std::int64_t stock_;
  bool started_ = false;
};

struct F1Solution {
  std::int64_t cycle_length = 0;  // l* = p / G
  Rational unit_cost;             // average cost per time unit
  Rational total_cost;            // cost per cycle
  FixedSchedule schedule;         // starts from the (reduced) initial stock
  std::int64_t gcd = 1;           // G = gcd(p, d)
  std::int64_t idle_prefix = 0;   // idle slots spent reducing an initial stock >= p
};

F1Solution solve_f1(const Instance& instance, std::int64_t initial_stock = 0);

// Closed forms for LSP(F,1).
std::int64_t f1_min_cycle_length(std::int64_t production, std::int64_t demand);
Rational f1_optimal_unit_cost(std::int64_t production, std::int64_t demand, std::int64_t holding);
// Cycle cost of the greedy schedule started from q0 in [0, p).
Rational f1_offset_cycle_cost(std::int64_t production, std::int64_t demand, std::int64_t holding,
                              std::int64_t initial_stock);

// ---------------------------------------------------------------------------
// LSP(C,2)

// Optimal two-product Continuous cycle. With products relabeled as (first,
// second) the optimal cycle is
//   first at rate p for t, second at rate d for C - t - L, second at rate p for L,
// with C = t p_first / d_first and L = d_second t / (p_second - d_second).
// Its average cost is A t + B / t.
struct C2Solution {
  Instance instance;
  std::size_t first = 0;
  std::size_t second = 1;
  bool role_swap = false;
  Rational a;  // holding coefficient A
  Rational b;  // switching coefficient B
  SquareRoot t_star;        // sqrt(B / A)
  SquareRoot cycle_length;  // t* p_first / d_first
  SquareRoot average_cost;  // 2 sqrt(A B)

  Rational cost_at(const Rational& t) const { return a * t + b / t; }
  Rational cycle_length_at(const Rational& t) const;
  // The three-phase schedule for any rational t > 0 (original labels).
  ContinuousSchedule schedule_at(const Rational& t) const;
  // Whether the rate-d phase of schedule_at has zero length.
  bool middle_phase_empty() const;
};

// Coefficients of c(t) = A t + B / t when `first` produces first.
std::pair<Rational, Rational> c2_coefficients(const Instance& instance, std::size_t first, std::size_t second);

C2Solution solve_c2(const Instance& instance);

}  // namespace lotcycle
