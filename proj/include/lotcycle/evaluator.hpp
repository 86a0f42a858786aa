#pragma once

#include <vector>

#include "lotcycle/model.hpp"
#include "lotcycle/rational.hpp"

namespace lotcycle {

struct StockPoint {
  Rational time;
  Rational stock;
};

// Per-product stock breakpoints over one cycle, from t = 0 to t = C.
// Continuous: piecewise linear between points (one point per phase
// boundary). Discrete / Fixed: one point per end of slot, plus t = 0.
struct StockTrajectory {
  Variant variant = Variant::Continuous;
  std::vector<std::vector<StockPoint>> products;
};

struct CostReport {
  Rational cycle_length;
  Rational holding_total;
  Rational switching_total;
  Rational average_cost;  // (holding_total + switching_total) / cycle_length
  std::vector<Rational> per_product_holding;
};

// Throws InvalidSchedule if validate_schedule reports anything.
StockTrajectory stock_trajectory(const Instance& instance, const CyclicSchedule& schedule);

// Holding: end-of-slot stocks for Discrete / Fixed, the exact integral of
// the piecewise-linear stock for Continuous. Switching: s[i][j] between
// consecutive produced products in cyclic order, idle gaps skipped.
CostReport evaluate(const Instance& instance, const CyclicSchedule& schedule);

// Sequence of produced products in cyclic order with idle removed and
// consecutive repeats collapsed (a production period per entry).
std::vector<std::size_t> production_sequence(const CyclicSchedule& schedule);

Rational switching_cost(const Instance& instance, const std::vector<std::size_t>& sequence);

}  // namespace lotcycle
