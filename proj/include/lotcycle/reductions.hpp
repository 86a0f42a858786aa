#pragma once

#include <optional>

#include "lotcycle/model.hpp"
#include "lotcycle/oracles.hpp"

namespace lotcycle {

// TSP -> lot-sizing constructions: products are the nodes, switching costs
// the arc costs, d_i = 1 and p_i = n.

// Discrete / Fixed: h_i = 1 + sum of all (ordered-pair) costs, so any extra
// unit of stock costs more than any tour.
Instance tsp_to_lsp_discrete(const TspInstance& tsp, Variant variant);

// Continuous: h_i = 1; needs a metric instance (NotMetric otherwise).
Instance tsp_to_lsp_continuous(const TspInstance& tsp);

// n unit slots in tour order, each producing n; the product of slot k
// (1-based) starts with stock k - 1. Average cost h n (n-1) / 2 + B / n.
CyclicSchedule tour_to_schedule_discrete(const Instance& instance, const Tour& tour);

// Simple cycle of length C, each product at rate n for C / n in tour order,
// starting from zero stock at its own period. Holding C^2 (n-1) / 2.
ContinuousSchedule tour_to_schedule_continuous(const Instance& instance, const Tour& tour, const Rational& cycle);

struct VerificationReport {
  Variant variant = Variant::Discrete;
  std::size_t n = 0;
  Tour optimal_tour;  // Held-Karp
  bool ok = false;

  // Discrete / Fixed
  std::size_t tours_scanned = 0;
  Rational best_average_cost;     // minimum evaluator cost over scanned tours
  Rational predicted_average_cost;  // h n (n-1) / 2 + B / n
  std::int64_t best_tour_cost = 0;  // tour cost of the evaluator minimizer

  // Continuous
  SquareRoot balanced_cycle;        // C* = sqrt(2 c / (n-1))
  Rational cycle_used;              // exact C*, or a convergent of it
  bool exact_cycle = false;
  Rational average_cost_squared;    // evaluator average at cycle_used, squared
  Rational predicted_average_squared;  // 2 (n-1) c
  double relative_error = 0.0;
  std::optional<bool> holding_equals_switching;  // only when C* is rational
};

inline constexpr std::size_t kVerifyMaxNodes = 12;
inline constexpr std::size_t kVerifyFullScanNodes = 9;

VerificationReport verify_correspondence(const TspInstance& tsp, Variant variant);

}  // namespace lotcycle
