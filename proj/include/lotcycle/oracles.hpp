#pragma once

#include <cstdint>
#include <vector>

#include "lotcycle/model.hpp"
#include "lotcycle/rational.hpp"

namespace lotcycle {

// Independent ground truth for tests and acceptance checks. These engines
// are deliberately naive and share no code path with the solvers.

struct BruteForceResult {
  Rational best_average_cost;
  std::int64_t best_length = 0;
  FixedSchedule best_schedule;
  std::int64_t search_space_size = 0;  // slot vectors x initial stocks examined
};

inline constexpr std::int64_t kDefaultSearchBudget = 200'000'000;

// Exhaustive LSP(F,1) search over cycle lengths 1..max_length, every
// produce/idle slot vector and every integer initial stock in [0, p).
// Minimizes (average cost, length, slot vector, initial stock).
BruteForceResult brute_force_f1(std::int64_t production, std::int64_t demand, std::int64_t holding,
                                std::int64_t max_length, std::int64_t budget = kDefaultSearchBudget);

// Ternary search for the minimizer of A t + B / t, A, B > 0. The bracket
// (0, upper] is found by doubling; function values are compared in 50-digit
// binary floating point. Stops when the bracket is below tolerance * t.
double ternary_search_c2(const Rational& a, const Rational& b, double tolerance);

// c(t) = A t + B / t - 2 sqrt(A B), relative to 2 sqrt(A B), in 50-digit
// arithmetic. Used to check the search residual.
double c2_relative_residual(const Rational& a, const Rational& b, double t);

struct TspInstance {
  std::size_t n = 0;
  CostMatrix cost;
  bool metric = false;  // triangle inequality verified

  // Checks shape (square, zero diagonal, non-negative) and sets `metric`.
  static TspInstance from_matrix(CostMatrix cost);
};

struct Tour {
  std::vector<std::size_t> order;  // a permutation of 0..n-1, starting at 0
  std::int64_t cost = 0;
};

std::int64_t tour_cost(const TspInstance& tsp, const std::vector<std::size_t>& order);

inline constexpr std::size_t kHeldKarpMaxNodes = 16;

// Exact minimum-cost Hamiltonian cycle by dynamic programming over subsets.
Tour held_karp(const TspInstance& tsp);

// Minimum over all (n-1)! tours with node 0 first.
Tour brute_force_tsp(const TspInstance& tsp);

}  // namespace lotcycle
