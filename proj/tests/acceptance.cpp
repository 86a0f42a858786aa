// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lotcycle/errors.hpp"
#include "lotcycle/evaluator.hpp"
#include "lotcycle/oracles.hpp"
#include "lotcycle/reductions.hpp"
#include "lotcycle/solvers.hpp"
#include "lotcycle/transforms.hpp"
#include "support/generators.hpp"

using namespace lotcycle;
using lotcycle::testing::Rng;

namespace {

// Collects the first few failure descriptions of a criterion.
class Check {
 public:
  void expect(bool condition, const std::function<std::string()>& describe) {
    ++checks_;
    if (condition) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(describe());
  }
  bool ok() const { return failures_ == 0; }
  std::int64_t checks() const { return checks_; }
  std::int64_t failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::int64_t checks_ = 0;
  std::int64_t failures_ = 0;
  std::vector<std::string> notes_;
};

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

Instance single_fixed(std::int64_t p, std::int64_t d, std::int64_t h) {
  return Instance{Variant::Fixed, {Product{d, p, h}}, {{0}}};
}

// Optimal single-product fixed cost h (p - G) / 2.
Rational closed_form_unit_cost(std::int64_t p, std::int64_t d, std::int64_t h) {
  return Rational(h * (p - std::gcd(p, d)), 2);
}

void criterion_1(Check& check) {
  for (std::int64_t p = 1; p <= 12; ++p) {
    for (std::int64_t d = 1; d <= p; ++d) {
      for (std::int64_t h : {1, 3}) {
        const std::int64_t g = std::gcd(p, d);
        const auto oracle = brute_force_f1(p, d, h, 12);
        check.expect(oracle.best_average_cost == closed_form_unit_cost(p, d, h), [&] {
          return cat("p=", p, " d=", d, " h=", h, ": oracle cost ", oracle.best_average_cost, " vs closed form ",
                     closed_form_unit_cost(p, d, h));
        });
        check.expect(oracle.best_length == p / g, [&] {
          return cat("p=", p, " d=", d, " h=", h, ": oracle length ", oracle.best_length, " vs ", p / g);
        });
        const auto solved = solve_f1(single_fixed(p, d, h));
        check.expect(solved.unit_cost == oracle.best_average_cost && solved.cycle_length == oracle.best_length,
                     [&] { return cat("p=", p, " d=", d, " h=", h, ": solver disagrees with the oracle"); });
      }
    }
  }
}

void criterion_2(Check& check) {
  for (std::int64_t p = 1; p <= 200; ++p) {
    for (std::int64_t d = 1; d <= p; ++d) {
      const std::int64_t g = std::gcd(p, d);
      const Instance instance = single_fixed(p, d, 1);
      const auto solved = solve_f1(instance);
      const auto violations = validate_schedule(instance, solved.schedule);
      check.expect(violations.empty(), [&] { return cat("p=", p, " d=", d, ": greedy schedule invalid"); });
      if (!violations.empty()) continue;

      const auto stocks = slot_stocks(instance, solved.schedule);
      std::vector<std::int64_t> seen;
      for (std::size_t t = 1; t < stocks.size(); ++t) {
        seen.push_back(static_cast<std::int64_t>(stocks[t][0].numerator()));
      }
      std::sort(seen.begin(), seen.end());
      std::vector<std::int64_t> expected;
      for (std::int64_t q = 0; q < p; q += g) expected.push_back(q);
      check.expect(seen == expected, [&] { return cat("p=", p, " d=", d, ": stocks are not the multiples of G"); });

      const auto report = evaluate(instance, solved.schedule);
      check.expect(report.average_cost == closed_form_unit_cost(p, d, 1) && report.cycle_length == Rational(p / g),
                   [&] { return cat("p=", p, " d=", d, ": evaluator gives ", report.average_cost); });
    }
  }
}

void criterion_3(Check& check) {
  for (std::int64_t p = 1; p <= 50; ++p) {
    for (std::int64_t d = 1; d <= p; ++d) {
      const std::int64_t g = std::gcd(p, d);
      for (std::int64_t q0 = 0; q0 < p; ++q0) {
        for (std::int64_t h : {1, 2}) {
          const Instance instance = single_fixed(p, d, h);
          const auto solved = solve_f1(instance, q0);
          const Rational base = Rational(h * p, 2) * Rational(p / g - 1);
          const Rational expected = q0 % g == 0 ? base : base + Rational(h * p, g) * Rational(q0 % g);
          const Rational total = evaluate(instance, solved.schedule).holding_total;
          check.expect(total == expected, [&] {
            return cat("p=", p, " d=", d, " q0=", q0, " h=", h, ": cycle cost ", total, " vs ", expected);
          });
        }
      }
    }
  }
}

void criterion_4(Check& check) {
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const Instance instance = lotcycle::testing::random_c2_instance(rng, 20);
    const auto s = solve_c2(instance);

    const double exact = s.t_star.to_double();
    const double found = ternary_search_c2(s.a, s.b, 1e-12);
    check.expect(std::abs(found - exact) <= 1e-9 * exact,
                 [&] { return cat("instance ", k, ": ternary ", found, " vs ", exact); });

    // A and B recovered from the evaluator at t = 1 and t = 2:
    // c(1) = A + B, c(2) = 2A + B/2.
    const Rational c1 = evaluate(instance, s.schedule_at(Rational(1))).average_cost;
    const Rational c2 = evaluate(instance, s.schedule_at(Rational(2))).average_cost;
    const Rational a = (c2 - c1 / Rational(2)) * Rational(2, 3);
    const Rational b = c1 - a;
    check.expect(a == s.a && b == s.b, [&] { return cat("instance ", k, ": evaluator A, B = ", a, ", ", b); });
    check.expect(s.average_cost.radicand == Rational(4) * a * b,
                 [&] { return cat("instance ", k, ": avg_cost_squared ", s.average_cost.radicand); });

    for (int j = 0; j < 10; ++j) {
      const Rational t = rng.rational(0, 5, 200) + Rational(1, 211);
      const auto schedule = s.schedule_at(t);
      const bool valid = validate_schedule(instance, schedule).empty();
      check.expect(valid, [&] { return cat("instance ", k, ": schedule_at(", t, ") invalid"); });
      if (!valid) continue;
      const Rational value = evaluate(instance, schedule).average_cost;
      check.expect(value == s.a * t + s.b / t,
                   [&] { return cat("instance ", k, ": evaluate at t=", t, " gives ", value); });
    }

    Rational t1 = rng.rational(0, 5, 100) + Rational(1, 101);
    Rational t2 = rng.rational(0, 5, 100) + Rational(1, 103);
    if (t2 < t1) std::swap(t1, t2);
    check.expect(s.cost_at((t1 + t2) / Rational(2)) <= (s.cost_at(t1) + s.cost_at(t2)) / Rational(2),
                 [&] { return cat("instance ", k, ": midpoint convexity fails"); });
  }
}

bool has_rate_d_phase(const Instance& instance, const ContinuousSchedule& schedule) {
  for (const Phase& phase : schedule.phases) {
    if (phase.activity && phase.activity->rate == Rational(instance.products[phase.activity->product].demand) &&
        phase.activity->rate != Rational(instance.products[phase.activity->product].production)) {
      return true;
    }
  }
  return false;
}

void criterion_5(Check& check) {
  Rng rng(5);
  for (int k = 0; k < 500; ++k) {
    for (bool tight : {true, false}) {
      const Instance instance =
          tight ? lotcycle::testing::random_tight_c2_instance(rng) : lotcycle::testing::random_slack_c2_instance(rng);
      const auto s = solve_c2(instance);
      const auto schedule = s.schedule_at(s.t_star.convergent());
      const bool empty = !has_rate_d_phase(instance, schedule) && schedule.phases.size() == 2;
      check.expect(empty == tight && s.middle_phase_empty() == tight, [&] {
        return cat(tight ? "tight" : "slack", " instance ", k, ": middle phase empty = ", empty);
      });
    }
  }
}

void criterion_6(Check& check) {
  std::vector<Product> pairs;
  for (std::int64_t p = 1; p <= 6; ++p)
    for (std::int64_t d = 1; d <= p; ++d) pairs.push_back(Product{d, p, 1});

  auto run = [&](const std::vector<Product>& products) {
    for (Variant variant : {Variant::Continuous, Variant::Discrete, Variant::Fixed}) {
      Instance instance{variant, products, {}};
      instance.switching.assign(products.size(), std::vector<std::int64_t>(products.size(), 1));
      for (std::size_t i = 0; i < products.size(); ++i) instance.switching[i][i] = 0;
      const bool feasible = lotcycle::testing::load_at_most_one(instance);
      bool validates = false;
      try {
        validates = validate_schedule(instance, construct_feasible(instance)).empty();
      } catch (const Error& e) {
        validates = false;
      }
      check.expect(validates == feasible, [&] {
        std::ostringstream out;
        out << to_string(variant) << " (d,p) =";
        for (const auto& p : products) out << " (" << p.demand << "," << p.production << ")";
        out << ": validates " << validates << ", load <= 1 " << feasible;
        return out.str();
      });
    }
  };
  for (const auto& a : pairs) {
    run({a});
    for (const auto& b : pairs) {
      run({a, b});
      for (const auto& c : pairs) run({a, b, c});
    }
  }

  Rng rng(6);
  std::int64_t validated = 0;
  for (int k = 0; k < 6000; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const Variant variant = static_cast<Variant>(k % 3);
    const Instance instance = lotcycle::testing::random_instance(rng, variant, n, 6, 3, 3, false);
    CyclicSchedule schedule;
    if (variant == Variant::Continuous) {
      schedule = lotcycle::testing::random_continuous_attempt(rng, instance);
    } else if (variant == Variant::Discrete) {
      schedule = lotcycle::testing::random_slot_attempt<Variant::Discrete>(rng, instance);
    } else {
      schedule = lotcycle::testing::random_slot_attempt<Variant::Fixed>(rng, instance);
    }
    if (!validate_schedule(instance, schedule).empty()) continue;
    ++validated;
    check.expect(check_feasibility(instance).feasible,
                 [&] { return cat("random schedule ", k, " validates on an infeasible instance"); });
  }
  check.expect(validated >= 1000, [&] { return cat("only ", validated, " random schedules validated"); });
}

void criterion_7(Check& check) {
  Rng rng(7);
  // canonicalize
  for (int k = 0; k < 1000; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const Instance instance = lotcycle::testing::random_instance(rng, Variant::Continuous, n, 12, 8, 8, true);
    lotcycle::testing::ContinuousOptions options;
    options.idle = rng.coin();
    options.rates_at_least_demand = rng.coin();
    options.max_phases = 3;
    const auto schedule = lotcycle::testing::random_continuous_schedule(rng, instance, options);
    const auto periods = production_periods(schedule);
    const auto index = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(periods.size()) - 1));
    const auto out = canonicalize_production_period(instance, schedule, index);
    const bool valid = validate_schedule(instance, out).empty();
    check.expect(valid, [&] { return cat("canonicalize case ", k, ": invalid output"); });
    if (valid) {
      check.expect(evaluate(instance, out).average_cost <= evaluate(instance, schedule).average_cost,
                   [&] { return cat("canonicalize case ", k, ": cost increased"); });
    }
  }
  // average
  for (int k = 0; k < 1000; ++k) {
    const Instance instance = lotcycle::testing::random_c2_instance(rng, 12);
    const auto schedule = lotcycle::testing::random_four_period_cycle(rng, instance);
    const auto out = average_to_simple_cycle(instance, schedule);
    const bool valid = validate_schedule(instance, out).empty();
    check.expect(valid, [&] { return cat("average case ", k, ": invalid output"); });
    if (valid) {
      check.expect(evaluate(instance, out).average_cost <= evaluate(instance, schedule).average_cost,
                   [&] { return cat("average case ", k, ": cost increased"); });
    }
  }
  // improve_idle, Continuous and Discrete
  for (int k = 0; k < 1000; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    Instance instance = lotcycle::testing::random_instance(rng, Variant::Continuous, n, 9, 8, 8, true);
    if (check_feasibility(instance).load == Rational(1)) {
      --k;
      continue;
    }
    CyclicSchedule schedule;
    if (k % 2 == 0) {
      lotcycle::testing::ContinuousOptions options;
      options.idle = true;
      schedule = lotcycle::testing::random_continuous_schedule(rng, instance, options);
    } else {
      instance.variant = Variant::Discrete;
      schedule = lotcycle::testing::random_discrete_schedule(rng, instance, true, 16);
    }
    const auto out = improve_idle(instance, schedule);
    const bool valid = validate_schedule(instance, out).empty();
    check.expect(valid, [&] { return cat("improve_idle case ", k, ": invalid output"); });
    if (valid) {
      const auto before = evaluate(instance, schedule);
      const auto after = evaluate(instance, out);
      check.expect(after.average_cost < before.average_cost && after.cycle_length == before.cycle_length,
                   [&] { return cat("improve_idle case ", k, ": no strict decrease"); });
    }
  }
}

void criterion_8(Check& check) {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto n = static_cast<std::size_t>(3 + k % 6);
    const auto tsp = lotcycle::testing::random_tsp(rng, n);
    const Variant variant = k % 2 ? Variant::Fixed : Variant::Discrete;
    const Instance instance = tsp_to_lsp_discrete(tsp, variant);

    const Tour dp = held_karp(tsp);
    const Tour exhaustive = brute_force_tsp(tsp);
    check.expect(dp.cost == exhaustive.cost,
                 [&] { return cat("instance ", k, ": Held-Karp ", dp.cost, " vs brute force ", exhaustive.cost); });

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rational best;
    std::int64_t best_tour = 0;
    bool first = true;
    do {
      const Rational cost = evaluate(instance, tour_to_schedule_discrete(instance, Tour{order, 0})).average_cost;
      if (first || cost < best) {
        best = cost;
        best_tour = tour_cost(tsp, order);
        first = false;
      }
    } while (std::next_permutation(order.begin() + 1, order.end()));

    const auto nn = static_cast<std::int64_t>(n);
    const Rational predicted =
        Rational(instance.products[0].holding) * Rational(nn * (nn - 1), 2) + Rational(dp.cost, nn);
    check.expect(best == predicted,
                 [&] { return cat("instance ", k, ": scanned minimum ", best, " vs predicted ", predicted); });
    check.expect(best_tour == dp.cost,
                 [&] { return cat("instance ", k, ": minimizing tour costs ", best_tour, " vs ", dp.cost); });
    check.expect(verify_correspondence(tsp, variant).ok, [&] { return cat("instance ", k, ": verifier not ok"); });
  }
}

void criterion_9(Check& check) {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto n = static_cast<std::size_t>(3 + k % 4);
    const auto tsp = lotcycle::testing::random_metric_tsp(rng, n);
    const auto report = verify_correspondence(tsp, Variant::Continuous);
    const Rational predicted = Rational(2 * (static_cast<std::int64_t>(n) - 1) * report.optimal_tour.cost);
    const bool close = abs(report.average_cost_squared - predicted) <= predicted * Rational(1, 1'000'000'000);
    check.expect(close && report.ok, [&] {
      return cat("instance ", k, ": squared average ", report.average_cost_squared.decimal(), " vs ", predicted);
    });
    if (report.exact_cycle) {
      check.expect(report.holding_equals_switching == std::optional<bool>(true),
                   [&] { return cat("instance ", k, ": H != W at exact C*"); });
    }

    // Scale costs by a b, where 2 c / (n - 1) = a / b; the balanced cycle
    // becomes exactly a and H = W must hold as an identity.
    const Rational ratio = report.balanced_cycle.radicand;
    const BigInt lambda = ratio.numerator() * ratio.denominator();
    CostMatrix scaled = tsp.cost;
    for (auto& row : scaled)
      for (auto& c : row) c *= static_cast<std::int64_t>(lambda);
    const auto exact = verify_correspondence(TspInstance::from_matrix(scaled), Variant::Continuous);
    check.expect(exact.exact_cycle && exact.cycle_used == Rational(ratio.numerator(), BigInt(1)) &&
                     exact.holding_equals_switching == std::optional<bool>(true) && exact.ok,
                 [&] { return cat("instance ", k, ": scaled instance does not balance exactly"); });
  }
}

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  void (*body)(Check&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "F,1 closed form vs brute force, 1<=d<=p<=12, h in {1,3}", 300, criterion_1},
      {2, "greedy F,1 generator for all 1<=d<=p<=200", 60, criterion_2},
      {3, "offset greedy cycle cost for all 1<=d<=p<=50, q0 in [0,p)", 60, criterion_3},
      {4, "C,2 optimizer on 1000 random instances", 120, criterion_4},
      {5, "C,2 middle phase empty iff tight", 10, criterion_5},
      {6, "feasibility: construct validates iff load <= 1; random valid schedules", 120, criterion_6},
      {7, "transforms on 1000 randomized cases each", 120, criterion_7},
      {8, "discrete/fixed TSP correspondence on 50 instances", 180, criterion_8},
      {9, "continuous TSP correspondence on 20 metric instances", 60, criterion_9},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    std::string crash;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      crash = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= criterion.budget_seconds;
    const bool pass = check.ok() && crash.empty() && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s [%lld checks, %.2fs of %.0fs]\n", pass ? "PASS" : "FAIL", criterion.number,
                criterion.title, static_cast<long long>(check.checks()), seconds, criterion.budget_seconds);
    if (!crash.empty()) std::printf("    exception: %s\n", crash.c_str());
    if (!in_time) std::printf("    over the time budget\n");
    for (const std::string& note : check.notes()) std::printf("    %s\n", note.c_str());
    if (check.failures() > static_cast<std::int64_t>(check.notes().size())) {
      std::printf("    ... %lld failures in total\n", static_cast<long long>(check.failures()));
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
