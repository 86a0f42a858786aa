#include "lotcycle/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lotcycle/errors.hpp"

namespace lotcycle {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

Float50 to_float(const Rational& value) {
  return Float50(value.numerator().str()) / Float50(value.denominator().str());
}

// Slot vectors compare as produce/idle sequences, slot 1 first, idle < produce.
bool slots_less(std::uint64_t a, std::uint64_t b, std::int64_t length) {
  for (std::int64_t t = 0; t < length; ++t) {
    const bool x = (a >> t) & 1U;
    const bool y = (b >> t) & 1U;
    if (x != y) return y;
  }
  return false;
}

}  // namespace

BruteForceResult brute_force_f1(std::int64_t production, std::int64_t demand, std::int64_t holding,
                                std::int64_t max_length, std::int64_t budget) {
  if (demand < 1 || production < demand) throw Error(ErrorKind::InvalidInstance, "needs 1 <= d <= p");
  if (max_length < production / std::gcd(production, demand)) {
    throw Error(ErrorKind::InvalidInstance, "max_length is below p / gcd(p, d)");
  }
  if (max_length > 40) throw Error(ErrorKind::SearchSpaceTooLarge, "max_length above 40");
  const long double space = std::ldexp(1.0L, static_cast<int>(max_length)) * static_cast<long double>(max_length) *
                            static_cast<long double>(production);
  if (space > static_cast<long double>(budget)) {
    throw Error(ErrorKind::SearchSpaceTooLarge,
                "2^L * L * p exceeds the budget of " + std::to_string(budget));
  }

  BruteForceResult result;
  bool found = false;
  std::int64_t best_sum = 0;  // total end-of-slot stock of the incumbent
  std::int64_t best_length = 0;
  std::uint64_t best_mask = 0;
  std::int64_t best_stock = 0;

  for (std::int64_t length = 1; length <= max_length; ++length) {
    const std::uint64_t masks = std::uint64_t{1} << length;
    for (std::int64_t start = 0; start < production; ++start) {
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        ++result.search_space_size;
        if (static_cast<std::int64_t>(std::popcount(mask)) * production != length * demand) continue;
        std::int64_t stock = start;
        std::int64_t sum = 0;
        bool valid = true;
        for (std::int64_t t = 0; t < length; ++t) {
          stock += ((mask >> t) & 1U ? production : 0) - demand;
          if (stock < 0) {
            valid = false;
            break;
          }
          sum += stock;
        }
        if (!valid) continue;
        bool better = !found;
        if (found) {
          // sum / length vs best_sum / best_length
          const auto lhs = static_cast<__int128>(sum) * best_length;
          const auto rhs = static_cast<__int128>(best_sum) * length;
          if (lhs != rhs) {
            better = lhs < rhs;
          } else if (length != best_length) {
            better = length < best_length;
          } else if (mask != best_mask) {
            better = slots_less(mask, best_mask, length);
          } else {
            better = start < best_stock;
          }
        }
        if (better) {
          found = true;
          best_sum = sum;
          best_length = length;
          best_mask = mask;
          best_stock = start;
        }
      }
    }
  }

  result.best_length = best_length;
  result.best_average_cost = Rational(holding * best_sum, best_length);
  result.best_schedule.initial_stock = {Rational(best_stock)};
  for (std::int64_t t = 0; t < best_length; ++t) {
    result.best_schedule.slots.push_back((best_mask >> t) & 1U ? Slot::produce(0, Rational(production))
                                                               : Slot::idle_slot());
  }
  return result;
}

double ternary_search_c2(const Rational& a, const Rational& b, double tolerance) {
  if (a.sign() <= 0 || b.sign() <= 0) throw Error(ErrorKind::InvalidInstance, "A and B must be positive");
  const Float50 fa = to_float(a);
  const Float50 fb = to_float(b);
  auto cost = [&](const Float50& t) { return fa * t + fb / t; };

  Float50 hi = 1;
  while (cost(hi) <= cost(hi / 2)) hi *= 2;
  Float50 lo = 0;
  const Float50 tol(tolerance);
  for (int iteration = 0; iteration < 10'000; ++iteration) {
    const Float50 width = hi - lo;
    if (lo > 0 && width <= tol * lo / 100) break;
    const Float50 m1 = lo + width / 3;
    const Float50 m2 = hi - width / 3;
    if (cost(m1) < cost(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

double c2_relative_residual(const Rational& a, const Rational& b, double t) {
  const Float50 fa = to_float(a);
  const Float50 fb = to_float(b);
  const Float50 ft(t);
  const Float50 optimum = 2 * boost::multiprecision::sqrt(fa * fb);
  return static_cast<double>((fa * ft + fb / ft - optimum) / optimum);
}

TspInstance TspInstance::from_matrix(CostMatrix cost) {
  TspInstance tsp;
  tsp.n = cost.size();
  if (tsp.n == 0) throw Error(ErrorKind::InvalidInstance, "TSP instance has no nodes");
  for (std::size_t i = 0; i < tsp.n; ++i) {
    if (cost[i].size() != tsp.n) throw Error(ErrorKind::InvalidInstance, "cost matrix is not square");
    if (cost[i][i] != 0) throw Error(ErrorKind::InvalidInstance, "cost matrix diagonal must be 0");
    for (std::int64_t c : cost[i]) {
      if (c < 0) throw Error(ErrorKind::InvalidInstance, "costs must be non-negative");
    }
  }
  tsp.metric = true;
  for (std::size_t i = 0; i < tsp.n && tsp.metric; ++i) {
    for (std::size_t j = 0; j < tsp.n && tsp.metric; ++j) {
      for (std::size_t k = 0; k < tsp.n; ++k) {
        if (cost[i][k] > cost[i][j] + cost[j][k]) {
          tsp.metric = false;
          break;
        }
      }
    }
  }
  tsp.cost = std::move(cost);
  return tsp;
}

std::int64_t tour_cost(const TspInstance& tsp, const std::vector<std::size_t>& order) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < order.size(); ++k) total += tsp.cost[order[k]][order[(k + 1) % order.size()]];
  return total;
}

Tour held_karp(const TspInstance& tsp) {
  const std::size_t n = tsp.n;
  if (n > kHeldKarpMaxNodes) {
    throw Error(ErrorKind::TooManyNodes, std::to_string(n) + " nodes exceed " + std::to_string(kHeldKarpMaxNodes));
  }
  if (n <= 1) return {{0}, 0};

  // best[mask][j]: cheapest path 0 -> ... -> j through the nodes of mask
  // (node 0 implicit, bit k-1 stands for node k).
  const std::size_t rest = n - 1;
  const std::size_t subsets = std::size_t{1} << rest;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> best(subsets * rest, kInf);
  std::vector<std::uint8_t> parent(subsets * rest, 0);
  auto at = [rest](std::size_t mask, std::size_t j) { return mask * rest + j; };

  for (std::size_t j = 0; j < rest; ++j) best[at(std::size_t{1} << j, j)] = tsp.cost[0][j + 1];
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (std::size_t j = 0; j < rest; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const std::int64_t here = best[at(mask, j)];
      if (here >= kInf) continue;
      for (std::size_t k = 0; k < rest; ++k) {
        if (mask & (std::size_t{1} << k)) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const std::int64_t value = here + tsp.cost[j + 1][k + 1];
        if (value < best[at(next, k)]) {
          best[at(next, k)] = value;
          parent[at(next, k)] = static_cast<std::uint8_t>(j);
        }
      }
    }
  }

  const std::size_t full = subsets - 1;
  std::size_t last = 0;
  std::int64_t total = kInf;
  for (std::size_t j = 0; j < rest; ++j) {
    const std::int64_t value = best[at(full, j)] + tsp.cost[j + 1][0];
    if (value < total) {
      total = value;
      last = j;
    }
  }

  std::vector<std::size_t> reversed;
  std::size_t mask = full;
  std::size_t j = last;
  while (true) {
    reversed.push_back(j + 1);
    const std::size_t previous = mask ^ (std::size_t{1} << j);
    if (previous == 0) break;
    j = parent[at(mask, j)];
    mask = previous;
  }
  Tour tour;
  tour.order.push_back(0);
  tour.order.insert(tour.order.end(), reversed.rbegin(), reversed.rend());
  tour.cost = total;
  return tour;
}

Tour brute_force_tsp(const TspInstance& tsp) {
  std::vector<std::size_t> order(tsp.n);
  std::iota(order.begin(), order.end(), 0);
  Tour best{order, tour_cost(tsp, order)};
  if (tsp.n <= 2) return best;
  while (std::next_permutation(order.begin() + 1, order.end())) {
    const std::int64_t cost = tour_cost(tsp, order);
    if (cost < best.cost) best = {order, cost};
  }
  return best;
}

}  // namespace lotcycle
