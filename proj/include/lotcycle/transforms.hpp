#pragma once

#include <cstddef>
#include <vector>

#include "lotcycle/model.hpp"

namespace lotcycle {

// A production period: a maximal run of consecutive phases of one product,
// in cyclic order. `first` indexes the schedule's phases; a period may wrap
// past the last phase.
struct ProductionPeriod {
  std::size_t product = 0;
  std::size_t first = 0;
  std::size_t count = 0;
};

std::vector<ProductionPeriod> production_periods(const ContinuousSchedule& schedule);

// Rewrites one production period of product i as a rate-d_i phase followed
// by a rate-p_i phase with the same duration, output and end stock. The new
// stock path is the pointwise lowest one reachable with rates in [d_i, p_i],
// so the average cost never increases. A period that contains a phase below
// rate d_i is returned unchanged. A period that wraps past the cycle end is
// rotated to start at t = 0.
ContinuousSchedule canonicalize_production_period(const Instance& instance, const ContinuousSchedule& schedule,
                                                  std::size_t period_index);

// For a two-product cycle with four production periods (1,2,1,2), returns
// the simple cycle of half the length whose period lengths are the averages
// of the input's, in canonical shape. Throws UnsupportedShape otherwise.
ContinuousSchedule average_to_simple_cycle(const Instance& instance, const ContinuousSchedule& schedule);

// Strictly cheaper valid schedule of the same length, obtained by moving
// output from just before the first idle interval into it. Throws
// NoIdleTime when there is nothing idle.
CyclicSchedule improve_idle(const Instance& instance, const CyclicSchedule& schedule);

enum class TransformKind { Canonicalize, Average, Deidle };

// Applies a transform until it no longer changes the schedule (or raises
// NoIdleTime / UnsupportedShape after the first step), capped at
// 10 * (phase or slot count) iterations. Canonicalize sweeps all periods.
CyclicSchedule apply_to_fixpoint(const Instance& instance, CyclicSchedule schedule, TransformKind kind);

}  // namespace lotcycle
