#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lotcycle/evaluator.hpp"
#include "lotcycle/model.hpp"
#include "lotcycle/oracles.hpp"
#include "lotcycle/reductions.hpp"
#include "lotcycle/solvers.hpp"

// JSON documents for instances, schedules, reports and TSP files. Exact
// quantities are "num/den" strings; decimal renderings are advisory.
namespace lotcycle::io {

using Json = nlohmann::ordered_json;

// Reads a whole file as JSON. Throws ParseError on I/O or syntax errors.
Json read_json_file(const std::string& path);

Json to_json(const Rational& value);
Rational rational_from_json(const Json& value);

Instance instance_from_json(const Json& doc);
Json to_json(const Instance& instance);

// `phases` for Continuous instances, `slots` otherwise. A Fixed slot may
// omit `amount` (it then carries p_j).
CyclicSchedule schedule_from_json(const Json& doc, const Instance& instance);
Json to_json(const CyclicSchedule& schedule);

Json to_json(const CostReport& report);
Json to_json(const std::vector<Violation>& violations);

TspInstance tsp_from_json(const Json& doc);
Json to_json(const TspInstance& tsp);
Json to_json(const Tour& tour);

Json to_json(const F1Solution& solution);
// `t` is the rational parameter the emitted schedule uses.
Json to_json(const C2Solution& solution, const Rational& t);
Json to_json(const BruteForceResult& result);
Json to_json(const VerificationReport& report);

// Rows `t,product,stock` at every breakpoint, values as decimals.
void write_trajectory_csv(std::ostream& out, const StockTrajectory& trajectory);

}  // namespace lotcycle::io
