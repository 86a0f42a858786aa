// End-to-end flows across modules and through the built executable.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <unistd.h>

#include <json.hpp>

#include "lotcycle/evaluator.hpp"
#include "lotcycle/io.hpp"
#include "lotcycle/reductions.hpp"
#include "lotcycle/solvers.hpp"
#include "lotcycle/transforms.hpp"
#include "support/generators.hpp"

using namespace lotcycle;
using namespace lotcycle::io;
using lotcycle::testing::Rng;
namespace fs = std::filesystem;

namespace {

struct Output {
  int code = 0;
  std::string text;
};

Output shell(const std::string& command) {
  Output result;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.text.append(buffer.data(), got);
  const int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("lotcycle-pipeline-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("construct, canonicalize, deidle: cost only goes down") {
  Rng rng(401);
  for (int k = 0; k < 40; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    Instance instance = lotcycle::testing::random_instance(rng, Variant::Continuous, n, 8, 5, 5, true);
    const CyclicSchedule built = construct_feasible(instance);
    REQUIRE(validate_schedule(instance, built).empty());
    const Rational start = evaluate(instance, built).average_cost;

    const CyclicSchedule canonical = apply_to_fixpoint(instance, built, TransformKind::Canonicalize);
    REQUIRE(validate_schedule(instance, canonical).empty());
    const Rational after = evaluate(instance, canonical).average_cost;
    CHECK(after <= start);

    if (check_feasibility(instance).load < Rational(1)) {
      const CyclicSchedule deidled = improve_idle(instance, canonical);
      REQUIRE(validate_schedule(instance, deidled).empty());
      CHECK(evaluate(instance, deidled).average_cost < after);
    }
  }
}

TEST_CASE("JSON round trip keeps the evaluation") {
  Rng rng(409);
  for (int k = 0; k < 30; ++k) {
    const Instance instance = lotcycle::testing::random_c2_instance(rng, 9);
    const auto solution = solve_c2(instance);
    const CyclicSchedule schedule = solution.schedule_at(solution.t_star.convergent(1000));
    const Instance back = instance_from_json(nlohmann::ordered_json::parse(to_json(instance).dump()));
    const CyclicSchedule reread = schedule_from_json(nlohmann::ordered_json::parse(to_json(schedule).dump()), back);
    CHECK(evaluate(back, reread).average_cost == evaluate(instance, schedule).average_cost);
  }
}

TEST_CASE("TSP reduction solved through the lot-sizing side") {
  const auto tsp = TspInstance::from_matrix({{0, 4, 1, 3}, {2, 0, 5, 1}, {6, 1, 0, 2}, {1, 3, 2, 0}});
  const Tour best = held_karp(tsp);
  const Instance instance = tsp_to_lsp_discrete(tsp, Variant::Fixed);
  const auto report = evaluate(instance, tour_to_schedule_discrete(instance, best));
  CHECK(report.average_cost ==
        Rational(instance.products[0].holding * 4 * 3, 2) + Rational(best.cost, 4));
  CHECK(verify_correspondence(tsp, Variant::Fixed).best_average_cost == report.average_cost);
}

TEST_CASE("the executable solves and validates through files") {
  const fs::path dir = scratch_dir();
  const std::string bin = LOTCYCLE_BINARY;
  const fs::path instance = dir / "f1.json";
  std::ofstream(instance) << R"({"variant": "fixed", "products": [{"d": 3, "p": 9, "h": 2}], "switch": [[0]]})";

  const Output solved = shell(bin + " solve " + instance.string() + " 2>&1");
  REQUIRE(solved.code == 0);
  const auto doc = nlohmann::ordered_json::parse(solved.text);
  CHECK(doc["solution"]["cycle_length"] == 3);
  CHECK(doc["solution"]["unit_cost"] == "6/1");

  const fs::path schedule = dir / "solved.json";
  std::ofstream(schedule) << solved.text;
  const Output checked = shell(bin + " validate " + instance.string() + " " + schedule.string() + " 2>&1");
  CHECK(checked.code == 0);

  CHECK(shell(bin + " solve " + (dir / "absent.json").string() + " 2>/dev/null").code == 2);
  fs::remove_all(dir);
}
