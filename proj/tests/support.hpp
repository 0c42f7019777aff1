#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "anhom/event_algebra.hpp"
#include "anhom/preclusion.hpp"
#include "anhom/quantal_measure.hpp"
#include "anhom/scenario.hpp"

namespace anhom::testing {

inline SpacePtr space_of_size(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("h" + std::to_string(i));
  return make_sample_space(std::move(labels));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Scenario bundled(const std::string& name) {
  ScenarioParse parsed = parse_scenario(read_file(std::string(ANHOM_SCENARIO_DIR) + "/" + name + ".scn"));
  if (!parsed.ok()) throw std::runtime_error("bundled scenario " + name + " failed to parse");
  return *parsed.scenario;
}

inline std::vector<std::string> bundled_names() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(ANHOM_SCENARIO_DIR)) {
    if (entry.path().extension() == ".scn") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

/// Each nonempty event is precluded independently with probability `density`.
inline PreclusionSet random_preclusions(const SpacePtr& space, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution pick(density);
  std::vector<Mask> events;
  for (Mask a = 1; a <= space->full_mask(); ++a) {
    if (pick(rng)) events.push_back(a);
  }
  return PreclusionSet(space, std::move(events), Provenance::explicit_list);
}

/// Preclusions of a random classical measure: independent block per history,
/// roughly a third of the histories carrying zero amplitude.
inline PreclusionSet random_classical_preclusions(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(-1, 3);
  std::vector<GaussianRational> amplitudes;
  std::vector<Event> blocks;
  for (std::size_t i = 0; i < space->size(); ++i) {
    amplitudes.emplace_back(std::max(weight(rng), 0));
    blocks.push_back(Event::atom(space, i));
  }
  return preclusions(decoherence_from_amplitudes(space, amplitudes, blocks));
}

}  // namespace anhom::testing
