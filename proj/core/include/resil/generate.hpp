#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "resil/degree.hpp"
#include "resil/graph.hpp"

namespace resil {

enum class GeneratorKind {
  erdos_renyi,
  preferential_attachment,
  config_power_law,
  config_exponential,
};

std::string to_string(GeneratorKind kind);
std::optional<GeneratorKind> generator_kind_from_string(const std::string& s);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::erdos_renyi;
  std::uint32_t n = 0;
  double mean_degree = 0.0;    // erdos_renyi / config_exponential
  std::uint32_t attach_m = 0;  // preferential_attachment
  double gamma = 0.0;          // config_power_law
  std::uint32_t k_min = 1;     // config models
  std::uint32_t k_max = 0;     // config models
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument naming the bad field

  GeneratorSpec with_seed(std::uint64_t s) const {
    GeneratorSpec out = *this;
    out.seed = s;
    return out;
  }
};

// Degree distortion of the erased configuration model, plus the parity fix
// from degree sampling.
struct GenerationReport {
  std::uint64_t dropped_self_loops = 0;
  std::uint64_t dropped_multi_edges = 0;
  std::optional<NodeId> parity_fix;
};

Graph generate(const GeneratorSpec& spec, GenerationReport* report = nullptr);

// Erased configuration model over an explicit degree sequence: stubs are
// shuffled and paired, self-loops and duplicate pairs dropped. An odd leftover
// stub is ignored.
Graph configuration_graph(const std::vector<std::uint32_t>& degrees,
                          std::uint64_t seed,
                          GenerationReport* report = nullptr);

}  // namespace resil
