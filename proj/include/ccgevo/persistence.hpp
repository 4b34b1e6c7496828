#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccgevo/analysis/reports.hpp"
#include "ccgevo/coevolution.hpp"

namespace ccgevo {

/// Population snapshot: JSON array of {id, birthGeneration, weights, sigmas, fitness}.
std::string snapshot_json(const std::vector<EvaluatedGenome>& population);
std::vector<EvaluatedGenome> parse_snapshot(std::string_view text);

/// Weights file: {"weights": [21], "sigmas": [21]}.
std::string weights_json(const Genome& genome);

/// Accepts a weights file (one genome, id 0) or a population snapshot.
/// A weights file without "sigmas" gets the initial step size. Throws
/// ParseError or InvalidArgument.
std::vector<Genome> parse_genomes(std::string_view text);
std::vector<Genome> load_genomes(const std::string& path);

std::string stats_csv_header();
std::string stats_csv_row(const GenerationStats& s);

/// First line "# decks: a;b;c", then header and one row per cell.
std::string tensor_csv(const MatchTensor& tensor);
MatchTensor parse_tensor_csv(std::string_view text);

/// Rows "id,group".
std::string partition_csv(const std::vector<std::pair<std::uint64_t, int>>& groups);
std::vector<std::pair<std::uint64_t, int>> parse_partition_csv(std::string_view text);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string content_hash(std::string_view bytes);

struct ManifestInputs {
  EvolutionConfig config;
  std::vector<std::string> deckPaths;
  std::vector<std::string> deckHashes;
  std::string catalogPath;
  std::string catalogHash;
  int runIndex = 0;
  std::uint64_t runSeed = 0;
};

/// Everything needed to repeat a run with the same binary. Holds no clock
/// values, so reruns reproduce it byte for byte.
std::string manifest_json(const ManifestInputs& in);

std::string_view code_version() noexcept;

}  // namespace ccgevo
