#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ccgevo/agent.hpp"
#include "ccgevo/cards.hpp"
#include "ccgevo/rng.hpp"

namespace ccgevo {

inline constexpr double kSigmaFloor = 1e-5;
inline constexpr double kInitialSigma = 0.15;

/// Local learning rate 1/sqrt(2*sqrt(n)).
double local_learning_rate(std::size_t n);
/// Global learning rate 1/sqrt(2*n).
double global_learning_rate(std::size_t n);

enum class SigmaRule {
  Paper,      // sigma' = max(sigma + exp(tau*N_i + tau'*N), eps)
  Classical,  // sigma' = max(sigma * exp(tau*N_i + tau'*N), eps)
};

std::string_view to_string(SigmaRule r) noexcept;
std::optional<SigmaRule> parse_sigma_rule(std::string_view s) noexcept;

struct Genome {
  std::uint64_t id = 0;
  int birthGeneration = 0;
  std::array<double, kWeightCount> weights{};
  std::array<double, kWeightCount> sigmas{};

  WeightVector weight_vector() const { return WeightVector(weights); }
  friend bool operator==(const Genome&, const Genome&) = default;
};

struct EvolutionConfig {
  int mu = 10;
  int lambda = 10;
  int generations = 100;
  int gamesPerPairing = 20;
  std::vector<Deck> decks;
  int runs = 10;
  std::uint64_t masterSeed = 1;
  SigmaRule sigmaRule = SigmaRule::Paper;
  double initialSigma = kInitialSigma;
  int workers = 1;
  int turnCap = kDefaultTurnCap;

  /// Throws InvalidArgument.
  void validate() const;
};

/// One scheduled game of a round robin: agents i < j, i on deck deckI, j on
/// deck deckJ, repetition `game`. `iFirst` tells who moves first.
struct PairingCell {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint16_t deckI = 0;
  std::uint16_t deckJ = 0;
  std::uint32_t game = 0;
  bool iFirst = true;
};

/// Every unordered agent pair x every ordered deck pair x `games` repetitions.
/// Seats alternate with the repetition index, starting with i.
std::vector<PairingCell> round_robin_schedule(std::size_t agents, std::size_t decks,
                                              std::size_t games);
std::uint64_t round_robin_match_count(std::uint64_t agents, std::uint64_t decks,
                                      std::uint64_t games);

struct FitnessLedger {
  std::vector<std::uint64_t> ids;       // pool order
  std::vector<std::int64_t> totals;     // victories per pool member
  std::size_t deckCount = 0;
  int gamesPerCell = 0;
  std::int64_t draws = 0;
  std::int64_t gamesPlayed = 0;
  // wins[((i * n + j) * D + di) * D + dj]: victories of i on deck di against j on deck dj.
  std::vector<std::int32_t> wins;

  std::size_t size() const noexcept { return ids.size(); }
  std::int32_t cell(std::size_t i, std::size_t j, std::size_t di, std::size_t dj) const;
  /// Upper bound on any individual's total in this evaluation.
  std::int64_t max_fitness() const noexcept;
};

/// Largest attainable fitness for a pool of `poolSize` agents.
std::int64_t max_fitness(std::int64_t poolSize, std::int64_t decks, std::int64_t games);

struct GenerationStats {
  int generation = 0;
  std::int64_t minFitness = 0;
  double medianFitness = 0.0;
  std::int64_t maxFitness = 0;
  double medianShare = 0.0;  // median fitness / max attainable
  double maxShare = 0.0;
  double meanAge = 0.0;
  int entrants = 0;  // offspring that survived selection
};

struct EvaluatedGenome {
  Genome genome;
  std::int64_t fitness = 0;
};

std::vector<Genome> init_population(const EvolutionConfig& cfg, Rng& rng, std::uint64_t& nextId);

/// Self-adaptive mutation of every gene. Offspring get `generation` as birth
/// generation and the id `nextId++`.
Genome mutate(const Genome& parent, Rng& rng, SigmaRule rule, int generation, std::uint64_t& nextId);

/// Step-size update for one gene given its local and the shared global draw.
double mutate_sigma(double sigma, double localDraw, double globalDraw, SigmaRule rule,
                    std::size_t n = kWeightCount);

/// Plays the full round robin over `pool` and tallies victories.
/// Throws PolicyIllegalAction naming the offending genome.
FitnessLedger evaluate(const std::vector<Genome>& pool, const EvolutionConfig& cfg, int generation);

/// Match seed for one cell of an evaluation.
std::uint64_t match_seed(std::uint64_t masterSeed, int generation, std::uint64_t idI,
                         std::uint64_t idJ, std::size_t deckI, std::size_t deckJ, std::size_t game);

struct GenerationResult {
  std::vector<EvaluatedGenome> population;  // survivors, best first
  GenerationStats stats;
  FitnessLedger ledger;
  std::vector<Genome> pool;  // the evaluated parents + offspring, ledger order
};

/// Keeps the `mu` best of an evaluated pool; ties go to the lower id.
std::vector<EvaluatedGenome> select_survivors(const std::vector<Genome>& pool,
                                              const FitnessLedger& ledger, std::size_t mu);

GenerationStats summarize(int generation, const std::vector<EvaluatedGenome>& population,
                          const FitnessLedger& ledger, int entrants);

/// One (mu + lambda) generation: mutate uniformly chosen parents, re-evaluate
/// parents together with offspring, keep the best mu.
GenerationResult step_generation(const std::vector<Genome>& population, const EvolutionConfig& cfg,
                                 int generation, Rng& rng, std::uint64_t& nextId);

struct RunArtifact {
  std::vector<EvaluatedGenome> initialPopulation;
  std::vector<EvaluatedGenome> finalPopulation;
  std::vector<GenerationStats> stats;  // index 0 is the initial evaluation
  std::vector<FitnessLedger> ledgers;
};

/// Called after the initial evaluation (generation 0) and after every generation.
using GenerationObserver = std::function<void(int generation, const GenerationResult&)>;

RunArtifact evolve(const EvolutionConfig& cfg, const GenerationObserver& observer = {});

/// Seed of run `runIndex` of a multi-run experiment.
std::uint64_t run_seed(std::uint64_t masterSeed, int runIndex);

}  // namespace ccgevo
