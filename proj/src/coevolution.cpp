#include "ccgevo/coevolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "ccgevo/error.hpp"

namespace ccgevo {

std::string_view to_string(SigmaRule r) noexcept {
  return r == SigmaRule::Paper ? "paper" : "classical";
}

std::optional<SigmaRule> parse_sigma_rule(std::string_view s) noexcept {
  if (s == "paper") return SigmaRule::Paper;
  if (s == "classical") return SigmaRule::Classical;
  return std::nullopt;
}

namespace {
constexpr std::uint64_t kInitStream = 0x1d;
constexpr std::uint64_t kVariationStream = 0x2e;

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

double local_learning_rate(std::size_t n) { return 1.0 / std::sqrt(2.0 * std::sqrt(double(n))); }
double global_learning_rate(std::size_t n) { return 1.0 / std::sqrt(2.0 * double(n)); }

void EvolutionConfig::validate() const {
  if (mu < 1 || lambda < 1 || gamesPerPairing < 1 || generations < 0 || runs < 1)
    fail(ErrorCode::InvalidArgument, "mu, lambda, games and runs must be >= 1; generations >= 0");
  if (decks.empty()) fail(ErrorCode::InvalidArgument, "at least one deck is required");
  if (workers < 1) fail(ErrorCode::InvalidArgument, "workers must be >= 1");
  if (!(initialSigma >= kSigmaFloor)) fail(ErrorCode::InvalidArgument, "initial sigma below floor");
  for (const auto& d : decks)
    if (d.catalog != decks.front().catalog)
      fail(ErrorCode::InvalidArgument, "all decks must share one catalog");
}

std::vector<PairingCell> round_robin_schedule(std::size_t agents, std::size_t decks,
                                              std::size_t games) {
  std::vector<PairingCell> cells;
  cells.reserve(round_robin_match_count(agents, decks, games));
  for (std::size_t i = 0; i < agents; ++i)
    for (std::size_t j = i + 1; j < agents; ++j)
      for (std::size_t di = 0; di < decks; ++di)
        for (std::size_t dj = 0; dj < decks; ++dj)
          for (std::size_t k = 0; k < games; ++k)
            cells.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             static_cast<std::uint16_t>(di), static_cast<std::uint16_t>(dj),
                             static_cast<std::uint32_t>(k), k % 2 == 0});
  return cells;
}

std::uint64_t round_robin_match_count(std::uint64_t agents, std::uint64_t decks,
                                      std::uint64_t games) {
  if (agents < 2) return 0;
  return agents * (agents - 1) / 2 * decks * decks * games;
}

std::int32_t FitnessLedger::cell(std::size_t i, std::size_t j, std::size_t di, std::size_t dj) const {
  const std::size_t n = size();
  return wins.at(((i * n + j) * deckCount + di) * deckCount + dj);
}

std::int64_t FitnessLedger::max_fitness() const noexcept {
  return ccgevo::max_fitness(static_cast<std::int64_t>(size()), static_cast<std::int64_t>(deckCount),
                             gamesPerCell);
}

std::int64_t max_fitness(std::int64_t poolSize, std::int64_t decks, std::int64_t games) {
  return poolSize < 1 ? 0 : (poolSize - 1) * decks * decks * games;
}

std::vector<Genome> init_population(const EvolutionConfig& cfg, Rng& rng, std::uint64_t& nextId) {
  std::vector<Genome> pop(static_cast<std::size_t>(cfg.mu));
  for (auto& g : pop) {
    g.id = nextId++;
    g.birthGeneration = 0;
    for (auto& w : g.weights) w = rng.uniform();
    g.sigmas.fill(cfg.initialSigma);
  }
  return pop;
}

double mutate_sigma(double sigma, double localDraw, double globalDraw, SigmaRule rule,
                    std::size_t n) {
  const double step = std::exp(local_learning_rate(n) * localDraw + global_learning_rate(n) * globalDraw);
  const double next = rule == SigmaRule::Paper ? sigma + step : sigma * step;
  return std::max(next, kSigmaFloor);
}

Genome mutate(const Genome& parent, Rng& rng, SigmaRule rule, int generation, std::uint64_t& nextId) {
  Genome child = parent;
  child.id = nextId++;
  child.birthGeneration = generation;
  const double global = rng.normal();
  for (std::size_t i = 0; i < kWeightCount; ++i) {
    child.sigmas[i] = mutate_sigma(parent.sigmas[i], rng.normal(), global, rule);
    child.weights[i] = std::clamp(parent.weights[i] + child.sigmas[i] * rng.normal(), 0.0, 1.0);
  }
  return child;
}

std::uint64_t match_seed(std::uint64_t masterSeed, int generation, std::uint64_t idI,
                         std::uint64_t idJ, std::size_t deckI, std::size_t deckJ, std::size_t game) {
  return derive_seed({masterSeed, static_cast<std::uint64_t>(generation), idI, idJ, deckI, deckJ, game});
}

FitnessLedger evaluate(const std::vector<Genome>& pool, const EvolutionConfig& cfg, int generation) {
  const std::size_t n = pool.size();
  const std::size_t D = cfg.decks.size();
  if (D == 0) fail(ErrorCode::InvalidArgument, "evaluate: no decks");
  const auto cells = round_robin_schedule(n, D, static_cast<std::size_t>(cfg.gamesPerPairing));

  std::vector<Policy> policies;
  policies.reserve(n);
  for (const auto& g : pool) policies.push_back(greedy_policy(g.weight_vector()));

  // Outcome per cell from agent i's point of view.
  enum : std::uint8_t { kIWins, kJWins, kDraw };
  std::vector<std::uint8_t> outcome(cells.size(), kDraw);
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> cursor{0};

  auto work = [&] {
    for (;;) {
      const std::size_t c = cursor.fetch_add(1);
      if (c >= cells.size()) return;
      const auto& cell = cells[c];
      const auto& gi = pool[cell.i];
      const auto& gj = pool[cell.j];
      const auto seed = match_seed(cfg.masterSeed, generation, gi.id, gj.id, cell.deckI, cell.deckJ, cell.game);
      try {
        if (cell.iFirst) {
          const auto r = play_match(policies[cell.i], policies[cell.j], cfg.decks[cell.deckI],
                                    cfg.decks[cell.deckJ], seed, cfg.turnCap);
          outcome[c] = r.winner == Outcome::WinA ? kIWins : r.winner == Outcome::WinB ? kJWins : kDraw;
        } else {
          const auto r = play_match(policies[cell.j], policies[cell.i], cfg.decks[cell.deckJ],
                                    cfg.decks[cell.deckI], seed, cfg.turnCap);
          outcome[c] = r.winner == Outcome::WinA ? kJWins : r.winner == Outcome::WinB ? kIWins : kDraw;
        }
      } catch (const PolicyError& e) {
        const auto& culprit = ((e.side() == 0) == cell.iFirst) ? gi : gj;
        errors[c] = std::make_exception_ptr(Error(
            ErrorCode::PolicyIllegalAction, "genome " + std::to_string(culprit.id) + ": " + e.what()));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(cells.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (int t = 0; t < workers; ++t) threads.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  FitnessLedger ledger;
  ledger.deckCount = D;
  ledger.gamesPerCell = cfg.gamesPerPairing;
  ledger.totals.assign(n, 0);
  ledger.wins.assign(n * n * D * D, 0);
  for (const auto& g : pool) ledger.ids.push_back(g.id);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    ++ledger.gamesPlayed;
    if (outcome[c] == kDraw) {
      ++ledger.draws;
    } else if (outcome[c] == kIWins) {
      ++ledger.totals[cell.i];
      ++ledger.wins[((cell.i * n + cell.j) * D + cell.deckI) * D + cell.deckJ];
    } else {
      ++ledger.totals[cell.j];
      ++ledger.wins[((cell.j * n + cell.i) * D + cell.deckJ) * D + cell.deckI];
    }
  }
  return ledger;
}

std::vector<EvaluatedGenome> select_survivors(const std::vector<Genome>& pool,
                                              const FitnessLedger& ledger, std::size_t mu) {
  std::vector<EvaluatedGenome> ranked;
  ranked.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) ranked.push_back({pool[i], ledger.totals[i]});
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.genome.id < b.genome.id;
  });
  if (ranked.size() > mu) ranked.resize(mu);
  return ranked;
}

GenerationStats summarize(int generation, const std::vector<EvaluatedGenome>& population,
                          const FitnessLedger& ledger, int entrants) {
  GenerationStats s;
  s.generation = generation;
  s.entrants = entrants;
  if (population.empty()) return s;
  std::vector<double> fit;
  double age = 0.0;
  s.minFitness = population.front().fitness;
  s.maxFitness = population.front().fitness;
  for (const auto& e : population) {
    fit.push_back(static_cast<double>(e.fitness));
    s.minFitness = std::min(s.minFitness, e.fitness);
    s.maxFitness = std::max(s.maxFitness, e.fitness);
    age += generation - e.genome.birthGeneration;
  }
  s.medianFitness = median_of(fit);
  s.meanAge = age / static_cast<double>(population.size());
  const auto cap = static_cast<double>(ledger.max_fitness());
  s.medianShare = cap > 0 ? s.medianFitness / cap : 0.0;
  s.maxShare = cap > 0 ? static_cast<double>(s.maxFitness) / cap : 0.0;
  return s;
}

GenerationResult step_generation(const std::vector<Genome>& population, const EvolutionConfig& cfg,
                                 int generation, Rng& rng, std::uint64_t& nextId) {
  if (population.size() != static_cast<std::size_t>(cfg.mu))
    fail(ErrorCode::InvalidArgument, "step_generation: population size must equal mu");
  GenerationResult out;
  out.pool = population;
  for (int k = 0; k < cfg.lambda; ++k) {
    const auto& parent = population[rng.below(population.size())];
    out.pool.push_back(mutate(parent, rng, cfg.sigmaRule, generation, nextId));
  }
  out.ledger = evaluate(out.pool, cfg, generation);
  out.population = select_survivors(out.pool, out.ledger, static_cast<std::size_t>(cfg.mu));
  int entrants = 0;
  for (const auto& e : out.population)
    if (e.genome.birthGeneration == generation && generation > 0) ++entrants;
  out.stats = summarize(generation, out.population, out.ledger, entrants);
  return out;
}

RunArtifact evolve(const EvolutionConfig& cfg, const GenerationObserver& observer) {
  cfg.validate();
  Rng initRng(derive_seed({cfg.masterSeed, kInitStream}));
  Rng varRng(derive_seed({cfg.masterSeed, kVariationStream}));
  std::uint64_t nextId = 0;

  RunArtifact art;
  {
    GenerationResult g0;
    g0.pool = init_population(cfg, initRng, nextId);
    g0.ledger = evaluate(g0.pool, cfg, 0);
    g0.population = select_survivors(g0.pool, g0.ledger, g0.pool.size());
    g0.stats = summarize(0, g0.population, g0.ledger, 0);
    if (observer) observer(0, g0);
    art.initialPopulation = g0.population;
    art.finalPopulation = g0.population;
    art.stats.push_back(g0.stats);
    art.ledgers.push_back(std::move(g0.ledger));
  }

  std::vector<Genome> population;
  for (const auto& e : art.finalPopulation) population.push_back(e.genome);
  for (int gen = 1; gen <= cfg.generations; ++gen) {
    GenerationResult r = step_generation(population, cfg, gen, varRng, nextId);
    if (observer) observer(gen, r);
    population.clear();
    for (const auto& e : r.population) population.push_back(e.genome);
    art.finalPopulation = r.population;
    art.stats.push_back(r.stats);
    art.ledgers.push_back(std::move(r.ledger));
  }
  return art;
}

std::uint64_t run_seed(std::uint64_t masterSeed, int runIndex) {
  return derive_seed({masterSeed, 0x52554eULL, static_cast<std::uint64_t>(runIndex)});
}

}  // namespace ccgevo
