// ccgevo: train, tournament and analyze entry points.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccgevo/analysis/clustering.hpp"
#include "ccgevo/analysis/reports.hpp"
#include "ccgevo/cards.hpp"
#include "ccgevo/coevolution.hpp"
#include "ccgevo/csv.hpp"
#include "ccgevo/error.hpp"
#include "ccgevo/persistence.hpp"

#ifndef CCGEVO_DATA_DIR
#define CCGEVO_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace ccgevo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

const std::string kDataDir = CCGEVO_DATA_DIR;

std::string default_decks() {
  return kDataDir + "/decks/aggro_pirate_warrior.txt," + kDataDir + "/decks/control_reno_mage.txt," + kDataDir +
         "/decks/midrange_jade_shaman.txt";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& f : split_csv_line(s))
    if (!f.empty()) out.push_back(f);
  return out;
}

struct LoadedDecks {
  CatalogPtr catalog;
  std::string catalogHash;
  std::vector<Deck> decks;
  std::vector<std::string> paths;
  std::vector<std::string> hashes;
};

LoadedDecks load_inputs(const std::string& catalogPath, const std::string& deckList) {
  LoadedDecks in;
  const std::string catalogText = read_text_file(catalogPath);
  in.catalog = parse_catalog(catalogText);
  in.catalogHash = content_hash(catalogText);
  in.paths = split_list(deckList);
  if (in.paths.empty()) fail(ErrorCode::InvalidArgument, "--decks lists no files");
  for (const auto& p : in.paths) {
    const std::string text = read_text_file(p);
    try {
      in.decks.push_back(parse_deck(text, in.catalog, fs::path(p).stem().string()));
    } catch (const Error& e) {
      throw Error(e.code(), p + ": " + e.what());
    }
    in.hashes.push_back(content_hash(text));
  }
  return in;
}

std::vector<std::string> deck_names(const std::vector<Deck>& decks) {
  std::vector<std::string> names;
  for (const auto& d : decks) names.push_back(d.name);
  return names;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string generation_file(int generation) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gen_%04d.json", generation);
  return buf;
}

void make_dirs(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create directory " + p.string() + ": " + ec.message());
}

// Inputs given as directories expand to every final.json below them, in
// path order; files are taken as they are.
std::vector<Genome> collect_genomes(const std::vector<std::string>& inputs, std::vector<std::string>* origin) {
  std::vector<Genome> all;
  for (const auto& in : inputs) {
    std::vector<fs::path> files;
    if (fs::is_directory(in)) {
      for (const auto& e : fs::recursive_directory_iterator(in))
        if (e.is_regular_file() && e.path().filename() == "final.json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) fail(ErrorCode::IoError, "no final.json found under " + in);
    } else {
      files.emplace_back(in);
    }
    for (const auto& f : files) {
      const auto genomes = load_genomes(f.string());
      for (std::size_t k = 0; k < genomes.size(); ++k) {
        all.push_back(genomes[k]);
        if (origin) origin->push_back(f.string() + "#" + std::to_string(k));
      }
    }
  }
  return all;
}

// ---------------------------------------------------------------- train

struct TrainOptions {
  EvolutionConfig cfg;
  std::string decks = default_decks();
  std::string catalog = kDataDir + "/catalog.json";
  std::string out = "runs";
  std::string sigmaRule = "paper";
  bool quiet = false;
};

int cmd_train(TrainOptions& o) {
  const auto rule = parse_sigma_rule(o.sigmaRule);
  if (!rule) fail(ErrorCode::InvalidArgument, "--sigma-rule must be 'paper' or 'classical'");
  o.cfg.sigmaRule = *rule;
  LoadedDecks in = load_inputs(o.catalog, o.decks);
  o.cfg.decks = in.decks;
  o.cfg.validate();
  const auto names = deck_names(in.decks);

  for (int run = 0; run < o.cfg.runs; ++run) {
    char dirName[32];
    std::snprintf(dirName, sizeof dirName, "run_%02d", run);
    const fs::path dir = fs::path(o.out) / dirName;
    make_dirs(dir / "snapshots");

    EvolutionConfig cfg = o.cfg;
    cfg.masterSeed = run_seed(o.cfg.masterSeed, run);
    ManifestInputs mi{o.cfg, in.paths, in.hashes, o.catalog, in.catalogHash, run, cfg.masterSeed};
    write_text_file((dir / "manifest.json").string(), manifest_json(mi));
    const std::string started = utc_now();

    const std::string statsPath = (dir / "stats.csv").string();
    std::string statsText = stats_csv_header();
    write_text_file(statsPath, statsText);

    // Every generation is flushed as soon as it is evaluated.
    auto observer = [&](int generation, const GenerationResult& r) {
      write_text_file((dir / "snapshots" / generation_file(generation)).string(), snapshot_json(r.population));
      if (generation == 0) {
        write_text_file((dir / "initial_stats.csv").string(), stats_csv_header() + stats_csv_row(r.stats));
      } else {
        statsText += stats_csv_row(r.stats);
        write_text_file(statsPath, statsText);
      }
      if (generation == cfg.generations) {
        write_text_file((dir / "final.json").string(), snapshot_json(r.population));
        write_text_file((dir / "final_tensor.csv").string(), tensor_csv(tensor_from_ledger(r.ledger, names)));
      }
      if (!o.quiet)
        std::cerr << dirName << " generation " << generation << " median share "
                  << format_double(r.stats.medianShare) << " entrants " << r.stats.entrants << '\n';
    };
    evolve(cfg, observer);

    nlohmann::json times = {{"started", started}, {"finished", utc_now()}};
    write_text_file((dir / "timestamps.json").string(), times.dump(2) + "\n");
  }
  std::cout << "trained " << o.cfg.runs << " run(s) into " << o.out << '\n';
  return kExitOk;
}

// ----------------------------------------------------------- tournament

struct TournamentOptions {
  std::vector<std::string> agents;
  std::string decks = default_decks();
  std::string catalog = kDataDir + "/catalog.json";
  std::string out = "tournament";
  int games = 1;
  std::uint64_t seed = 1;
  int workers = 1;
  int turnCap = kDefaultTurnCap;
  bool dryRun = false;
};

int cmd_tournament(const TournamentOptions& o) {
  if (o.games < 1) fail(ErrorCode::InvalidArgument, "--games must be >= 1");
  std::vector<std::string> origin;
  std::vector<Genome> pool = collect_genomes(o.agents, &origin);
  if (pool.size() < 2) fail(ErrorCode::InvalidArgument, "a tournament needs at least 2 agents");
  const std::size_t deckCount = split_list(o.decks).size();
  if (deckCount == 0) fail(ErrorCode::InvalidArgument, "--decks lists no files");

  const auto matches = round_robin_match_count(pool.size(), deckCount, static_cast<std::uint64_t>(o.games));
  if (o.dryRun) {
    std::cout << "agents " << pool.size() << " decks " << deckCount << " games " << o.games << " matches "
              << matches << '\n';
    return kExitOk;
  }

  LoadedDecks in = load_inputs(o.catalog, o.decks);
  // Agents are renumbered in input order so that ids are unique.
  for (std::size_t k = 0; k < pool.size(); ++k) pool[k].id = k;

  EvolutionConfig cfg;
  cfg.decks = in.decks;
  cfg.gamesPerPairing = o.games;
  cfg.masterSeed = o.seed;
  cfg.workers = o.workers;
  cfg.turnCap = o.turnCap;
  cfg.validate();
  const FitnessLedger ledger = evaluate(pool, cfg, 0);
  const MatchTensor tensor = tensor_from_ledger(ledger, deck_names(in.decks));

  make_dirs(o.out);
  std::ostringstream agents;
  agents << "id,source,fitness\n";
  for (std::size_t k = 0; k < pool.size(); ++k) agents << k << ',' << origin[k] << ',' << ledger.totals[k] << '\n';
  write_text_file((fs::path(o.out) / "agents.csv").string(), agents.str());
  write_text_file((fs::path(o.out) / "tensor.csv").string(), tensor_csv(tensor));
  const WinrateMatrix wr = winrate_matrix(tensor);
  write_text_file((fs::path(o.out) / "winrate.csv").string(), wr.to_csv());
  std::cout << "matches " << tensor.total_games() << " draws " << ledger.draws << '\n' << wr.to_csv();
  return kExitOk;
}

// -------------------------------------------------------------- analyze

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  std::string out = "analysis";
  std::string gnuplot;
  std::string tensor;
  std::string partition;
  std::string perspective;
  std::string mode = "any";
  double alpha = kSignificanceLevel;
  std::size_t kMin = 2;
  std::size_t kMax = 10;
};

int analyze_weights(const AnalyzeOptions& o) {
  const auto genomes = collect_genomes(o.inputs, nullptr);
  const auto rows = export_weight_distributions(genomes);
  make_dirs(o.out);
  write_text_file((fs::path(o.out) / "weights.csv").string(), weight_summary_csv(rows));
  if (!o.gnuplot.empty()) write_text_file(o.gnuplot, weight_summary_gnuplot(rows));
  std::cout << weight_summary_csv(rows);
  return kExitOk;
}

int analyze_cluster(const AnalyzeOptions& o) {
  const auto genomes = collect_genomes(o.inputs, nullptr);
  std::vector<std::vector<double>> points;
  for (const auto& g : genomes) points.emplace_back(g.weights.begin(), g.weights.end());
  const Matrix d = euclidean_distance_matrix(points, kWeightCount);
  const Dendrogram tree = ward_clustering(d);
  const std::size_t kMax = std::min(o.kMax, genomes.size() > 0 ? genomes.size() - 1 : 0);
  const Partition part = silhouette_partition(tree, d, o.kMin, kMax);

  make_dirs(o.out);
  write_text_file((fs::path(o.out) / "dendrogram.json").string(), tree.to_json());
  std::vector<std::pair<std::uint64_t, int>> groups;
  for (std::size_t i = 0; i < part.labels.size(); ++i) groups.emplace_back(i, part.labels[i]);
  write_text_file((fs::path(o.out) / "partition.csv").string(), partition_csv(groups));
  std::ostringstream sil;
  sil << "k,mean_silhouette\n";
  for (auto [k, s] : part.scores) sil << k << ',' << format_double(s) << '\n';
  write_text_file((fs::path(o.out) / "silhouette.csv").string(), sil.str());
  std::cout << "points " << genomes.size() << " k " << part.k << " mean silhouette "
            << format_double(part.meanSilhouette) << '\n';
  return kExitOk;
}

int analyze_compare(const AnalyzeOptions& o) {
  if (o.mode != "any" && o.mode != "head-to-head")
    fail(ErrorCode::InvalidArgument, "--mode must be 'any' or 'head-to-head'");
  const MatchTensor tensor = parse_tensor_csv(read_text_file(o.tensor));
  const auto groups = parse_partition_csv(read_text_file(o.partition));
  const auto rows = compare_groups(tensor, groups,
                                   o.mode == "any" ? ComparisonMode::VersusAny : ComparisonMode::HeadToHead, o.alpha);
  make_dirs(o.out);
  const std::string csv = comparisons_csv(rows, tensor.deckNames);
  write_text_file((fs::path(o.out) / ("compare_" + o.mode + ".csv")).string(), csv);
  std::cout << csv;
  return kExitOk;
}

int analyze_winrate(const AnalyzeOptions& o) {
  const MatchTensor tensor = parse_tensor_csv(read_text_file(o.tensor));
  std::vector<std::uint64_t> ids;
  if (!o.perspective.empty())
    for (const auto& e : parse_snapshot(read_text_file(o.perspective))) ids.push_back(e.genome.id);
  const WinrateMatrix wr = winrate_matrix(tensor, o.perspective.empty() ? nullptr : &ids);
  make_dirs(o.out);
  write_text_file((fs::path(o.out) / "winrate.csv").string(), wr.to_csv());
  std::cout << wr.to_csv();
  return kExitOk;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownEffect:
    case ErrorCode::DuplicateName:
    case ErrorCode::UnknownCard:
    case ErrorCode::DeckSizeError:
    case ErrorCode::CopyLimitError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::IoError:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

// One line, so scripts can split on the first two spaces.
void report_error(std::string_view code, std::string message) {
  std::replace(message.begin(), message.end(), '\n', ' ');
  std::cerr << "error " << code << ' ' << message << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coevolution of greedy card-game agents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(code_version()));

  TrainOptions train;
  auto* t = app.add_subcommand("train", "evolve agent weights by competitive coevolution");
  t->add_option("--mu", train.cfg.mu, "population size")->capture_default_str();
  t->add_option("--lambda", train.cfg.lambda, "offspring per generation")->capture_default_str();
  t->add_option("--generations", train.cfg.generations, "generations per run")->capture_default_str();
  t->add_option("--games", train.cfg.gamesPerPairing, "games per agent pair and deck pair")->capture_default_str();
  t->add_option("--decks", train.decks, "comma-separated deck files")->capture_default_str();
  t->add_option("--catalog", train.catalog, "card catalog JSON")->capture_default_str();
  t->add_option("--seed", train.cfg.masterSeed, "master seed")->capture_default_str();
  t->add_option("--runs", train.cfg.runs, "independent runs")->capture_default_str();
  t->add_option("--out", train.out, "output directory")->capture_default_str();
  t->add_option("--workers", train.cfg.workers, "match worker threads")->capture_default_str();
  t->add_option("--sigma-rule", train.sigmaRule, "paper | classical")->capture_default_str();
  t->add_option("--turn-cap", train.cfg.turnCap, "half-turn limit per match")->capture_default_str();
  t->add_flag("--quiet", train.quiet, "no per-generation progress");

  TournamentOptions tour;
  auto* r = app.add_subcommand("tournament", "round robin over weight files and deck pairs");
  r->add_option("agents", tour.agents, "weights files, snapshots, or run directories")->required();
  r->add_option("--decks", tour.decks, "comma-separated deck files")->capture_default_str();
  r->add_option("--catalog", tour.catalog, "card catalog JSON")->capture_default_str();
  r->add_option("--games", tour.games, "games per agent pair and deck pair")->capture_default_str();
  r->add_option("--seed", tour.seed, "master seed")->capture_default_str();
  r->add_option("--workers", tour.workers, "match worker threads")->capture_default_str();
  r->add_option("--turn-cap", tour.turnCap, "half-turn limit per match")->capture_default_str();
  r->add_option("--out", tour.out, "output directory")->capture_default_str();
  r->add_flag("--dry-run", tour.dryRun, "only print the number of scheduled matches");

  AnalyzeOptions an;
  auto* a = app.add_subcommand("analyze", "reports over snapshots and match tensors");
  a->require_subcommand(1);
  auto* aw = a->add_subcommand("weights", "five-number summary of every weight");
  aw->add_option("inputs", an.inputs, "snapshots or run directories")->required();
  aw->add_option("--gnuplot", an.gnuplot, "also write a gnuplot boxplot data file");
  auto* ac = a->add_subcommand("cluster", "Ward clustering with a silhouette cut");
  ac->add_option("inputs", an.inputs, "snapshots or run directories")->required();
  ac->add_option("--k-min", an.kMin, "smallest k tried")->capture_default_str();
  ac->add_option("--k-max", an.kMax, "largest k tried (capped at n-1)")->capture_default_str();
  auto* ap = a->add_subcommand("compare", "rank-sum grid between groups");
  ap->add_option("--tensor", an.tensor, "match tensor CSV")->required();
  ap->add_option("--partition", an.partition, "partition CSV (id,group)")->required();
  ap->add_option("--mode", an.mode, "any | head-to-head")->capture_default_str();
  ap->add_option("--alpha", an.alpha, "significance level")->capture_default_str();
  auto* av = a->add_subcommand("winrate", "deck-by-deck win percentages");
  av->add_option("--tensor", an.tensor, "match tensor CSV")->required();
  av->add_option("--perspective", an.perspective, "snapshot whose agents form the rows");
  for (auto* sub : {aw, ac, ap, av}) sub->add_option("--out", an.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return kExitConfig;
  }

  try {
    if (t->parsed()) return cmd_train(train);
    if (r->parsed()) return cmd_tournament(tour);
    if (aw->parsed()) return analyze_weights(an);
    if (ac->parsed()) return analyze_cluster(an);
    if (ap->parsed()) return analyze_compare(an);
    if (av->parsed()) return analyze_winrate(an);
  } catch (const Error& e) {
    report_error(to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("RuntimeError", e.what());
    return kExitRuntime;
  }
  return kExitRuntime;
}
