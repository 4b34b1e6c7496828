#include "ccgevo/persistence.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ccgevo/csv.hpp"
#include "ccgevo/error.hpp"

#ifndef CCGEVO_VERSION
#define CCGEVO_VERSION "0.0.0"
#endif

namespace ccgevo {

using nlohmann::json;

std::string_view code_version() noexcept { return CCGEVO_VERSION; }

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

std::array<double, kWeightCount> vector21(const json& doc, const char* key, const std::string& who) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != kWeightCount)
    fail(ErrorCode::ParseError, who + ": '" + key + "' must be an array of " + std::to_string(kWeightCount) + " numbers");
  std::array<double, kWeightCount> out{};
  for (std::size_t i = 0; i < kWeightCount; ++i) {
    if (!doc[key][i].is_number()) fail(ErrorCode::ParseError, who + ": '" + key + "' holds a non-number");
    out[i] = doc[key][i].get<double>();
  }
  return out;
}

void check_genome(const Genome& g, const std::string& who) {
  (void)g.weight_vector();  // validates weights
  for (double s : g.sigmas)
    if (!(s >= kSigmaFloor) || !std::isfinite(s))
      fail(ErrorCode::InvalidArgument, who + ": step sizes must be finite and at least 1e-5");
}

template <class Int>
Int parse_int(const std::string& field, const char* what) {
  Int v{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size())
    fail(ErrorCode::ParseError, std::string("bad ") + what + " '" + field + "'");
  return v;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

std::string snapshot_json(const std::vector<EvaluatedGenome>& population) {
  json doc = json::array();
  for (const auto& e : population)
    doc.push_back({{"id", e.genome.id},
                   {"birthGeneration", e.genome.birthGeneration},
                   {"weights", e.genome.weights},
                   {"sigmas", e.genome.sigmas},
                   {"fitness", e.fitness}});
  return doc.dump(2) + "\n";
}

std::vector<EvaluatedGenome> parse_snapshot(std::string_view text) {
  const json doc = parse_json(text, "snapshot");
  if (!doc.is_array()) fail(ErrorCode::ParseError, "snapshot must be a JSON array");
  std::vector<EvaluatedGenome> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    const std::string who = "snapshot entry " + std::to_string(i);
    if (!rec.is_object()) fail(ErrorCode::ParseError, who + " is not an object");
    EvaluatedGenome e;
    try {
      e.genome.id = rec.at("id").get<std::uint64_t>();
      e.genome.birthGeneration = rec.at("birthGeneration").get<int>();
      e.fitness = rec.value("fitness", std::int64_t{0});
    } catch (const json::exception& ex) {
      fail(ErrorCode::ParseError, who + ": " + ex.what());
    }
    e.genome.weights = vector21(rec, "weights", who);
    e.genome.sigmas = vector21(rec, "sigmas", who);
    check_genome(e.genome, who);
    out.push_back(e);
  }
  return out;
}

std::string weights_json(const Genome& genome) {
  return json{{"weights", genome.weights}, {"sigmas", genome.sigmas}}.dump(2) + "\n";
}

std::vector<Genome> parse_genomes(std::string_view text) {
  const json doc = parse_json(text, "weights file");
  if (doc.is_array()) {
    std::vector<Genome> out;
    for (auto& e : parse_snapshot(text)) out.push_back(e.genome);
    return out;
  }
  if (!doc.is_object()) fail(ErrorCode::ParseError, "weights file must be a JSON object or snapshot array");
  Genome g;
  g.weights = vector21(doc, "weights", "weights file");
  if (doc.contains("sigmas"))
    g.sigmas = vector21(doc, "sigmas", "weights file");
  else
    g.sigmas.fill(kInitialSigma);
  check_genome(g, "weights file");
  return {g};
}

std::vector<Genome> load_genomes(const std::string& path) {
  try {
    return parse_genomes(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string stats_csv_header() {
  return "generation,min_fitness,median_fitness,max_fitness,median_share,max_share,mean_age,entrants\n";
}

std::string stats_csv_row(const GenerationStats& s) {
  std::ostringstream os;
  os << s.generation << ',' << s.minFitness << ',' << format_double(s.medianFitness) << ',' << s.maxFitness
     << ',' << format_double(s.medianShare) << ',' << format_double(s.maxShare) << ','
     << format_double(s.meanAge) << ',' << s.entrants << '\n';
  return os.str();
}

std::string tensor_csv(const MatchTensor& tensor) {
  std::ostringstream os;
  os << "# decks: ";
  for (std::size_t i = 0; i < tensor.deckNames.size(); ++i) os << (i ? ";" : "") << tensor.deckNames[i];
  os << "\nagent_a,agent_b,deck_a,deck_b,games,wins_a,wins_b,draws\n";
  for (const auto& c : tensor.cells)
    os << c.agentA << ',' << c.agentB << ',' << tensor.deckNames.at(c.deckA) << ','
       << tensor.deckNames.at(c.deckB) << ',' << c.games << ',' << c.winsA << ',' << c.winsB << ','
       << c.draws() << '\n';
  return os.str();
}

MatchTensor parse_tensor_csv(std::string_view text) {
  const auto lines = lines_of(text);
  constexpr std::string_view kDecks = "# decks: ";
  if (lines.size() < 2 || lines[0].rfind(kDecks, 0) != 0)
    fail(ErrorCode::ParseError, "match tensor must start with a '# decks:' line and a header");
  MatchTensor t;
  std::string names = lines[0].substr(kDecks.size());
  for (std::size_t start = 0;;) {
    const auto semi = names.find(';', start);
    t.deckNames.push_back(names.substr(start, semi - start));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  auto deck_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < t.deckNames.size(); ++i)
      if (t.deckNames[i] == name) return i;
    fail(ErrorCode::ParseError, "match tensor names undeclared deck '" + name + "'");
  };
  if (split_csv_line(lines[1]).size() != 8) fail(ErrorCode::ParseError, "unexpected match tensor header");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 8) fail(ErrorCode::ParseError, "match tensor line " + std::to_string(i + 1) + " needs 8 fields");
    TensorCell c{parse_int<std::uint64_t>(f[0], "agent id"), parse_int<std::uint64_t>(f[1], "agent id"),
                 deck_index(f[2]), deck_index(f[3]), parse_int<std::int64_t>(f[4], "game count"),
                 parse_int<std::int64_t>(f[5], "win count"), parse_int<std::int64_t>(f[6], "win count")};
    if (c.winsA + c.winsB > c.games || c.draws() != parse_int<std::int64_t>(f[7], "draw count"))
      fail(ErrorCode::ParseError, "match tensor line " + std::to_string(i + 1) + " has inconsistent counts");
    t.cells.push_back(c);
  }
  return t;
}

std::string partition_csv(const std::vector<std::pair<std::uint64_t, int>>& groups) {
  std::ostringstream os;
  os << "id,group\n";
  for (auto [id, g] : groups) os << id << ',' << g << '\n';
  return os.str();
}

std::vector<std::pair<std::uint64_t, int>> parse_partition_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "id,group") fail(ErrorCode::ParseError, "partition must start with 'id,group'");
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 2) fail(ErrorCode::ParseError, "partition line " + std::to_string(i + 1) + " needs 2 fields");
    out.emplace_back(parse_int<std::uint64_t>(f[0], "agent id"), parse_int<int>(f[1], "group"));
  }
  return out;
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const ManifestInputs& in) {
  const EvolutionConfig& c = in.config;
  json decks = json::array();
  for (std::size_t i = 0; i < in.deckPaths.size(); ++i)
    decks.push_back({{"path", in.deckPaths[i]},
                     {"name", i < c.decks.size() ? c.decks[i].name : std::string()},
                     {"hash", i < in.deckHashes.size() ? in.deckHashes[i] : std::string()}});
  json doc = {
      {"codeVersion", code_version()},
      {"config",
       {{"mu", c.mu},
        {"lambda", c.lambda},
        {"generations", c.generations},
        {"gamesPerPairing", c.gamesPerPairing},
        {"runs", c.runs},
        {"masterSeed", c.masterSeed},
        {"sigmaRule", to_string(c.sigmaRule)},
        {"initialSigma", c.initialSigma},
        {"workers", c.workers},
        {"turnCap", c.turnCap}}},
      {"catalog", {{"path", in.catalogPath}, {"hash", in.catalogHash}}},
      {"decks", decks},
      {"runIndex", in.runIndex},
      {"runSeed", in.runSeed},
  };
  return doc.dump(2) + "\n";
}

}  // namespace ccgevo
