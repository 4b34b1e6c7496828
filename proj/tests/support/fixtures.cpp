#include "fixtures.hpp"

#include <stdexcept>

#include <json.hpp>

namespace fixtures {

using namespace ccgevo;

std::string data_path(const std::string& relative) { return std::string(CCGEVO_DATA_DIR) + "/" + relative; }

CatalogPtr shipped_catalog() {
  static const CatalogPtr cat = load_catalog(data_path("catalog.json"));
  return cat;
}

const std::vector<Deck>& shipped_decks() {
  static const std::vector<Deck> decks = {
      load_deck(data_path("decks/aggro_pirate_warrior.txt"), shipped_catalog()),
      load_deck(data_path("decks/control_reno_mage.txt"), shipped_catalog()),
      load_deck(data_path("decks/midrange_jade_shaman.txt"), shipped_catalog()),
  };
  return decks;
}

namespace {

nlohmann::json minion(const char* name, int cost, int atk, int hp, std::vector<const char*> abilities = {},
                      const char* effect = nullptr, int rarity = 1) {
  nlohmann::json j = {{"name", name}, {"kind", "Minion"}, {"manaCost", cost}, {"attack", atk},
                      {"health", hp}, {"rarity", rarity}};
  if (!abilities.empty()) j["abilities"] = abilities;
  if (effect) j["effect"] = effect;
  return j;
}

nlohmann::json spell(const char* name, int cost, const char* effect) {
  return {{"name", name}, {"kind", "Spell"}, {"manaCost", cost}, {"rarity", 1}, {"effect", effect}};
}

}  // namespace

CatalogPtr tiny_catalog() {
  static const CatalogPtr cat = [] {
    nlohmann::json doc = nlohmann::json::array({
        minion("Wisp", 0, 1, 1),
        minion("Raptor", 2, 3, 2),
        minion("Yeti", 4, 4, 5),
        minion("Ogre", 5, 6, 7),
        minion("Guard", 2, 2, 3, {"Taunt"}),
        minion("Rogue", 2, 2, 2, {"Stealth"}),
        minion("Squire", 1, 2, 1),
        minion("Bruiser", 3, 3, 2),
        minion("Crusader", 3, 2, 3, {"DivineShield"}),
        minion("Cobra", 3, 2, 3, {"Poison"}),
        minion("Leech", 2, 2, 3, {"LifeSteal"}),
        minion("Twin", 3, 2, 4, {"Windfury"}),
        minion("Rusher", 2, 2, 1, {"Charge"}),
        minion("Bomber", 2, 1, 1, {"Deathrattle"}, "deal-damage(2, enemy-hero)"),
        minion("Medic", 2, 1, 3, {"Inspire"}, "heal-hero(2)"),
        minion("Legend", 6, 6, 6, {}, nullptr, 4),
        spell("Bolt", 1, "deal-damage(3, any)"),
        spell("Blizzard", 2, "deal-damage(1, enemy-minions)"),
        spell("Shield Up", 1, "gain-armor(5)"),
        spell("Barrier", 3, "secret(ice-barrier)"),
        spell("Trap", 3, "secret(vaporize)"),
        {{"name", "Axe"}, {"kind", "Weapon"}, {"manaCost", 2}, {"attack", 3}, {"durability", 2}, {"rarity", 1}},
        minion("Basic Totem", 0, 0, 2),
        minion("Sheep", 1, 1, 1),
        spell("Polymorph", 4, "transform(Sheep)"),
        spell("Deal", 1, "draw(2)"),
    });
    return parse_catalog(doc.dump());
  }();
  return cat;
}

Deck uniform_deck(const CatalogPtr& cat, const std::string& card, const std::string& other, HeroClass cls) {
  Deck d;
  d.name = card + "+" + other;
  d.heroClass = cls;
  d.catalog = cat;
  for (int i = 0; i < 15; ++i) {
    d.cards.push_back(*cat->find(card));
    d.cards.push_back(*cat->find(other));
  }
  return d;
}

GameState blank_state(const CatalogPtr& cat, int mana, HeroClass a, HeroClass b) {
  GameState s;
  s.catalog = cat.get();
  s.turnNumber = 3;
  s.activeSide = 0;
  s.rng = Rng(12345);
  s.sides[0].heroClass = a;
  s.sides[1].heroClass = b;
  for (auto& side : s.sides) {
    side.manaCrystals = mana;
    side.manaAvailable = mana;
  }
  return s;
}

MinionInstance& put_minion(GameState& s, int side, const std::string& card, bool ready) {
  const auto id = s.catalog->find(card);
  if (!id) throw std::runtime_error("fixture: no card " + card);
  const CardSpec& spec = (*s.catalog)[*id];
  MinionInstance m;
  m.card = *id;
  m.instanceId = s.nextInstanceId++;
  m.health = m.maxHealth = spec.health;
  m.attack = spec.attack;
  m.abilities = spec.abilities;
  m.attacksRemaining = ready ? (spec.abilities.has(AbilityFlag::Windfury) ? 2 : 1) : 0;
  m.enteredThisTurn = !ready;
  s.sides[side].battlefield.push_back(m);
  return s.sides[side].battlefield.back();
}

void give_card(GameState& s, int side, const std::string& card) {
  const auto id = s.catalog->find(card);
  if (!id) throw std::runtime_error("fixture: no card " + card);
  s.sides[side].hand.push_back(*id);
}

WeightVector random_weights(Rng& rng) {
  std::array<double, kWeightCount> w{};
  for (auto& x : w) x = rng.uniform();
  return WeightVector(w);
}

GameState random_midgame_state(Rng& rng) {
  const auto& decks = shipped_decks();
  for (;;) {
    const Deck& a = decks[rng.below(decks.size())];
    const Deck& b = decks[rng.below(decks.size())];
    GameState s = new_game(a, b, rng.next());
    const auto steps = rng.below(120);
    std::vector<Action> legal;
    bool over = false;
    for (std::uint64_t k = 0; k < steps; ++k) {
      legal_actions(s, legal);
      // Ending the turn less often than uniform keeps boards populated.
      Action pick = legal[rng.below(legal.size())];
      if (pick.kind == ActionKind::EndTurn && legal.size() > 1 && rng.uniform() < 0.7)
        pick = legal[rng.below(legal.size() - 1)];
      detail::apply_in_place(s, pick);
      if (is_terminal(s) != Outcome::Ongoing) {
        over = true;
        break;
      }
    }
    if (!over) return s;
  }
}

Action end_turn_policy(const GameState&) { return Action::end_turn(); }

}  // namespace fixtures
