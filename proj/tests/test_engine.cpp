#include <doctest.h>

#include <algorithm>
#include <set>

#include "ccgevo/agent.hpp"
#include "ccgevo/engine.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ccgevo;
using fixtures::blank_state;
using fixtures::give_card;
using fixtures::put_minion;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

bool contains(const std::vector<Action>& v, const Action& a) { return std::find(v.begin(), v.end(), a) != v.end(); }

std::vector<TargetRef> every_target() {
  std::vector<TargetRef> out = {TargetRef::none(), TargetRef::enemy_hero(), TargetRef::own_hero()};
  for (int i = -1; i <= kBoardLimit; ++i) {
    out.push_back(TargetRef::enemy_minion(i));
    out.push_back(TargetRef::own_minion(i));
  }
  return out;
}

// Every syntactically possible action, legal or not.
std::vector<Action> action_universe() {
  std::vector<Action> out = {Action::end_turn()};
  for (auto t : every_target()) {
    for (int i = -1; i <= kHandLimit; ++i) out.push_back(Action::play(i, t));
    for (int i = -1; i <= kBoardLimit; ++i) out.push_back(Action::minion_attack(i, t));
    out.push_back(Action::weapon_attack(t));
    out.push_back(Action::hero_power(t));
  }
  return out;
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("new game deals opening hands and mana") {
    const auto& decks = fixtures::shipped_decks();
    const GameState s = new_game(decks[0], decks[1], 7);
    CHECK(s.turnNumber == 1);
    CHECK(s.activeSide == 0);
    CHECK(s.sides[0].hand.size() == 3);
    CHECK(s.sides[1].hand.size() == 4);
    CHECK(s.sides[0].drawPile.size() == 27);
    CHECK(s.sides[1].drawPile.size() == 26);
    CHECK(s.sides[0].manaCrystals == 1);
    CHECK(s.sides[0].manaAvailable == 1);
    CHECK(s.sides[0].health == 30);
    CHECK(s.sides[1].health == 30);
    CHECK(s.sides[0].heroClass == HeroClass::Warrior);
    CHECK(s.sides[1].heroClass == HeroClass::Mage);

    const GameState t = apply_action(s, Action::end_turn());
    CHECK(t.turnNumber == 2);
    CHECK(t.activeSide == 1);
    CHECK(t.sides[1].manaCrystals == 1);
    CHECK(t.sides[1].manaAvailable == 1);
    CHECK(t.sides[1].hand.size() == 5);
  }

  TEST_CASE("shuffles depend on the seed only") {
    const auto& decks = fixtures::shipped_decks();
    CHECK(new_game(decks[0], decks[2], 41) == new_game(decks[0], decks[2], 41));
    int differ = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const GameState a = new_game(decks[0], decks[2], seed);
      const GameState b = new_game(decks[0], decks[2], seed + 1);
      if (!(a.sides[0].drawPile == b.sides[0].drawPile) || !(a.sides[0].hand == b.sides[0].hand)) ++differ;
    }
    CHECK(differ == 20);
  }

  TEST_CASE("crystals grow by one per own turn up to ten") {
    const auto& decks = fixtures::shipped_decks();
    GameState s = new_game(decks[1], decks[2], 3);
    int seenMax = 0;
    for (int turn = 1; turn <= 30; ++turn) {
      const auto& me = s.active();
      const int ownTurn = (turn + 1) / 2;
      CHECK(me.manaCrystals == std::min(ownTurn, kMaxMana));
      CHECK(me.manaAvailable == me.manaCrystals);
      seenMax = std::max(seenMax, me.manaCrystals);
      s = apply_action(s, Action::end_turn());
    }
    CHECK(seenMax == kMaxMana);
  }

  TEST_CASE("legal action enumeration") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("nothing to do") {
      GameState s = blank_state(cat, 1);
      CHECK(legal_actions(s) == std::vector<Action>{Action::end_turn()});
    }
    SUBCASE("two attackers against two minions") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Raptor");
      put_minion(s, 0, "Yeti");
      put_minion(s, 1, "Squire");
      put_minion(s, 1, "Bruiser");
      const auto legal = legal_actions(s);
      CHECK(legal.size() == 2 * 3 + 1);
      CHECK(legal.back() == Action::end_turn());
      CHECK(std::is_sorted(legal.begin(), legal.end()));
    }
    SUBCASE("taunt restricts attack targets") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Raptor");
      put_minion(s, 1, "Yeti");
      put_minion(s, 1, "Guard");
      const auto legal = legal_actions(s);
      CHECK(legal == std::vector<Action>{Action::minion_attack(0, TargetRef::enemy_minion(1)), Action::end_turn()});
    }
    SUBCASE("minions without attack or readiness cannot attack") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Basic Totem");
      put_minion(s, 0, "Raptor", false);
      CHECK(legal_actions(s).size() == 1);
    }
    SUBCASE("cards cost mana") {
      GameState s = blank_state(cat, 3);
      give_card(s, 0, "Yeti");
      give_card(s, 0, "Raptor");
      const auto legal = legal_actions(s);
      CHECK_FALSE(contains(legal, Action::play(0)));
      CHECK(contains(legal, Action::play(1)));
    }
    SUBCASE("targeted spell lists its targets") {
      GameState s = blank_state(cat, 1);
      give_card(s, 0, "Bolt");
      put_minion(s, 0, "Wisp");
      put_minion(s, 1, "Yeti");
      put_minion(s, 1, "Rogue");  // stealthed: not targetable
      const auto legal = legal_actions(s);
      CHECK(contains(legal, Action::play(0, TargetRef::enemy_hero())));
      CHECK(contains(legal, Action::play(0, TargetRef::enemy_minion(0))));
      CHECK_FALSE(contains(legal, Action::play(0, TargetRef::enemy_minion(1))));
      CHECK(contains(legal, Action::play(0, TargetRef::own_hero())));
      CHECK(contains(legal, Action::play(0, TargetRef::own_minion(0))));
    }
  }

  TEST_CASE("minion combat") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("3/2 into 2/3 trades both") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Raptor");
      put_minion(s, 1, "Guard");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_minion(0)));
      CHECK(s.sides[0].battlefield.empty());
      CHECK(s.sides[1].battlefield.empty());
    }
    SUBCASE("face damage") {
      GameState s = blank_state(cat, 1);
      s.sides[1].health = 20;
      put_minion(s, 0, "Rogue");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      CHECK(s.sides[1].health == 18);
      CHECK(s.sides[0].battlefield[0].attacksRemaining == 0);
      CHECK_FALSE(s.sides[0].battlefield[0].has(AbilityFlag::Stealth));
    }
    SUBCASE("survivors keep damage") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Yeti");
      put_minion(s, 1, "Raptor");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_minion(0)));
      REQUIRE(s.sides[0].battlefield.size() == 1);
      CHECK(s.sides[0].battlefield[0].health == 2);
      CHECK(s.sides[1].battlefield.empty());
    }
  }

  TEST_CASE("keyword abilities") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("divine shield absorbs one hit") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Yeti");
      put_minion(s, 1, "Crusader");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_minion(0)));
      const auto& c = s.sides[1].battlefield[0];
      CHECK(c.health == 3);
      CHECK_FALSE(c.has(AbilityFlag::DivineShield));
      CHECK(s.sides[0].battlefield[0].health == 3);
    }
    SUBCASE("poison kills whatever it damages") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Cobra");
      put_minion(s, 1, "Ogre");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_minion(0)));
      CHECK(s.sides[0].battlefield.empty());
      CHECK(s.sides[1].battlefield.empty());
    }
    SUBCASE("poison does nothing through divine shield") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Cobra");
      put_minion(s, 1, "Crusader");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_minion(0)));
      CHECK(s.sides[1].battlefield.size() == 1);
    }
    SUBCASE("lifesteal heals the owner") {
      GameState s = blank_state(cat, 1);
      s.sides[0].health = 20;
      put_minion(s, 0, "Leech");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      CHECK(s.sides[1].health == 28);
      CHECK(s.sides[0].health == 22);
    }
    SUBCASE("lifesteal cannot heal above 30") {
      GameState s = blank_state(cat, 1);
      s.sides[0].health = 29;
      put_minion(s, 0, "Leech");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      CHECK(s.sides[0].health == 30);
    }
    SUBCASE("windfury attacks twice") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Twin");
      const Action hit = Action::minion_attack(0, TargetRef::enemy_hero());
      s = apply_action(s, hit);
      CHECK(is_legal(s, hit));
      s = apply_action(s, hit);
      CHECK_FALSE(is_legal(s, hit));
      CHECK(s.sides[1].health == 26);
    }
    SUBCASE("charge attacks the turn it is played") {
      GameState s = blank_state(cat, 4);
      give_card(s, 0, "Rusher");
      give_card(s, 0, "Raptor");
      s = apply_action(s, Action::play(0));
      s = apply_action(s, Action::play(0));
      CHECK(is_legal(s, Action::minion_attack(0, TargetRef::enemy_hero())));
      CHECK_FALSE(is_legal(s, Action::minion_attack(1, TargetRef::enemy_hero())));
    }
    SUBCASE("stealth hides from attacks until the stealthed minion attacks") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Raptor");
      put_minion(s, 1, "Rogue");
      CHECK_FALSE(is_legal(s, Action::minion_attack(0, TargetRef::enemy_minion(0))));
      s = apply_action(s, Action::end_turn());
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      s = apply_action(s, Action::end_turn());
      CHECK(is_legal(s, Action::minion_attack(0, TargetRef::enemy_minion(0))));
    }
    SUBCASE("stealthed taunt does not force attacks") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Raptor");
      auto& g = put_minion(s, 1, "Guard");
      g.abilities.set(AbilityFlag::Stealth);
      CHECK(is_legal(s, Action::minion_attack(0, TargetRef::enemy_hero())));
    }
    SUBCASE("deathrattle fires when the minion dies") {
      GameState s = blank_state(cat, 1);
      put_minion(s, 0, "Bomber");
      put_minion(s, 1, "Yeti");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_minion(0)));
      CHECK(s.sides[0].battlefield.empty());
      CHECK(s.sides[1].health == 28);
    }
    SUBCASE("deathrattle is not a battlecry") {
      GameState s = blank_state(cat, 2);
      give_card(s, 0, "Bomber");
      s = apply_action(s, Action::play(0));
      CHECK(s.sides[1].health == 30);
    }
    SUBCASE("inspire fires after the hero power") {
      GameState s = blank_state(cat, 2);
      s.sides[0].health = 25;
      put_minion(s, 0, "Medic");
      s = apply_action(s, Action::hero_power());
      CHECK(s.sides[0].armor == 2);
      CHECK(s.sides[0].health == 27);
    }
  }

  TEST_CASE("secrets") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("ice barrier adds armor before the hit") {
      GameState s = blank_state(cat, 3);
      give_card(s, 1, "Barrier");
      s.activeSide = 1;
      s = apply_action(s, Action::play(0));
      CHECK(s.sides[1].secrets.size() == 1);
      s.activeSide = 0;
      put_minion(s, 0, "Raptor");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      CHECK(s.sides[1].armor == 5);
      CHECK(s.sides[1].health == 30);
      CHECK(s.sides[1].secrets.empty());
    }
    SUBCASE("vaporize destroys the attacking minion") {
      GameState s = blank_state(cat, 1);
      s.sides[1].secrets.push_back(SecretKind::Vaporize);
      put_minion(s, 0, "Raptor");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      CHECK(s.sides[0].battlefield.empty());
      CHECK(s.sides[1].health == 30);
      CHECK(s.sides[1].secrets.empty());
    }
    SUBCASE("a secret cannot be played twice") {
      GameState s = blank_state(cat, 10);
      give_card(s, 0, "Trap");
      give_card(s, 0, "Trap");
      s = apply_action(s, Action::play(0));
      CHECK_FALSE(is_legal(s, Action::play(0)));
    }
  }

  TEST_CASE("weapons") {
    auto cat = fixtures::tiny_catalog();
    GameState s = blank_state(cat, 2);
    give_card(s, 0, "Axe");
    put_minion(s, 1, "Raptor");
    s = apply_action(s, Action::play(0));
    CHECK(s.sides[0].attackDamage == 3);
    CHECK(s.sides[0].weaponDurability == 2);
    s = apply_action(s, Action::weapon_attack(TargetRef::enemy_minion(0)));
    CHECK(s.sides[1].battlefield.empty());
    CHECK(s.sides[0].health == 27);
    CHECK(s.sides[0].weaponDurability == 1);
    CHECK_FALSE(is_legal(s, Action::weapon_attack(TargetRef::enemy_hero())));
    s = apply_action(s, Action::end_turn());
    s = apply_action(s, Action::end_turn());
    s = apply_action(s, Action::weapon_attack(TargetRef::enemy_hero()));
    CHECK(s.sides[1].health == 30 - 1 - 3);  // one fatigue on its empty pile, then the axe
    CHECK_FALSE(s.sides[0].has_weapon());
    CHECK(s.sides[0].attackDamage == 0);
  }

  TEST_CASE("hero powers") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("warrior gains armor") {
      GameState s = blank_state(cat, 2, HeroClass::Warrior);
      s = apply_action(s, Action::hero_power());
      CHECK(s.sides[0].armor == 2);
      CHECK(s.sides[0].manaAvailable == 0);
      CHECK(s.sides[0].heroPowerUsed);
    }
    SUBCASE("shaman summons a totem") {
      GameState s = blank_state(cat, 4, HeroClass::Shaman);
      s = apply_action(s, Action::hero_power());
      REQUIRE(s.sides[0].battlefield.size() == 1);
      CHECK(cat->at(s.sides[0].battlefield[0].card).name == "Basic Totem");
      CHECK_FALSE(is_legal(s, Action::hero_power()));
    }
    SUBCASE("mage pings any target") {
      GameState s = blank_state(cat, 2, HeroClass::Mage);
      put_minion(s, 1, "Wisp");
      const auto legal = legal_actions(s);
      CHECK(contains(legal, Action::hero_power(TargetRef::own_hero())));
      CHECK_FALSE(contains(legal, Action::hero_power()));
      s = apply_action(s, Action::hero_power(TargetRef::enemy_minion(0)));
      CHECK(s.sides[1].battlefield.empty());
    }
    SUBCASE("power needs two mana") {
      GameState s = blank_state(cat, 1, HeroClass::Warrior);
      CHECK_FALSE(is_legal(s, Action::hero_power()));
    }
  }

  TEST_CASE("board, hand and pile limits") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("full board blocks minions and totems") {
      GameState s = blank_state(cat, 10, HeroClass::Shaman);
      for (int i = 0; i < kBoardLimit; ++i) put_minion(s, 0, "Wisp", false);
      give_card(s, 0, "Wisp");
      give_card(s, 0, "Bolt");
      const auto legal = legal_actions(s);
      CHECK_FALSE(contains(legal, Action::play(0)));
      CHECK(contains(legal, Action::play(1, TargetRef::enemy_hero())));
      CHECK_FALSE(contains(legal, Action::hero_power()));
    }
    SUBCASE("overdraw burns the card") {
      GameState s = blank_state(cat, 1);
      for (int i = 0; i < kHandLimit; ++i) give_card(s, 1, "Wisp");
      s.sides[1].drawPile.push_back(*cat->find("Ogre"));
      s = apply_action(s, Action::end_turn());
      CHECK(s.sides[1].hand.size() == kHandLimit);
      CHECK(s.sides[1].drawPile.empty());
      CHECK(std::count(s.sides[1].hand.begin(), s.sides[1].hand.end(), *cat->find("Ogre")) == 0);
    }
    SUBCASE("fatigue escalates") {
      GameState s = blank_state(cat, 1);
      s = apply_action(s, Action::end_turn());
      CHECK(s.sides[1].health == 29);
      s = apply_action(s, Action::end_turn());
      CHECK(s.sides[0].health == 29);
      s = apply_action(s, Action::end_turn());
      CHECK(s.sides[1].health == 27);
      CHECK(s.sides[1].fatigueCounter == 2);
    }
    SUBCASE("draw spell draws in order") {
      GameState s = blank_state(cat, 1);
      give_card(s, 0, "Deal");
      s.sides[0].drawPile.push_back(*cat->find("Yeti"));
      s.sides[0].drawPile.push_back(*cat->find("Ogre"));  // top
      s = apply_action(s, Action::play(0));
      REQUIRE(s.sides[0].hand.size() == 2);
      CHECK(cat->at(s.sides[0].hand[0]).name == "Ogre");
      CHECK(cat->at(s.sides[0].hand[1]).name == "Yeti");
    }
    SUBCASE("transform replaces the minion") {
      GameState s = blank_state(cat, 4);
      give_card(s, 0, "Polymorph");
      put_minion(s, 1, "Ogre");
      s = apply_action(s, Action::play(0, TargetRef::enemy_minion(0)));
      REQUIRE(s.sides[1].battlefield.size() == 1);
      CHECK(cat->at(s.sides[1].battlefield[0].card).name == "Sheep");
      CHECK(s.sides[1].battlefield[0].health == 1);
    }
  }

  TEST_CASE("passive players die of fatigue on the turn the hand count predicts") {
    const auto& decks = fixtures::shipped_decks();
    const auto [turn, side] = oracle::fatigue_death(27, 26, kStartingHealth);
    for (std::size_t a = 0; a < decks.size(); ++a)
      for (std::size_t b = 0; b < decks.size(); ++b) {
        const auto r = play_match(fixtures::end_turn_policy, fixtures::end_turn_policy, decks[a], decks[b], a * 3 + b);
        CHECK(r.turns == turn);
        CHECK(r.winner == (side == 1 ? Outcome::WinA : Outcome::WinB));
      }
  }

  TEST_CASE("game end") {
    auto cat = fixtures::tiny_catalog();
    SUBCASE("turn cap is a draw") {
      const auto& decks = fixtures::shipped_decks();
      const auto r = play_match(fixtures::end_turn_policy, fixtures::end_turn_policy, decks[0], decks[1], 5, 12);
      CHECK(r.winner == Outcome::Draw);
      CHECK(r.turns == 12);
    }
    SUBCASE("terminal classification") {
      GameState s = blank_state(cat);
      CHECK(is_terminal(s) == Outcome::Ongoing);
      s.sides[1].health = 0;
      CHECK(is_terminal(s) == Outcome::WinA);
      s.sides[0].health = -3;
      CHECK(is_terminal(s) == Outcome::Draw);
      s.sides[1].health = 4;
      CHECK(is_terminal(s) == Outcome::WinB);
      CHECK(code_of([&] { legal_actions(s); }) == ErrorCode::TerminalState);
      CHECK_FALSE(is_legal(s, Action::end_turn()));
    }
    SUBCASE("lethal ends the game immediately") {
      GameState s = blank_state(cat, 1);
      s.sides[1].health = 3;
      put_minion(s, 0, "Raptor");
      s = apply_action(s, Action::minion_attack(0, TargetRef::enemy_hero()));
      CHECK(is_terminal(s) == Outcome::WinA);
    }
  }

  TEST_CASE("property: is_legal agrees with legal_actions and apply_action") {
    Rng rng(2024);
    const auto universe = action_universe();
    for (int trial = 0; trial < 60; ++trial) {
      const GameState s = fixtures::random_midgame_state(rng);
      const auto legal = legal_actions(s);
      CHECK(std::is_sorted(legal.begin(), legal.end()));
      CHECK(std::adjacent_find(legal.begin(), legal.end()) == legal.end());
      CHECK(legal.back() == Action::end_turn());
      for (const auto& a : universe) {
        const bool expected = contains(legal, a);
        CHECK(is_legal(s, a) == expected);
        if (!expected) CHECK(code_of([&] { apply_action(s, a); }) == ErrorCode::IllegalAction);
      }
    }
  }

  TEST_CASE("property: successors keep the state invariants") {
    Rng rng(77);
    for (int trial = 0; trial < 150; ++trial) {
      const GameState s = fixtures::random_midgame_state(rng);
      const GameState copy = s;
      std::set<std::uint32_t> before;
      for (const auto& side : s.sides)
        for (const auto& m : side.battlefield) before.insert(m.instanceId);
      for (const auto& a : legal_actions(s)) {
        const GameState t = apply_action(s, a);
        // No resurrection: every minion is a survivor or newly created.
        for (const auto& side : t.sides)
          for (const auto& m : side.battlefield) {
            CHECK((before.count(m.instanceId) == 1 || m.instanceId >= s.nextInstanceId));
            CHECK(m.health > 0);
          }
        for (const auto& side : t.sides) {
          CHECK(side.manaAvailable >= 0);
          CHECK(side.manaAvailable <= side.manaCrystals);
          CHECK(side.manaCrystals <= kMaxMana);
          CHECK(side.armor >= 0);
          CHECK(side.health <= kStartingHealth);
          CHECK(side.hand.size() <= kHandLimit);
        }
        const auto& me = s.active();
        if (a.kind == ActionKind::PlayCard) {
          CHECK(t.sides[s.activeSide].manaAvailable == me.manaAvailable - s.catalog->at(me.hand[a.source]).manaCost);
          CHECK(t.sides[s.activeSide].hand.size() + 1 >= me.hand.size());
        }
        if (a.kind == ActionKind::HeroPower)
          CHECK(t.sides[s.activeSide].manaAvailable == me.manaAvailable - kHeroPowerCost);
        if (a.kind == ActionKind::EndTurn) CHECK(t.activeSide == 1 - s.activeSide);
        else CHECK(t.activeSide == s.activeSide);
      }
      CHECK(s == copy);  // apply_action leaves its input alone
    }
  }

  TEST_CASE("property: armor absorbs damage before health") {
    auto cat = fixtures::tiny_catalog();
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      GameState s = blank_state(cat, 1);
      const int armor = static_cast<int>(rng.below(8));
      const int health = 1 + static_cast<int>(rng.below(30));
      s.sides[1].armor = armor;
      s.sides[1].health = health;
      give_card(s, 0, "Bolt");
      s = apply_action(s, Action::play(0, TargetRef::enemy_hero()));
      CHECK(s.sides[1].armor == std::max(armor - 3, 0));
      CHECK(s.sides[1].health == health - std::max(3 - armor, 0));
    }
  }

  TEST_CASE("property: matches replay identically from a seed") {
    const auto& decks = fixtures::shipped_decks();
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto pa = greedy_policy(fixtures::random_weights(rng));
      const auto pb = greedy_policy(fixtures::random_weights(rng));
      const Deck& da = decks[rng.below(3)];
      const Deck& db = decks[rng.below(3)];
      const auto seed = rng.next();
      std::vector<ReplayRecord> first, second;
      const auto r1 = play_match(pa, pb, da, db, seed, kDefaultTurnCap, &first);
      const auto r2 = play_match(pa, pb, da, db, seed, kDefaultTurnCap, &second);
      CHECK(r1 == r2);
      CHECK(first == second);
      CHECK(format_replay(first) == format_replay(second));
      CHECK(r1.turns <= kDefaultTurnCap);
    }
  }

  TEST_CASE("illegal policy moves are reported with the seat") {
    const auto& decks = fixtures::shipped_decks();
    const Policy bad = [](const GameState&) { return Action::play(9); };
    try {
      play_match(fixtures::end_turn_policy, bad, decks[0], decks[1], 1);
      FAIL("expected PolicyError");
    } catch (const PolicyError& e) {
      CHECK(e.code() == ErrorCode::PolicyIllegalAction);
      CHECK(e.side() == 1);
    }
    try {
      play_match(bad, fixtures::end_turn_policy, decks[0], decks[1], 1);
      FAIL("expected PolicyError");
    } catch (const PolicyError& e) {
      CHECK(e.side() == 0);
    }
  }

  TEST_CASE("state hash tracks every change") {
    const auto& decks = fixtures::shipped_decks();
    const GameState s = new_game(decks[0], decks[1], 9);
    CHECK(state_hash(s) == state_hash(new_game(decks[0], decks[1], 9)));
    CHECK(state_hash(s) != state_hash(apply_action(s, Action::end_turn())));
    GameState t = s;
    t.sides[1].armor = 1;
    CHECK(state_hash(s) != state_hash(t));
  }
}
