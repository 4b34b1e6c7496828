#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccgevo/agent.hpp"
#include "ccgevo/cards.hpp"
#include "ccgevo/engine.hpp"
#include "ccgevo/rng.hpp"

namespace fixtures {

std::string data_path(const std::string& relative);

ccgevo::CatalogPtr shipped_catalog();
/// Warrior, Mage, Shaman archetype decks, in that order.
const std::vector<ccgevo::Deck>& shipped_decks();

/// Small hand-made catalog for crafted board states. Cards:
///   "Wisp" 0 mana 1/1, "Raptor" 2 mana 3/2, "Yeti" 4 mana 4/5, "Ogre" 5 mana 6/7,
///   "Guard" 2 mana 2/3 Taunt, "Rogue" 2 mana 2/2 Stealth, "Squire" 1 mana 2/1,
///   "Bruiser" 3 mana 3/2, "Crusader" 3 mana 2/3 DivineShield, "Cobra" 3 mana 2/3 Poison,
///   "Leech" 2 mana 2/3 LifeSteal, "Twin" 3 mana 2/4 Windfury, "Rusher" 2 mana 2/1 Charge,
///   "Bomber" 2 mana 1/1 Deathrattle deal-damage(2, enemy-hero),
///   "Medic" 2 mana 1/3 Inspire heal-hero(2), "Legend" 6 mana 6/6 rarity 4,
///   "Bolt" 1 mana spell deal-damage(3, any), "Blizzard" 2 mana spell deal-damage(1, enemy-minions),
///   "Shield Up" 1 mana spell gain-armor(5), "Barrier" 3 mana secret(ice-barrier),
///   "Trap" 3 mana secret(vaporize), "Axe" 2 mana weapon 3/2, "Basic Totem" 0 mana 0/2,
///   "Sheep" 1 mana 1/1, "Polymorph" 4 mana spell transform(Sheep), "Deal" 1 mana spell draw(2)
ccgevo::CatalogPtr tiny_catalog();

/// A 30-card deck of `card` and `other` (15 each).
ccgevo::Deck uniform_deck(const ccgevo::CatalogPtr& cat, const std::string& card, const std::string& other,
                          ccgevo::HeroClass cls);

/// Turn-3 position with empty hands, boards and piles; side 0 to act with
/// `mana` crystals. Armor, weapons and secrets are empty.
ccgevo::GameState blank_state(const ccgevo::CatalogPtr& cat, int mana = 10,
                              ccgevo::HeroClass a = ccgevo::HeroClass::Warrior,
                              ccgevo::HeroClass b = ccgevo::HeroClass::Warrior);

/// Appends a minion of the named card to `side`; `ready` lets it attack now.
ccgevo::MinionInstance& put_minion(ccgevo::GameState& s, int side, const std::string& card, bool ready = true);
void give_card(ccgevo::GameState& s, int side, const std::string& card);

/// Uniform random weights in [0, 1].
ccgevo::WeightVector random_weights(ccgevo::Rng& rng);

/// A mid-game state reached by random legal play from a fresh game between
/// two random shipped decks; never terminal.
ccgevo::GameState random_midgame_state(ccgevo::Rng& rng);

/// Always ends the turn.
ccgevo::Action end_turn_policy(const ccgevo::GameState&);

}  // namespace fixtures
