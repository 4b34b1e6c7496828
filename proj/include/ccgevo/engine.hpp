#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccgevo/cards.hpp"
#include "ccgevo/error.hpp"
#include "ccgevo/rng.hpp"
#include "ccgevo/static_vector.hpp"

namespace ccgevo {

inline constexpr int kStartingHealth = 30;
inline constexpr int kMaxMana = 10;
inline constexpr int kBoardLimit = 7;
inline constexpr int kHandLimit = 10;
inline constexpr int kSecretLimit = 5;
inline constexpr int kHeroPowerCost = 2;
inline constexpr int kDefaultTurnCap = 90;

struct MinionInstance {
  CardId card = kNoCard;
  std::uint32_t instanceId = 0;
  int health = 0;
  int maxHealth = 0;
  int attack = 0;
  AbilitySet abilities;
  std::uint8_t attacksRemaining = 0;
  bool enteredThisTurn = false;

  bool has(AbilityFlag f) const noexcept { return abilities.has(f); }
  friend bool operator==(const MinionInstance&, const MinionInstance&) = default;
};

struct HeroSide {
  HeroClass heroClass = HeroClass::Warrior;
  int health = kStartingHealth;
  int armor = 0;
  int attackDamage = 0;  // weapon attack; 0 when unarmed
  int weaponDurability = 0;
  CardId weapon = kNoCard;
  int manaCrystals = 0;
  int manaAvailable = 0;
  StaticVector<CardId, kHandLimit> hand;
  StaticVector<CardId, kDeckSize> drawPile;  // top of the pile is back()
  StaticVector<MinionInstance, kBoardLimit> battlefield;
  StaticVector<SecretKind, kSecretLimit> secrets;
  bool heroPowerUsed = false;
  bool heroAttacked = false;
  int fatigueCounter = 0;

  bool has_weapon() const noexcept { return weaponDurability > 0; }
  friend bool operator==(const HeroSide&, const HeroSide&) = default;
};

/// Full match state. A plain value: copying it is cheap, and every successor
/// operation works on a copy. `catalog` is non-owning; the Deck objects used
/// to create the game keep it alive.
struct GameState {
  std::array<HeroSide, 2> sides;
  int turnNumber = 1;  // half-turns, starting at 1
  int activeSide = 0;
  int turnCap = kDefaultTurnCap;
  std::uint32_t nextInstanceId = 1;
  Rng rng;
  const CardCatalog* catalog = nullptr;

  HeroSide& active() noexcept { return sides[activeSide]; }
  const HeroSide& active() const noexcept { return sides[activeSide]; }
  HeroSide& opponent() noexcept { return sides[1 - activeSide]; }
  const HeroSide& opponent() const noexcept { return sides[1 - activeSide]; }

  friend bool operator==(const GameState&, const GameState&) = default;
};

enum class ActionKind : std::uint8_t { PlayCard, MinionAttack, WeaponAttack, HeroPower, EndTurn };

// Targets are relative to the side taking the action.
enum class TargetKind : std::uint8_t { None, EnemyHero, EnemyMinion, OwnHero, OwnMinion };

struct TargetRef {
  TargetKind kind = TargetKind::None;
  std::int8_t index = -1;  // battlefield slot for minion targets

  static constexpr TargetRef none() noexcept { return {}; }
  static constexpr TargetRef enemy_hero() noexcept { return {TargetKind::EnemyHero, -1}; }
  static constexpr TargetRef own_hero() noexcept { return {TargetKind::OwnHero, -1}; }
  static constexpr TargetRef enemy_minion(int i) noexcept {
    return {TargetKind::EnemyMinion, static_cast<std::int8_t>(i)};
  }
  static constexpr TargetRef own_minion(int i) noexcept {
    return {TargetKind::OwnMinion, static_cast<std::int8_t>(i)};
  }

  friend constexpr auto operator<=>(const TargetRef&, const TargetRef&) = default;
};

/// Ordering is lexicographic over (kind, source, target), which puts EndTurn last.
struct Action {
  ActionKind kind = ActionKind::EndTurn;
  std::int8_t source = -1;  // hand slot (PlayCard) or battlefield slot (MinionAttack)
  TargetRef target;

  static constexpr Action end_turn() noexcept { return {}; }
  static constexpr Action play(int handSlot, TargetRef t = {}) noexcept {
    return {ActionKind::PlayCard, static_cast<std::int8_t>(handSlot), t};
  }
  static constexpr Action minion_attack(int slot, TargetRef t) noexcept {
    return {ActionKind::MinionAttack, static_cast<std::int8_t>(slot), t};
  }
  static constexpr Action weapon_attack(TargetRef t) noexcept {
    return {ActionKind::WeaponAttack, -1, t};
  }
  static constexpr Action hero_power(TargetRef t = {}) noexcept {
    return {ActionKind::HeroPower, -1, t};
  }

  friend constexpr auto operator<=>(const Action&, const Action&) = default;
};

std::string to_string(const Action& a);

enum class Outcome : std::uint8_t { Ongoing, WinA, WinB, Draw };
std::string_view to_string(Outcome o) noexcept;

GameState new_game(const Deck& deckA, const Deck& deckB, std::uint64_t seed,
                   int turnCap = kDefaultTurnCap);

/// Throws TerminalState on a finished game.
std::vector<Action> legal_actions(const GameState& state);
void legal_actions(const GameState& state, std::vector<Action>& out);

bool is_legal(const GameState& state, const Action& action);

/// Throws IllegalAction for anything outside legal_actions(state).
GameState apply_action(const GameState& state, const Action& action);

Outcome is_terminal(const GameState& state) noexcept;

/// 64-bit FNV-1a hash over a canonical field-by-field serialization.
std::uint64_t state_hash(const GameState& state);

namespace detail {
// Applies a move already known to be legal. Used by callers that just
// enumerated legal_actions and must not pay for re-validation.
void apply_in_place(GameState& state, const Action& action);
}  // namespace detail

using Policy = std::function<Action(const GameState&)>;

/// PolicyIllegalAction raised by play_match; `side` is the seat (0 = first player).
class PolicyError : public Error {
 public:
  PolicyError(int side, const std::string& message)
      : Error(ErrorCode::PolicyIllegalAction, message), side_(side) {}
  int side() const noexcept { return side_; }

 private:
  int side_;
};

struct MatchResult {
  Outcome winner = Outcome::Draw;
  int turns = 0;
  std::array<int, 2> finalHealths{};

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct ReplayRecord {
  int turn = 0;
  int side = 0;
  Action action;
  std::uint64_t stateHash = 0;

  friend bool operator==(const ReplayRecord&, const ReplayRecord&) = default;
};

/// Newline-delimited JSON, one record per line.
std::string format_replay(const std::vector<ReplayRecord>& log);

/// policyA plays deckA and moves first. Throws PolicyIllegalAction if a policy
/// returns a move outside the legal set.
MatchResult play_match(const Policy& policyA, const Policy& policyB, const Deck& deckA,
                       const Deck& deckB, std::uint64_t seed, int turnCap = kDefaultTurnCap,
                       std::vector<ReplayRecord>* replay = nullptr);

}  // namespace ccgevo
