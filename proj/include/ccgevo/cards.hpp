#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ccgevo {

using CardId = std::uint16_t;
inline constexpr CardId kNoCard = 0xffff;

enum class CardKind : std::uint8_t { Minion, Spell, Weapon };

// Exactly the nine abilities scored by the minion-value weights, in weight order.
enum class AbilityFlag : std::uint8_t {
  Charge,
  Deathrattle,
  DivineShield,
  Inspire,
  LifeSteal,
  Stealth,
  Taunt,
  Windfury,
  Poison,
};
inline constexpr int kAbilityCount = 9;

class AbilitySet {
 public:
  constexpr AbilitySet() = default;
  constexpr AbilitySet(std::initializer_list<AbilityFlag> flags) {
    for (auto f : flags) set(f);
  }

  constexpr bool has(AbilityFlag f) const noexcept { return (bits_ >> bit(f)) & 1u; }
  constexpr void set(AbilityFlag f) noexcept { bits_ |= static_cast<std::uint16_t>(1u << bit(f)); }
  constexpr void clear(AbilityFlag f) noexcept { bits_ &= static_cast<std::uint16_t>(~(1u << bit(f))); }
  constexpr std::uint16_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  friend constexpr bool operator==(AbilitySet, AbilitySet) = default;

 private:
  static constexpr unsigned bit(AbilityFlag f) noexcept { return static_cast<unsigned>(f); }
  std::uint16_t bits_ = 0;
};

enum class HeroClass : std::uint8_t { Warrior, Shaman, Mage };

enum class SecretKind : std::uint8_t {
  IceBarrier,  // defender's hero is attacked: gain 8 armor first
  Vaporize,    // a minion attacks the defender's hero: destroy it, attack cancelled
};

enum class EffectKind : std::uint8_t {
  DealDamage,
  Destroy,
  Transform,
  Draw,
  GainArmor,
  HealHero,
  Summon,
  Equip,
  BuffWeapon,
  Secret,
};

// Where an effect lands. The first four are chosen by the player as part of
// the action; the rest resolve without a choice.
enum class TargetMode : std::uint8_t {
  None,
  AnyCharacter,
  AnyMinion,
  EnemyMinion,
  EnemyCharacter,
  EnemyHero,
  RandomEnemy,
  RandomEnemyMinion,
  AllEnemyMinions,
  AllMinions,
};

constexpr bool is_chosen_target(TargetMode m) noexcept {
  return m == TargetMode::AnyCharacter || m == TargetMode::AnyMinion ||
         m == TargetMode::EnemyMinion || m == TargetMode::EnemyCharacter;
}

/// One entry of the closed effect-script vocabulary:
///   deal-damage(N, T)  destroy(T)  transform(Card)  draw(N)  gain-armor(N)
///   heal-hero(N)  summon(Card)  equip(Card)  buff-weapon(N)
///   secret(ice-barrier|vaporize)
struct Effect {
  EffectKind kind = EffectKind::Draw;
  int amount = 0;
  TargetMode target = TargetMode::None;
  CardId card = kNoCard;  // summon / transform / equip
  SecretKind secret = SecretKind::IceBarrier;
  std::string script;  // canonical source text, kept for serialization

  bool needs_target() const noexcept { return is_chosen_target(target); }
};

struct CardSpec {
  std::string name;
  CardKind kind = CardKind::Minion;
  int manaCost = 0;
  int attack = 0;
  int health = 0;
  int durability = 0;
  AbilitySet abilities;
  int rarity = 1;  // Common=1 .. Legendary=4
  std::optional<Effect> effect;
};

class CardCatalog {
 public:
  CardCatalog() = default;

  /// Rejects duplicate names and resolves card references in effect scripts.
  /// Field-level checks happen in parse_catalog.
  explicit CardCatalog(std::vector<CardSpec> cards);

  std::size_t size() const noexcept { return cards_.size(); }
  const CardSpec& at(CardId id) const { return cards_.at(id); }
  const CardSpec& operator[](CardId id) const noexcept { return cards_[id]; }
  std::optional<CardId> find(std::string_view name) const;
  const std::vector<CardSpec>& cards() const noexcept { return cards_; }

 private:
  std::vector<CardSpec> cards_;
  std::unordered_map<std::string, CardId> index_;
};

using CatalogPtr = std::shared_ptr<const CardCatalog>;

struct Deck {
  std::string name;
  HeroClass heroClass = HeroClass::Warrior;
  std::vector<CardId> cards;  // file order
  CatalogPtr catalog;
};

inline constexpr std::size_t kDeckSize = 30;

std::string_view to_string(CardKind k) noexcept;
std::string_view to_string(AbilityFlag f) noexcept;
std::string_view to_string(HeroClass c) noexcept;
std::optional<AbilityFlag> parse_ability(std::string_view s) noexcept;
std::optional<HeroClass> parse_hero_class(std::string_view s) noexcept;

/// Parses an effect script. Card names are left unresolved (kNoCard) and
/// the referenced name is returned through `cardRef`.
Effect parse_effect(std::string_view script, std::string* cardRef = nullptr);

CatalogPtr parse_catalog(std::string_view json);
CatalogPtr load_catalog(const std::filesystem::path& path);

/// Deck text: one card name per line. Blank lines are skipped; lines starting
/// with '#' are comments, except the metadata headers "# class: <Class>" and
/// "# name: <Name>". Without a class header, `fallbackClass` is used.
Deck parse_deck(std::string_view text, CatalogPtr catalog, std::string defaultName,
                std::optional<HeroClass> fallbackClass = std::nullopt);
Deck load_deck(const std::filesystem::path& path, CatalogPtr catalog,
               std::optional<HeroClass> fallbackClass = std::nullopt);
std::string serialize_deck(const Deck& deck);

/// Throws DeckSizeError / CopyLimitError.
void validate_deck(const Deck& deck);

}  // namespace ccgevo
