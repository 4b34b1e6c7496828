#include "ccgevo/cards.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ccgevo/csv.hpp"
#include "ccgevo/error.hpp"

namespace ccgevo {

namespace {

constexpr std::array<std::string_view, kAbilityCount> kAbilityNames = {
    "Charge", "Deathrattle", "DivineShield", "Inspire", "LifeSteal",
    "Stealth", "Taunt", "Windfury", "Poison"};

struct TargetName {
  std::string_view name;
  TargetMode mode;
};
constexpr std::array<TargetName, 9> kTargetNames = {{
    {"any", TargetMode::AnyCharacter},
    {"minion", TargetMode::AnyMinion},
    {"enemy-minion", TargetMode::EnemyMinion},
    {"enemy", TargetMode::EnemyCharacter},
    {"enemy-hero", TargetMode::EnemyHero},
    {"random-enemy", TargetMode::RandomEnemy},
    {"random-enemy-minion", TargetMode::RandomEnemyMinion},
    {"enemy-minions", TargetMode::AllEnemyMinions},
    {"all-minions", TargetMode::AllMinions},
}};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

int parse_amount(std::string_view s, std::string_view script) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0)
    fail(ErrorCode::ParseError, "bad numeric argument in effect '" + std::string(script) + "'");
  return v;
}

TargetMode parse_target(std::string_view s, std::string_view script) {
  s = trim(s);
  for (const auto& t : kTargetNames)
    if (t.name == s) return t.mode;
  fail(ErrorCode::ParseError, "unknown target '" + std::string(s) + "' in effect '" +
                                  std::string(script) + "'");
}

std::string_view target_name(TargetMode m) {
  for (const auto& t : kTargetNames)
    if (t.mode == m) return t.name;
  return "none";
}

void expect_args(const std::vector<std::string_view>& args, std::size_t n,
                 std::string_view script) {
  if (args.size() != n)
    fail(ErrorCode::ParseError, "wrong argument count in effect '" + std::string(script) + "'");
}

int get_int(const nlohmann::json& rec, const char* key, int fallback, const std::string& who) {
  if (!rec.contains(key)) return fallback;
  const auto& v = rec.at(key);
  if (!v.is_number_integer())
    fail(ErrorCode::ParseError, who + ": field '" + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x > 1000)
    fail(ErrorCode::ParseError, who + ": field '" + key + "' out of range");
  return static_cast<int>(x);
}

CardSpec parse_record(const nlohmann::json& rec, std::size_t index, std::string* effectRef) {
  static const std::array<std::string_view, 9> kFields = {
      "name", "kind", "manaCost", "attack", "health", "durability", "abilities", "rarity", "effect"};
  const std::string where = "catalog record " + std::to_string(index);
  if (!rec.is_object()) fail(ErrorCode::ParseError, where + ": not an object");
  for (const auto& [key, _] : rec.items())
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end())
      fail(ErrorCode::ParseError, where + ": unknown field '" + key + "'");

  CardSpec c;
  if (!rec.contains("name") || !rec["name"].is_string())
    fail(ErrorCode::ParseError, where + ": missing string field 'name'");
  c.name = rec["name"].get<std::string>();
  if (trim(c.name).empty() || trim(c.name) != c.name)
    fail(ErrorCode::ParseError, where + ": card name must be non-empty and trimmed");
  const std::string who = "card '" + c.name + "'";

  if (!rec.contains("kind") || !rec["kind"].is_string())
    fail(ErrorCode::ParseError, who + ": missing string field 'kind'");
  const auto kind = rec["kind"].get<std::string>();
  if (kind == "Minion") c.kind = CardKind::Minion;
  else if (kind == "Spell") c.kind = CardKind::Spell;
  else if (kind == "Weapon") c.kind = CardKind::Weapon;
  else fail(ErrorCode::ParseError, who + ": unknown kind '" + kind + "'");

  if (!rec.contains("manaCost")) fail(ErrorCode::ParseError, who + ": missing 'manaCost'");
  if (!rec.contains("rarity")) fail(ErrorCode::ParseError, who + ": missing 'rarity'");
  c.manaCost = get_int(rec, "manaCost", 0, who);
  c.attack = get_int(rec, "attack", 0, who);
  c.health = get_int(rec, "health", 0, who);
  c.durability = get_int(rec, "durability", 0, who);
  c.rarity = get_int(rec, "rarity", 1, who);
  if (c.rarity < 1 || c.rarity > 4)
    fail(ErrorCode::ParseError, who + ": rarity must be in 1..4");

  if (rec.contains("abilities")) {
    const auto& abil = rec["abilities"];
    if (!abil.is_array()) fail(ErrorCode::ParseError, who + ": 'abilities' must be an array");
    for (const auto& a : abil) {
      const auto flag = a.is_string() ? parse_ability(a.get<std::string>()) : std::nullopt;
      if (!flag) fail(ErrorCode::ParseError, who + ": unknown ability " + a.dump());
      c.abilities.set(*flag);
    }
  }

  switch (c.kind) {
    case CardKind::Minion:
      if (c.health < 1) fail(ErrorCode::ParseError, who + ": minion health must be >= 1");
      if (c.durability != 0) fail(ErrorCode::ParseError, who + ": minions have no durability");
      break;
    case CardKind::Spell:
      if (c.attack != 0 || c.health != 0 || c.durability != 0)
        fail(ErrorCode::ParseError, who + ": spells carry no attack, health or durability");
      if (!c.abilities.empty()) fail(ErrorCode::ParseError, who + ": spells carry no abilities");
      break;
    case CardKind::Weapon:
      if (c.durability < 1) fail(ErrorCode::ParseError, who + ": weapon durability must be >= 1");
      if (c.health != 0) fail(ErrorCode::ParseError, who + ": weapons have no health");
      if (!c.abilities.empty()) fail(ErrorCode::ParseError, who + ": weapons carry no abilities");
      break;
  }

  if (rec.contains("effect") && !rec["effect"].is_null()) {
    if (!rec["effect"].is_string()) fail(ErrorCode::ParseError, who + ": 'effect' must be a string");
    c.effect = parse_effect(rec["effect"].get<std::string>(), effectRef);
    if (c.kind == CardKind::Weapon)
      fail(ErrorCode::ParseError, who + ": weapons carry no effect");
    if (c.kind == CardKind::Minion && c.effect->needs_target())
      fail(ErrorCode::ParseError, who + ": minion effects cannot require a chosen target");
  }
  return c;
}

}  // namespace

std::string_view to_string(CardKind k) noexcept {
  switch (k) {
    case CardKind::Minion: return "Minion";
    case CardKind::Spell: return "Spell";
    case CardKind::Weapon: return "Weapon";
  }
  return "?";
}

std::string_view to_string(AbilityFlag f) noexcept {
  return kAbilityNames[static_cast<std::size_t>(f)];
}

std::string_view to_string(HeroClass c) noexcept {
  switch (c) {
    case HeroClass::Warrior: return "Warrior";
    case HeroClass::Shaman: return "Shaman";
    case HeroClass::Mage: return "Mage";
  }
  return "?";
}

std::optional<AbilityFlag> parse_ability(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kAbilityNames.size(); ++i)
    if (kAbilityNames[i] == s) return static_cast<AbilityFlag>(i);
  return std::nullopt;
}

std::optional<HeroClass> parse_hero_class(std::string_view s) noexcept {
  if (s == "Warrior") return HeroClass::Warrior;
  if (s == "Shaman") return HeroClass::Shaman;
  if (s == "Mage") return HeroClass::Mage;
  return std::nullopt;
}

Effect parse_effect(std::string_view script, std::string* cardRef) {
  const std::string_view src = trim(script);
  std::string_view name = src;
  std::vector<std::string_view> args;
  if (const auto open = src.find('('); open != std::string_view::npos) {
    if (src.back() != ')')
      fail(ErrorCode::ParseError, "unbalanced parentheses in effect '" + std::string(src) + "'");
    name = trim(src.substr(0, open));
    std::string_view inner = src.substr(open + 1, src.size() - open - 2);
    while (true) {
      const auto comma = inner.find(',');
      args.push_back(trim(inner.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
    if (args.size() == 1 && args[0].empty()) args.clear();
  }

  Effect e;
  std::string ref;
  if (name == "deal-damage") {
    expect_args(args, 2, src);
    e.kind = EffectKind::DealDamage;
    e.amount = parse_amount(args[0], src);
    e.target = parse_target(args[1], src);
  } else if (name == "destroy") {
    expect_args(args, 1, src);
    e.kind = EffectKind::Destroy;
    e.target = parse_target(args[0], src);
    if (e.target != TargetMode::AnyMinion && e.target != TargetMode::EnemyMinion &&
        e.target != TargetMode::RandomEnemyMinion)
      fail(ErrorCode::ParseError, "destroy() only applies to minions: '" + std::string(src) + "'");
  } else if (name == "transform") {
    expect_args(args, 1, src);
    e.kind = EffectKind::Transform;
    e.target = TargetMode::AnyMinion;
    ref = args[0];
  } else if (name == "draw" || name == "gain-armor" || name == "heal-hero" ||
             name == "buff-weapon") {
    expect_args(args, 1, src);
    e.kind = name == "draw"         ? EffectKind::Draw
             : name == "gain-armor" ? EffectKind::GainArmor
             : name == "heal-hero"  ? EffectKind::HealHero
                                    : EffectKind::BuffWeapon;
    e.amount = parse_amount(args[0], src);
  } else if (name == "summon" || name == "equip") {
    expect_args(args, 1, src);
    e.kind = name == "summon" ? EffectKind::Summon : EffectKind::Equip;
    ref = args[0];
  } else if (name == "secret") {
    expect_args(args, 1, src);
    e.kind = EffectKind::Secret;
    if (args[0] == "ice-barrier") e.secret = SecretKind::IceBarrier;
    else if (args[0] == "vaporize") e.secret = SecretKind::Vaporize;
    else fail(ErrorCode::UnknownEffect, "unknown secret '" + std::string(args[0]) + "'");
  } else {
    fail(ErrorCode::UnknownEffect, "unknown effect script '" + std::string(src) + "'");
  }
  if ((e.kind == EffectKind::Summon || e.kind == EffectKind::Equip ||
       e.kind == EffectKind::Transform) &&
      ref.empty())
    fail(ErrorCode::ParseError, "missing card name in '" + std::string(src) + "'");

  // Canonical text.
  std::ostringstream os;
  os << name;
  switch (e.kind) {
    case EffectKind::DealDamage: os << '(' << e.amount << ", " << target_name(e.target) << ')'; break;
    case EffectKind::Destroy: os << '(' << target_name(e.target) << ')'; break;
    case EffectKind::Transform:
    case EffectKind::Summon:
    case EffectKind::Equip: os << '(' << ref << ')'; break;
    case EffectKind::Secret: os << '(' << args[0] << ')'; break;
    default: os << '(' << e.amount << ')'; break;
  }
  e.script = os.str();
  if (cardRef) *cardRef = ref;
  return e;
}

CardCatalog::CardCatalog(std::vector<CardSpec> cards) : cards_(std::move(cards)) {
  if (cards_.size() >= kNoCard) fail(ErrorCode::ParseError, "catalog too large");
  for (std::size_t i = 0; i < cards_.size(); ++i) {
    if (!index_.emplace(cards_[i].name, static_cast<CardId>(i)).second)
      fail(ErrorCode::DuplicateName, "duplicate card name '" + cards_[i].name + "'");
  }
  for (auto& c : cards_) {
    if (!c.effect) continue;
    auto& e = *c.effect;
    if (e.kind != EffectKind::Summon && e.kind != EffectKind::Equip &&
        e.kind != EffectKind::Transform)
      continue;
    // Script text has the form name(Card).
    const auto open = e.script.find('(');
    const std::string ref = e.script.substr(open + 1, e.script.size() - open - 2);
    const auto id = find(ref);
    if (!id)
      fail(ErrorCode::UnknownEffect,
           "card '" + c.name + "': effect references unknown card '" + ref + "'");
    const auto wanted = e.kind == EffectKind::Equip ? CardKind::Weapon : CardKind::Minion;
    if (cards_[*id].kind != wanted)
      fail(ErrorCode::UnknownEffect,
           "card '" + c.name + "': effect references '" + ref + "' of the wrong kind");
    e.card = *id;
  }
}

std::optional<CardId> CardCatalog::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CatalogPtr parse_catalog(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) fail(ErrorCode::ParseError, "catalog must be a JSON array");
  std::vector<CardSpec> cards;
  cards.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) cards.push_back(parse_record(doc[i], i, nullptr));
  return std::make_shared<const CardCatalog>(std::move(cards));
}

CatalogPtr load_catalog(const std::filesystem::path& path) {
  return parse_catalog(read_text_file(path.string()));
}

Deck parse_deck(std::string_view text, CatalogPtr catalog, std::string defaultName,
                std::optional<HeroClass> fallbackClass) {
  if (!catalog) fail(ErrorCode::InvalidArgument, "parse_deck: no catalog");
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  Deck deck;
  deck.name = std::move(defaultName);
  deck.catalog = catalog;
  std::optional<HeroClass> cls;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++lineNo;
    if (line.empty()) continue;
    if (line.front() == '#') {
      line = trim(line.substr(1));
      if (line.starts_with("class:")) {
        cls = parse_hero_class(trim(line.substr(6)));
        if (!cls)
          fail(ErrorCode::ParseError, "deck line " + std::to_string(lineNo) + ": unknown class");
      } else if (line.starts_with("name:")) {
        deck.name = std::string(trim(line.substr(5)));
      }
      continue;
    }
    const auto id = catalog->find(line);
    if (!id)
      fail(ErrorCode::UnknownCard,
           "deck line " + std::to_string(lineNo) + ": unknown card '" + std::string(line) + "'");
    deck.cards.push_back(*id);
  }
  if (!cls) cls = fallbackClass;
  if (!cls) fail(ErrorCode::ParseError, "deck '" + deck.name + "' has no '# class:' header");
  deck.heroClass = *cls;
  validate_deck(deck);
  return deck;
}

Deck load_deck(const std::filesystem::path& path, CatalogPtr catalog,
               std::optional<HeroClass> fallbackClass) {
  return parse_deck(read_text_file(path.string()), std::move(catalog), path.stem().string(), fallbackClass);
}

std::string serialize_deck(const Deck& deck) {
  std::string out = "# name: " + deck.name + "\n# class: " + std::string(to_string(deck.heroClass)) + "\n";
  for (CardId id : deck.cards) out += deck.catalog->at(id).name + "\n";
  return out;
}

void validate_deck(const Deck& deck) {
  if (deck.cards.size() != kDeckSize)
    fail(ErrorCode::DeckSizeError, "deck '" + deck.name + "' has " +
                                       std::to_string(deck.cards.size()) + " cards, expected 30");
  std::map<CardId, int> counts;
  for (CardId id : deck.cards) ++counts[id];
  for (const auto& [id, n] : counts) {
    const auto& spec = deck.catalog->at(id);
    const int limit = spec.rarity == 4 ? 1 : 2;
    if (n > limit)
      fail(ErrorCode::CopyLimitError, "deck '" + deck.name + "' has " + std::to_string(n) +
                                          " copies of '" + spec.name + "' (limit " +
                                          std::to_string(limit) + ")");
  }
}

}  // namespace ccgevo
