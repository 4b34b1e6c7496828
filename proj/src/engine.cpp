#include "ccgevo/engine.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "ccgevo/error.hpp"

namespace ccgevo {

namespace {

constexpr std::string_view kTotemToken = "Basic Totem";
constexpr int kIceBarrierArmor = 8;

bool stealthed(const MinionInstance& m) { return m.has(AbilityFlag::Stealth); }

std::uint8_t attacks_per_turn(const MinionInstance& m) {
  return m.has(AbilityFlag::Windfury) ? 2 : 1;
}

// Appends chosen-target options for `mode`, in TargetRef order.
void append_targets(const GameState& s, TargetMode mode, std::vector<TargetRef>& out) {
  const auto& own = s.active().battlefield;
  const auto& enemy = s.opponent().battlefield;
  const bool heroes = mode == TargetMode::AnyCharacter || mode == TargetMode::EnemyCharacter;
  const bool ownSide = mode == TargetMode::AnyCharacter || mode == TargetMode::AnyMinion;
  if (heroes) out.push_back(TargetRef::enemy_hero());
  for (std::size_t i = 0; i < enemy.size(); ++i)
    if (!stealthed(enemy[i])) out.push_back(TargetRef::enemy_minion(static_cast<int>(i)));
  if (mode == TargetMode::AnyCharacter) out.push_back(TargetRef::own_hero());
  if (ownSide)
    for (std::size_t i = 0; i < own.size(); ++i)
      out.push_back(TargetRef::own_minion(static_cast<int>(i)));
}

void append_attack_targets(const GameState& s, std::vector<TargetRef>& out) {
  const auto& enemy = s.opponent().battlefield;
  bool taunt = false;
  for (const auto& m : enemy)
    if (m.has(AbilityFlag::Taunt) && !stealthed(m)) taunt = true;
  if (!taunt) out.push_back(TargetRef::enemy_hero());
  for (std::size_t i = 0; i < enemy.size(); ++i) {
    const auto& m = enemy[i];
    if (stealthed(m)) continue;
    if (taunt && !m.has(AbilityFlag::Taunt)) continue;
    out.push_back(TargetRef::enemy_minion(static_cast<int>(i)));
  }
}

/// Mutating resolution of one action on a working copy.
class Resolver {
 public:
  explicit Resolver(GameState& s) : s_(s), cat_(*s.catalog) {}

  void play_card(int handSlot, TargetRef target) {
    const int me = s_.activeSide;
    auto& side = s_.sides[me];
    const CardId id = side.hand[handSlot];
    side.hand.erase(handSlot);
    const CardSpec& spec = cat_[id];
    side.manaAvailable -= spec.manaCost;
    switch (spec.kind) {
      case CardKind::Minion:
        summon(me, id);
        if (spec.effect && !spec.abilities.has(AbilityFlag::Deathrattle) &&
            !spec.abilities.has(AbilityFlag::Inspire))
          resolve(me, *spec.effect, TargetRef::none());
        break;
      case CardKind::Weapon:
        equip(me, id);
        break;
      case CardKind::Spell:
        if (spec.effect) resolve(me, *spec.effect, target);
        break;
    }
    sweep();
  }

  void minion_attack(int slot, TargetRef target) {
    const int me = s_.activeSide;
    const int foe = 1 - me;
    auto& attacker = s_.sides[me].battlefield[slot];
    --attacker.attacksRemaining;
    attacker.abilities.clear(AbilityFlag::Stealth);

    if (target.kind == TargetKind::EnemyHero) {
      if (trigger_secrets(foe, /*byMinion=*/true, me, slot)) {
        const MinionInstance a = s_.sides[me].battlefield[slot];
        const int dealt = damage_hero(foe, a.attack);
        lifesteal(me, a, dealt);
      }
    } else {
      const MinionInstance a = attacker;
      const MinionInstance d = s_.sides[foe].battlefield[target.index];
      const int toDefender = damage_minion(foe, target.index, a.attack, &a);
      const int toAttacker = damage_minion(me, slot, d.attack, &d);
      lifesteal(me, a, toDefender);
      lifesteal(foe, d, toAttacker);
    }
    sweep();
  }

  void weapon_attack(TargetRef target) {
    const int me = s_.activeSide;
    const int foe = 1 - me;
    auto& hero = s_.sides[me];
    hero.heroAttacked = true;
    const int atk = hero.attackDamage;
    if (target.kind == TargetKind::EnemyHero) {
      trigger_secrets(foe, /*byMinion=*/false, me, -1);
      damage_hero(foe, atk);
    } else {
      const MinionInstance d = s_.sides[foe].battlefield[target.index];
      damage_minion(foe, target.index, atk, nullptr);
      const int back = damage_hero(me, d.attack);
      lifesteal(foe, d, back);
    }
    auto& h = s_.sides[me];
    if (--h.weaponDurability <= 0) destroy_weapon(me);
    sweep();
  }

  void hero_power(TargetRef target) {
    const int me = s_.activeSide;
    auto& side = s_.sides[me];
    side.manaAvailable -= kHeroPowerCost;
    side.heroPowerUsed = true;
    switch (side.heroClass) {
      case HeroClass::Warrior: side.armor += 2; break;
      case HeroClass::Shaman: summon(me, *cat_.find(kTotemToken)); break;
      case HeroClass::Mage: damage_target(me, target, 1); break;
    }
    // Inspire triggers in board order for minions present when the power resolved.
    std::vector<std::uint32_t> inspired;
    for (const auto& m : s_.sides[me].battlefield)
      if (m.has(AbilityFlag::Inspire) && m.health > 0 && cat_[m.card].effect)
        inspired.push_back(m.instanceId);
    for (std::uint32_t id : inspired) {
      for (const auto& m : s_.sides[me].battlefield) {
        if (m.instanceId != id) continue;
        resolve(me, *cat_[m.card].effect, TargetRef::none());
        break;
      }
    }
    sweep();
  }

  void end_turn() {
    s_.activeSide = 1 - s_.activeSide;
    ++s_.turnNumber;
    if (s_.turnNumber > s_.turnCap) return;
    auto& side = s_.active();
    side.manaCrystals = std::min(side.manaCrystals + 1, kMaxMana);
    side.manaAvailable = side.manaCrystals;
    side.heroPowerUsed = false;
    side.heroAttacked = false;
    for (auto& m : side.battlefield) {
      m.attacksRemaining = attacks_per_turn(m);
      m.enteredThisTurn = false;
    }
    draw(s_.activeSide);
    sweep();
  }

  void draw(int who) {
    auto& side = s_.sides[who];
    if (side.drawPile.empty()) {
      ++side.fatigueCounter;
      damage_hero(who, side.fatigueCounter);
      return;
    }
    const CardId id = side.drawPile.back();
    side.drawPile.pop_back();
    if (!side.hand.full()) side.hand.push_back(id);  // overdraw burns the card
  }

 private:
  // Returns false when the attack was cancelled.
  bool trigger_secrets(int defender, bool byMinion, int attackerSide, int attackerSlot) {
    auto& secrets = s_.sides[defender].secrets;
    std::size_t i = 0;
    while (i < secrets.size()) {
      const SecretKind k = secrets[i];
      if (k == SecretKind::IceBarrier) {
        s_.sides[defender].armor += kIceBarrierArmor;
        secrets.erase(i);
        continue;
      }
      if (k == SecretKind::Vaporize && byMinion) {
        s_.sides[attackerSide].battlefield[attackerSlot].health = 0;
        secrets.erase(i);
        return false;
      }
      ++i;
    }
    return true;
  }

  int damage_hero(int who, int amount) {
    if (amount <= 0) return 0;
    auto& h = s_.sides[who];
    const int absorbed = std::min(h.armor, amount);
    h.armor -= absorbed;
    h.health -= amount - absorbed;
    return amount;
  }

  int damage_minion(int who, int slot, int amount, const MinionInstance* source) {
    if (amount <= 0) return 0;
    auto& m = s_.sides[who].battlefield[slot];
    if (m.has(AbilityFlag::DivineShield)) {
      m.abilities.clear(AbilityFlag::DivineShield);
      return 0;
    }
    m.health -= amount;
    if (source && source->has(AbilityFlag::Poison) && m.health > 0) m.health = 0;
    return amount;
  }

  void heal_hero(int who, int amount) {
    auto& h = s_.sides[who];
    h.health = std::max(h.health, std::min(kStartingHealth, h.health + amount));
  }

  void lifesteal(int owner, const MinionInstance& source, int dealt) {
    if (dealt > 0 && source.has(AbilityFlag::LifeSteal)) heal_hero(owner, dealt);
  }

  void summon(int who, CardId id) {
    auto& board = s_.sides[who].battlefield;
    if (board.full()) return;
    board.push_back(make_minion(id));
  }

  MinionInstance make_minion(CardId id) {
    const CardSpec& spec = cat_[id];
    MinionInstance m;
    m.card = id;
    m.instanceId = s_.nextInstanceId++;
    m.health = m.maxHealth = spec.health;
    m.attack = spec.attack;
    m.abilities = spec.abilities;
    m.enteredThisTurn = true;
    m.attacksRemaining = m.has(AbilityFlag::Charge) ? attacks_per_turn(m) : 0;
    return m;
  }

  void equip(int who, CardId id) {
    const CardSpec& spec = cat_[id];
    auto& h = s_.sides[who];
    h.weapon = id;
    h.attackDamage = spec.attack;
    h.weaponDurability = spec.durability;
  }

  void destroy_weapon(int who) {
    auto& h = s_.sides[who];
    h.weapon = kNoCard;
    h.attackDamage = 0;
    h.weaponDurability = 0;
  }

  // Chosen targets are relative to the active side, which is always the owner
  // of an effect that takes a chosen target.
  void damage_target(int owner, TargetRef t, int amount) {
    const int foe = 1 - owner;
    switch (t.kind) {
      case TargetKind::EnemyHero: damage_hero(foe, amount); break;
      case TargetKind::OwnHero: damage_hero(owner, amount); break;
      case TargetKind::EnemyMinion: damage_minion(foe, t.index, amount, nullptr); break;
      case TargetKind::OwnMinion: damage_minion(owner, t.index, amount, nullptr); break;
      case TargetKind::None: break;
    }
  }

  MinionInstance* minion_at(int owner, TargetRef t) {
    if (t.kind == TargetKind::EnemyMinion) return &s_.sides[1 - owner].battlefield[t.index];
    if (t.kind == TargetKind::OwnMinion) return &s_.sides[owner].battlefield[t.index];
    return nullptr;
  }

  // Random choice among living enemy minions; -1 when there is none.
  int random_enemy_minion(int owner) {
    const auto& board = s_.sides[1 - owner].battlefield;
    int alive[kBoardLimit];
    int n = 0;
    for (std::size_t i = 0; i < board.size(); ++i)
      if (board[i].health > 0) alive[n++] = static_cast<int>(i);
    if (n == 0) return -1;
    return alive[s_.rng.below(static_cast<std::uint64_t>(n))];
  }

  void resolve(int owner, const Effect& e, TargetRef t) {
    const int foe = 1 - owner;
    switch (e.kind) {
      case EffectKind::DealDamage:
        switch (e.target) {
          case TargetMode::EnemyHero: damage_hero(foe, e.amount); break;
          case TargetMode::RandomEnemy: {
            const auto& board = s_.sides[foe].battlefield;
            int alive[kBoardLimit];
            int n = 0;
            for (std::size_t i = 0; i < board.size(); ++i)
              if (board[i].health > 0) alive[n++] = static_cast<int>(i);
            const auto pick = s_.rng.below(static_cast<std::uint64_t>(n + 1));
            if (pick == 0) damage_hero(foe, e.amount);
            else damage_minion(foe, alive[pick - 1], e.amount, nullptr);
            break;
          }
          case TargetMode::RandomEnemyMinion: {
            const int slot = random_enemy_minion(owner);
            if (slot >= 0) damage_minion(foe, slot, e.amount, nullptr);
            break;
          }
          case TargetMode::AllEnemyMinions:
            for (std::size_t i = 0; i < s_.sides[foe].battlefield.size(); ++i)
              damage_minion(foe, static_cast<int>(i), e.amount, nullptr);
            break;
          case TargetMode::AllMinions:
            for (int who : {owner, foe})
              for (std::size_t i = 0; i < s_.sides[who].battlefield.size(); ++i)
                damage_minion(who, static_cast<int>(i), e.amount, nullptr);
            break;
          default: damage_target(owner, t, e.amount); break;
        }
        break;
      case EffectKind::Destroy:
        if (e.target == TargetMode::RandomEnemyMinion) {
          const int slot = random_enemy_minion(owner);
          if (slot >= 0) s_.sides[foe].battlefield[slot].health = 0;
        } else if (auto* m = minion_at(owner, t)) {
          m->health = 0;
        }
        break;
      case EffectKind::Transform:
        if (auto* m = minion_at(owner, t)) {
          *m = make_minion(e.card);
          m->attacksRemaining = 0;
        }
        break;
      case EffectKind::Draw:
        for (int i = 0; i < e.amount; ++i) draw(owner);
        break;
      case EffectKind::GainArmor: s_.sides[owner].armor += e.amount; break;
      case EffectKind::HealHero: heal_hero(owner, e.amount); break;
      case EffectKind::Summon: summon(owner, e.card); break;
      case EffectKind::Equip: equip(owner, e.card); break;
      case EffectKind::BuffWeapon:
        if (s_.sides[owner].has_weapon()) {
          s_.sides[owner].attackDamage += e.amount;
          s_.sides[owner].weaponDurability += e.amount;
        }
        break;
      case EffectKind::Secret:
        if (!s_.sides[owner].secrets.full()) s_.sides[owner].secrets.push_back(e.secret);
        break;
    }
  }

  // Removes dead minions (active side first, board order), then fires their
  // deathrattles in the same order; repeats until the board is stable.
  void sweep() {
    struct Dead {
      int owner;
      CardId card;
      bool deathrattle;
    };
    for (;;) {
      Dead dead[2 * kBoardLimit];
      int n = 0;
      for (int who : {s_.activeSide, 1 - s_.activeSide}) {
        auto& board = s_.sides[who].battlefield;
        std::size_t i = 0;
        while (i < board.size()) {
          if (board[i].health <= 0) {
            dead[n++] = {who, board[i].card, board[i].has(AbilityFlag::Deathrattle)};
            board.erase(i);
          } else {
            ++i;
          }
        }
      }
      if (n == 0) return;
      for (int k = 0; k < n; ++k) {
        const auto& spec = cat_[dead[k].card];
        if (dead[k].deathrattle && spec.effect)
          resolve(dead[k].owner, *spec.effect, TargetRef::none());
      }
    }
  }

  GameState& s_;
  const CardCatalog& cat_;
};

bool can_play(const GameState& s, const CardSpec& spec, std::vector<TargetRef>& targets) {
  targets.clear();
  const auto& me = s.active();
  if (spec.manaCost > me.manaAvailable) return false;
  switch (spec.kind) {
    case CardKind::Minion: return !me.battlefield.full();
    case CardKind::Weapon: return true;
    case CardKind::Spell:
      if (!spec.effect) return true;
      if (spec.effect->kind == EffectKind::Secret) {
        if (me.secrets.full()) return false;
        return std::find(me.secrets.begin(), me.secrets.end(), spec.effect->secret) ==
               me.secrets.end();
      }
      if (spec.effect->needs_target()) {
        append_targets(s, spec.effect->target, targets);
        return !targets.empty();
      }
      return true;
  }
  return false;
}

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void hash_int(std::uint64_t& h, std::int64_t v) {
  unsigned char buf[8];
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
  hash_bytes(h, buf, 8);
}

std::string_view target_kind_name(TargetKind k) {
  switch (k) {
    case TargetKind::None: return "none";
    case TargetKind::EnemyHero: return "enemy-hero";
    case TargetKind::EnemyMinion: return "enemy-minion";
    case TargetKind::OwnHero: return "own-hero";
    case TargetKind::OwnMinion: return "own-minion";
  }
  return "?";
}

}  // namespace

std::string to_string(const Action& a) {
  std::ostringstream os;
  switch (a.kind) {
    case ActionKind::PlayCard: os << "play(" << int(a.source) << ')'; break;
    case ActionKind::MinionAttack: os << "attack(" << int(a.source) << ')'; break;
    case ActionKind::WeaponAttack: os << "weapon"; break;
    case ActionKind::HeroPower: os << "power"; break;
    case ActionKind::EndTurn: os << "end-turn"; break;
  }
  if (a.target.kind != TargetKind::None) {
    os << "->" << target_kind_name(a.target.kind);
    if (a.target.index >= 0) os << '[' << int(a.target.index) << ']';
  }
  return os.str();
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Ongoing: return "ongoing";
    case Outcome::WinA: return "win-a";
    case Outcome::WinB: return "win-b";
    case Outcome::Draw: return "draw";
  }
  return "?";
}

GameState new_game(const Deck& deckA, const Deck& deckB, std::uint64_t seed, int turnCap) {
  if (!deckA.catalog || deckA.catalog != deckB.catalog)
    fail(ErrorCode::InvalidArgument, "new_game: both decks must share one catalog");
  if (turnCap < 1) fail(ErrorCode::InvalidArgument, "new_game: turn cap must be positive");
  GameState s;
  s.catalog = deckA.catalog.get();
  s.turnCap = turnCap;
  s.rng = Rng(seed);
  const Deck* decks[2] = {&deckA, &deckB};
  for (int i = 0; i < 2; ++i) {
    if (decks[i]->heroClass == HeroClass::Shaman && !s.catalog->find(kTotemToken))
      fail(ErrorCode::InvalidArgument, "catalog lacks the 'Basic Totem' hero-power token");
    auto& side = s.sides[i];
    side.heroClass = decks[i]->heroClass;
    std::vector<CardId> pile = decks[i]->cards;
    for (std::size_t k = pile.size(); k > 1; --k)
      std::swap(pile[k - 1], pile[s.rng.below(k)]);
    // The shuffled list is read top-down, so store it reversed (top = back()).
    for (auto it = pile.rbegin(); it != pile.rend(); ++it) side.drawPile.push_back(*it);
  }
  // Each side's pool holds one crystal on its own first turn. The second
  // player gains that crystal at the start of turn 2.
  s.sides[0].manaCrystals = 1;
  s.sides[0].manaAvailable = 1;
  Resolver r(s);
  for (int k = 0; k < 3; ++k) r.draw(0);
  for (int k = 0; k < 4; ++k) r.draw(1);
  return s;
}

void legal_actions(const GameState& s, std::vector<Action>& out) {
  if (is_terminal(s) != Outcome::Ongoing) fail(ErrorCode::TerminalState, "game is over");
  out.clear();
  const auto& me = s.active();
  const auto& cat = *s.catalog;
  std::vector<TargetRef> targets;
  targets.reserve(16);

  for (std::size_t i = 0; i < me.hand.size(); ++i) {
    const auto& spec = cat[me.hand[i]];
    if (!can_play(s, spec, targets)) continue;
    if (targets.empty()) out.push_back(Action::play(static_cast<int>(i)));
    for (auto t : targets) out.push_back(Action::play(static_cast<int>(i), t));
  }

  targets.clear();
  append_attack_targets(s, targets);
  for (std::size_t i = 0; i < me.battlefield.size(); ++i) {
    const auto& m = me.battlefield[i];
    if (m.attacksRemaining == 0 || m.attack <= 0) continue;
    for (auto t : targets) out.push_back(Action::minion_attack(static_cast<int>(i), t));
  }

  if (me.has_weapon() && me.attackDamage > 0 && !me.heroAttacked)
    for (auto t : targets) out.push_back(Action::weapon_attack(t));

  if (!me.heroPowerUsed && me.manaAvailable >= kHeroPowerCost) {
    switch (me.heroClass) {
      case HeroClass::Warrior: out.push_back(Action::hero_power()); break;
      case HeroClass::Shaman:
        if (!me.battlefield.full()) out.push_back(Action::hero_power());
        break;
      case HeroClass::Mage: {
        std::vector<TargetRef> any;
        append_targets(s, TargetMode::AnyCharacter, any);
        for (auto t : any) out.push_back(Action::hero_power(t));
        break;
      }
    }
  }

  out.push_back(Action::end_turn());
}

std::vector<Action> legal_actions(const GameState& s) {
  std::vector<Action> out;
  legal_actions(s, out);
  return out;
}

bool is_legal(const GameState& s, const Action& a) {
  if (is_terminal(s) != Outcome::Ongoing) return false;
  const auto all = legal_actions(s);
  return std::binary_search(all.begin(), all.end(), a);
}

namespace detail {
void apply_in_place(GameState& s, const Action& a) {
  Resolver r(s);
  switch (a.kind) {
    case ActionKind::PlayCard: r.play_card(a.source, a.target); break;
    case ActionKind::MinionAttack: r.minion_attack(a.source, a.target); break;
    case ActionKind::WeaponAttack: r.weapon_attack(a.target); break;
    case ActionKind::HeroPower: r.hero_power(a.target); break;
    case ActionKind::EndTurn: r.end_turn(); break;
  }
}
}  // namespace detail

GameState apply_action(const GameState& state, const Action& action) {
  if (!is_legal(state, action))
    fail(ErrorCode::IllegalAction, "illegal action " + to_string(action));
  GameState next = state;
  detail::apply_in_place(next, action);
  return next;
}

Outcome is_terminal(const GameState& s) noexcept {
  const bool aDead = s.sides[0].health <= 0;
  const bool bDead = s.sides[1].health <= 0;
  if (aDead && bDead) return Outcome::Draw;
  if (bDead) return Outcome::WinA;
  if (aDead) return Outcome::WinB;
  if (s.turnNumber > s.turnCap) return Outcome::Draw;
  return Outcome::Ongoing;
}

std::uint64_t state_hash(const GameState& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  hash_int(h, s.turnNumber);
  hash_int(h, s.activeSide);
  hash_int(h, s.turnCap);
  hash_int(h, s.nextInstanceId);
  for (auto w : s.rng.state()) hash_int(h, static_cast<std::int64_t>(w));
  for (const auto& side : s.sides) {
    for (int v : {static_cast<int>(side.heroClass), side.health, side.armor, side.attackDamage,
                  side.weaponDurability, static_cast<int>(side.weapon), side.manaCrystals,
                  side.manaAvailable, int(side.heroPowerUsed), int(side.heroAttacked),
                  side.fatigueCounter})
      hash_int(h, v);
    hash_int(h, static_cast<std::int64_t>(side.hand.size()));
    for (CardId c : side.hand) hash_int(h, c);
    hash_int(h, static_cast<std::int64_t>(side.drawPile.size()));
    for (CardId c : side.drawPile) hash_int(h, c);
    hash_int(h, static_cast<std::int64_t>(side.battlefield.size()));
    for (const auto& m : side.battlefield)
      for (std::int64_t v : {std::int64_t(m.card), std::int64_t(m.instanceId), std::int64_t(m.health),
                             std::int64_t(m.maxHealth), std::int64_t(m.attack),
                             std::int64_t(m.abilities.bits()), std::int64_t(m.attacksRemaining),
                             std::int64_t(m.enteredThisTurn)})
        hash_int(h, v);
    hash_int(h, static_cast<std::int64_t>(side.secrets.size()));
    for (auto k : side.secrets) hash_int(h, static_cast<int>(k));
  }
  return h;
}

std::string format_replay(const std::vector<ReplayRecord>& log) {
  std::ostringstream os;
  for (const auto& r : log) {
    char hash[19];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.stateHash));
    os << "{\"turn\":" << r.turn << ",\"side\":" << r.side << ",\"action\":\""
       << to_string(r.action) << "\",\"hash\":\"" << hash << "\"}\n";
  }
  return os.str();
}

MatchResult play_match(const Policy& policyA, const Policy& policyB, const Deck& deckA,
                       const Deck& deckB, std::uint64_t seed, int turnCap,
                       std::vector<ReplayRecord>* replay) {
  GameState s = new_game(deckA, deckB, seed, turnCap);
  std::vector<Action> legal;
  while (is_terminal(s) == Outcome::Ongoing) {
    const int side = s.activeSide;
    const Action a = side == 0 ? policyA(s) : policyB(s);
    legal_actions(s, legal);
    if (!std::binary_search(legal.begin(), legal.end(), a))
      throw PolicyError(side, "policy for side " + std::to_string(side) +
                                  " returned illegal action " + to_string(a));
    const int turn = s.turnNumber;
    detail::apply_in_place(s, a);
    if (replay) replay->push_back({turn, side, a, state_hash(s)});
  }
  MatchResult r;
  r.winner = is_terminal(s);
  r.turns = std::min(s.turnNumber, s.turnCap);
  r.finalHealths = {s.sides[0].health, s.sides[1].health};
  return r;
}

}  // namespace ccgevo
