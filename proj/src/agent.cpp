#include "ccgevo/agent.hpp"

#include <cmath>
#include <limits>

#include "ccgevo/error.hpp"

namespace ccgevo {

std::string_view weight_label(std::size_t index) { return kWeightLabels.at(index); }

WeightVector::WeightVector(const std::array<double, kWeightCount>& values) : values_(values) {
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      fail(ErrorCode::InvalidArgument, "weights must lie in [0, 1]");
}

WeightVector WeightVector::only(std::initializer_list<std::pair<W, double>> entries) {
  std::array<double, kWeightCount> v{};
  for (auto [slot, x] : entries) v[static_cast<std::size_t>(slot)] = x;
  return WeightVector(v);
}

double value_of_minion(const WeightVector& w, const MinionInstance& m, const CardSpec& spec) {
  auto flag = [&](AbilityFlag f) { return m.has(f) ? 1.0 : 0.0; };
  return w[W::MH] * m.health + w[W::MA] * m.attack + w[W::MHC] * flag(AbilityFlag::Charge) +
         w[W::MHD] * flag(AbilityFlag::Deathrattle) + w[W::MHDS] * flag(AbilityFlag::DivineShield) +
         w[W::MHI] * flag(AbilityFlag::Inspire) + w[W::MHLS] * flag(AbilityFlag::LifeSteal) +
         w[W::MHS] * flag(AbilityFlag::Stealth) + w[W::MHT] * flag(AbilityFlag::Taunt) +
         w[W::MHW] * flag(AbilityFlag::Windfury) + w[W::MHP] * flag(AbilityFlag::Poison) +
         w[W::MR] * spec.rarity + w[W::MM] * spec.manaCost;
}

StateSnapshot StateSnapshot::capture(const WeightVector& w, const GameState& s, int agentSide) {
  auto hero = [&](const HeroSide& side) {
    Hero h;
    h.healthArmor = side.health + side.armor;
    h.attackDamage = side.attackDamage;
    h.secretCount = static_cast<int>(side.secrets.size());
    h.manaAvailable = side.manaAvailable;
    for (const auto& m : side.battlefield)
      h.minions.push_back({m.instanceId, m.health, m.attack, value_of_minion(w, m, (*s.catalog)[m.card])});
    return h;
  };
  StateSnapshot snap;
  snap.agent = hero(s.sides[agentSide]);
  snap.enemy = hero(s.sides[1 - agentSide]);
  return snap;
}

namespace {

// Weighted change of one hero's state; positive when the hero lost ground.
// Surviving and killed minions are valued as they were before the action,
// new minions as they are after it.
double hero_delta(const WeightVector& w, const StateSnapshot::Hero& before,
                  const StateSnapshot::Hero& after) {
  double attributes = w[W::HHR] * (before.healthArmor - after.healthArmor) +
                      w[W::HAR] * (before.attackDamage - after.attackDamage);

  double healthTerm = 0.0, attackTerm = 0.0, killed = 0.0, appeared = 0.0;
  for (const auto& b : before.minions) {
    const StateSnapshot::Minion* match = nullptr;
    for (const auto& a : after.minions)
      if (a.id == b.id) match = &a;
    if (match) {
      healthTerm += (b.health - match->health) * b.value;
      attackTerm += (b.attack - match->attack) * b.value;
    } else {
      killed += b.value;
    }
  }
  for (const auto& a : after.minions) {
    bool existed = false;
    for (const auto& b : before.minions)
      if (a.id == b.id) existed = true;
    if (!existed) appeared += a.value;
  }
  const double minions = w[W::BMHR] * healthTerm + w[W::BMAR] * attackTerm +
                         w[kKillWeight] * killed - w[kAppearWeight] * appeared;
  const double secrets = w[W::BSR] * (before.secretCount - after.secretCount);
  return attributes + minions + secrets;
}

}  // namespace

namespace detail {
double score_legal_action(const WeightVector& w, const GameState& s, const Action& a,
                          const StateSnapshot& before) {
  GameState next = s;
  next.rng = s.rng.fork();
  detail::apply_in_place(next, a);
  const StateSnapshot after = StateSnapshot::capture(w, next, s.activeSide);
  const double enemy = hero_delta(w, before.enemy, after.enemy);
  const double agent = hero_delta(w, before.agent, after.agent);
  const double mana = w[W::BMR] * (before.agent.manaAvailable - after.agent.manaAvailable);
  return enemy - agent - mana;
}
}  // namespace detail

double score_action(const WeightVector& w, const GameState& s, const Action& a) {
  if (!is_legal(s, a)) fail(ErrorCode::IllegalAction, "cannot score illegal action " + to_string(a));
  return detail::score_legal_action(w, s, a, StateSnapshot::capture(w, s, s.activeSide));
}

Action select_action(const WeightVector& w, const GameState& s) {
  thread_local std::vector<Action> legal;
  legal_actions(s, legal);
  const StateSnapshot before = StateSnapshot::capture(w, s, s.activeSide);
  Action best = Action::end_turn();
  double bestScore = -std::numeric_limits<double>::infinity();
  for (const Action& a : legal) {
    const double score = detail::score_legal_action(w, s, a, before);
    if (score > bestScore) {
      best = a;
      bestScore = score;
    }
  }
  return best;
}

Policy greedy_policy(WeightVector w) {
  return [w](const GameState& s) { return select_action(w, s); };
}

}  // namespace ccgevo
