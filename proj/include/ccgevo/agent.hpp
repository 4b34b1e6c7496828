#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "ccgevo/engine.hpp"

namespace ccgevo {

inline constexpr std::size_t kWeightCount = 21;

// Weight slots, zero-based, in the order of the 21-gene genome.
enum class W : std::size_t {
  HHR,   // hero health + armor reduced
  HAR,   // hero attack reduced
  BMHR,  // minion health reduced
  BMAR,  // minion attack reduced
  BMA,   // minion appeared
  BMK,   // minion killed
  BSR,   // secret removed / appeared
  BMR,   // mana reduced
  MH, MA, MHC, MHD, MHDS, MHI, MHLS, MHS, MHT, MHW, MHP, MR, MM,
};

// Killed minions are scored with BMK and newly appeared ones with BMA. Both
// terms live here so the pairing can be swapped in one place.
inline constexpr W kKillWeight = W::BMK;
inline constexpr W kAppearWeight = W::BMA;

std::string_view weight_label(std::size_t index);
inline constexpr std::array<std::string_view, kWeightCount> kWeightLabels = {
    "HHR", "HAR", "BMHR", "BMAR", "BMA", "BMK", "BSR", "BMR", "MH", "MA", "MHC",
    "MHD", "MHDS", "MHI", "MHLS", "MHS", "MHT", "MHW", "MHP", "MR", "MM"};

/// 21 agent weights, each within [0, 1].
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws InvalidArgument if any component is outside [0, 1] or not finite.
  explicit WeightVector(const std::array<double, kWeightCount>& values);

  double operator[](W w) const noexcept { return values_[static_cast<std::size_t>(w)]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::array<double, kWeightCount>& values() const noexcept { return values_; }

  static WeightVector zeros() { return WeightVector{}; }
  /// All zero except the listed slots.
  static WeightVector only(std::initializer_list<std::pair<W, double>> entries);

 private:
  std::array<double, kWeightCount> values_{};
};

double value_of_minion(const WeightVector& w, const MinionInstance& m, const CardSpec& spec);

/// Per-hero quantities that the score compares before and after an action.
struct StateSnapshot {
  struct Minion {
    std::uint32_t id = 0;
    int health = 0;
    int attack = 0;
    double value = 0.0;
  };
  struct Hero {
    int healthArmor = 0;
    int attackDamage = 0;
    int secretCount = 0;
    int manaAvailable = 0;
    StaticVector<Minion, kBoardLimit> minions;
  };
  Hero agent;
  Hero enemy;

  static StateSnapshot capture(const WeightVector& w, const GameState& s, int agentSide);
};

/// Delta score of playing `a` in `s` on a scratch copy with a forked random
/// stream. Throws IllegalAction when `a` is not legal in `s`.
double score_action(const WeightVector& w, const GameState& s, const Action& a);

/// Argmax of score_action over legal_actions(s); strict comparison, so the
/// earliest action in enumeration order wins ties. Throws TerminalState.
Action select_action(const WeightVector& w, const GameState& s);

Policy greedy_policy(WeightVector w);

namespace detail {
double score_legal_action(const WeightVector& w, const GameState& s, const Action& a,
                          const StateSnapshot& before);
}  // namespace detail

}  // namespace ccgevo
