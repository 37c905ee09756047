#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tropetwist {

// Symbols follow the trope table: HERO, 5MA, NEO, SH, CONF, ENEMY, EMP, BAD,
// DRAKE, PLD, CHK, MCG, MHQ.
enum class Trope : std::uint8_t {
  Hero,
  FiveManBand,
  ChosenOne,
  Superhero,
  Conflict,
  Enemy,
  Empire,
  BigBad,
  Dragon,
  PlotDevice,
  ChekhovsGun,
  MacGuffin,
  MayHelpInQuest,
};

inline constexpr std::size_t kTropeCount = 13;

inline constexpr std::array<Trope, kTropeCount> kAllTropes = {
    Trope::Hero,        Trope::FiveManBand, Trope::ChosenOne,  Trope::Superhero,
    Trope::Conflict,    Trope::Enemy,       Trope::Empire,     Trope::BigBad,
    Trope::Dragon,      Trope::PlotDevice,  Trope::ChekhovsGun, Trope::MacGuffin,
    Trope::MayHelpInQuest,
};

enum class BaseType : std::uint8_t { Hero, Structure, Villain, PlotDevice };

inline constexpr std::array<BaseType, 4> kAllBaseTypes = {
    BaseType::Hero, BaseType::Structure, BaseType::Villain, BaseType::PlotDevice};

constexpr BaseType base_type(Trope t) {
  switch (t) {
    case Trope::Hero:
    case Trope::FiveManBand:
    case Trope::ChosenOne:
    case Trope::Superhero:
      return BaseType::Hero;
    case Trope::Conflict:
      return BaseType::Structure;
    case Trope::Enemy:
    case Trope::Empire:
    case Trope::BigBad:
    case Trope::Dragon:
      return BaseType::Villain;
    case Trope::PlotDevice:
    case Trope::ChekhovsGun:
    case Trope::MacGuffin:
    case Trope::MayHelpInQuest:
      return BaseType::PlotDevice;
  }
  return BaseType::Structure;
}

constexpr bool is_character(Trope t) {
  const BaseType b = base_type(t);
  return b == BaseType::Hero || b == BaseType::Villain;
}

std::string_view symbol(Trope t);
std::string_view name(BaseType b);

// Case-insensitive lookup of a trope symbol ("hero", "5ma", ...).
std::optional<Trope> trope_from_symbol(std::string_view text);

}  // namespace tropetwist
