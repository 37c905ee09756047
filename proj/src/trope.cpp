#include "tropetwist/trope.hpp"

#include <cctype>

namespace tropetwist {

namespace {

constexpr std::array<std::string_view, kTropeCount> kSymbols = {
    "HERO", "5MA", "NEO", "SH",  "CONF", "ENEMY", "EMP",
    "BAD",  "DRAKE", "PLD", "CHK", "MCG", "MHQ",
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view symbol(Trope t) { return kSymbols[static_cast<std::size_t>(t)]; }

std::string_view name(BaseType b) {
  switch (b) {
    case BaseType::Hero:
      return "Hero";
    case BaseType::Structure:
      return "Structure";
    case BaseType::Villain:
      return "Villain";
    case BaseType::PlotDevice:
      return "PlotDevice";
  }
  return "?";
}

std::optional<Trope> trope_from_symbol(std::string_view text) {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (iequals(text, kSymbols[i])) return kAllTropes[i];
  }
  return std::nullopt;
}

}  // namespace tropetwist
