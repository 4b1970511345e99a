#pragma once

#include <compare>

namespace cliffbie {

/// Multi-index j with |j| <= 1: either zero or a single unit coordinate.
/// At this order x^j, j!, and the partial d^j reduce to picking coordinate
/// `coordinate()` (0-based).
class MultiIndex {
 public:
  static constexpr MultiIndex zero() { return MultiIndex(-1); }
  static constexpr MultiIndex unit(int coordinate) { return MultiIndex(coordinate); }

  constexpr bool is_zero() const { return coord_ < 0; }
  constexpr int order() const { return is_zero() ? 0 : 1; }
  /// Coordinate of a unit index; -1 for the zero index.
  constexpr int coordinate() const { return coord_; }

  friend constexpr auto operator<=>(MultiIndex, MultiIndex) = default;

 private:
  constexpr explicit MultiIndex(int c) : coord_(c) {}
  int coord_;
};

}  // namespace cliffbie
