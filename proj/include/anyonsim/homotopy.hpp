#pragma once

// Rel-endpoint homotopy classes of two-particle paths in the plane. Only the
// relative coordinate p1 - p2 matters; it lives in the plane punctured at the
// origin, whose loops are classified by an integer winding. Exchange paths
// (ending in the swapped config) carry half-integer windings.

#include <compare>
#include <cstdint>
#include <string_view>

#include "anyonsim/config_space.hpp"

namespace anyonsim {

enum class PathKind { Direct, Exchange };

std::string_view to_string(PathKind kind) noexcept;

/// Homotopy class stored as a signed count of counter-clockwise half turns.
/// Even counts are Direct classes, odd counts Exchange classes.
class HomotopyClass {
 public:
  constexpr HomotopyClass() = default;
  static constexpr HomotopyClass from_half_turns(std::int64_t half_turns) {
    HomotopyClass c;
    c.half_turns_ = half_turns;
    return c;
  }

  constexpr std::int64_t half_turns() const { return half_turns_; }
  /// Winding in full turns; integral for Direct, integral + 1/2 for Exchange.
  constexpr double winding() const { return 0.5 * static_cast<double>(half_turns_); }
  constexpr PathKind kind() const {
    return half_turns_ % 2 == 0 ? PathKind::Direct : PathKind::Exchange;
  }

  friend constexpr auto operator<=>(const HomotopyClass&, const HomotopyClass&) = default;

 private:
  std::int64_t half_turns_ = 0;
};

/// Accumulated signed turning of the relative vector, radians.
struct TotalAngle {
  double radians = 0.0;
};

/// Tolerance, in turns, between an accumulated angle and the nearest
/// admissible winding.
inline constexpr double kWindingTolerance = 1e-9;

/// Signed rotation from r_from to r_to in (-pi, pi); positive is CCW.
/// Throws ZeroVector or AntiparallelAmbiguity.
double signed_angle(Vec2 r_from, Vec2 r_to);

TotalAngle total_angle(const DiscretePath& path);

/// Endpoint relation of a path: Direct if it ends where it starts, Exchange if
/// it ends in the swapped config. Throws EndpointsNotClosedOrExchanged.
PathKind endpoint_kind(const TwoParticleConfig& start, const TwoParticleConfig& end);

/// Maps an accumulated angle of a path with the given endpoint kind onto its
/// class. Throws RoundingInconsistency if the angle is not within
/// kWindingTolerance of an admissible winding.
HomotopyClass class_from_angle(double radians, PathKind kind);

HomotopyClass classify(const DiscretePath& path);

/// Relative winding (in full turns) between two paths with the same
/// endpoints; zero iff the paths are homotopic. Throws NotComparable.
std::int64_t class_relative(const DiscretePath& a, const DiscretePath& b);

}  // namespace anyonsim
