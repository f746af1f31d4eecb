#include "anyonsim/homotopy.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace anyonsim {

std::string_view to_string(PathKind kind) noexcept {
  return kind == PathKind::Direct ? "Direct" : "Exchange";
}

double signed_angle(Vec2 r_from, Vec2 r_to) {
  if (norm_squared(r_from) == 0.0 || norm_squared(r_to) == 0.0) {
    throw Error(ErrorCode::ZeroVector, "signed_angle: zero relative vector");
  }
  if (is_half_turn(r_from, r_to)) {
    throw Error(ErrorCode::AntiparallelAmbiguity, "signed_angle: vectors are antiparallel");
  }
  return std::atan2(cross(r_from, r_to), dot(r_from, r_to));
}

TotalAngle total_angle(const DiscretePath& path) {
  require_valid(path);
  double sum = 0.0;
  for (std::size_t k = 1; k < path.configs.size(); ++k) {
    sum += signed_angle(path.configs[k - 1].relative(), path.configs[k].relative());
  }
  return {sum};
}

PathKind endpoint_kind(const TwoParticleConfig& start, const TwoParticleConfig& end) {
  if (end == start) return PathKind::Direct;
  if (end == swap(start)) return PathKind::Exchange;
  throw Error(ErrorCode::EndpointsNotClosedOrExchanged,
              "path neither returns to its start nor ends in the swapped start");
}

HomotopyClass class_from_angle(double radians, PathKind kind) {
  const double turns = radians / (2.0 * std::numbers::pi);
  const double half_turns = std::round(2.0 * turns);
  const auto cls = HomotopyClass::from_half_turns(static_cast<std::int64_t>(half_turns));
  if (std::abs(turns - cls.winding()) >= kWindingTolerance || cls.kind() != kind) {
    throw Error(ErrorCode::RoundingInconsistency,
                fmt::format("accumulated angle {} rad is not a {} winding", radians,
                            kind == PathKind::Direct ? "whole-turn" : "half-turn"));
  }
  return cls;
}

HomotopyClass classify(const DiscretePath& path) {
  const TotalAngle angle = total_angle(path);
  return class_from_angle(angle.radians, endpoint_kind(path.front(), path.back()));
}

std::int64_t class_relative(const DiscretePath& a, const DiscretePath& b) {
  require_valid(a);
  require_valid(b);
  if (!(a.front() == b.front()) || !(a.back() == b.back())) {
    throw Error(ErrorCode::NotComparable, "paths have different endpoints");
  }
  const double turns =
      (total_angle(a).radians - total_angle(b).radians) / (2.0 * std::numbers::pi);
  const double whole = std::round(turns);
  if (std::abs(turns - whole) >= kWindingTolerance) {
    throw Error(ErrorCode::RoundingInconsistency,
                fmt::format("angle difference {} turns is not integral", turns));
  }
  return static_cast<std::int64_t>(whole);
}

}  // namespace anyonsim
