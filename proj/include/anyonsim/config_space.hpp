#pragma once

// Two-particle configuration space of the plane with the coincidence set
// removed, discrete paths through it, and the finite lattices used for
// exhaustive walk enumeration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anyonsim/error.hpp"

namespace anyonsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_squared(Vec2 a) { return dot(a, a); }
bool is_finite(Vec2 v) noexcept;

struct TwoParticleConfig {
  Vec2 p1;
  Vec2 p2;

  /// Relative coordinate p1 - p2; zero exactly at coincidence.
  constexpr Vec2 relative() const { return p1 - p2; }
  constexpr bool coincident() const { return p1 == p2; }

  friend constexpr bool operator==(const TwoParticleConfig&,
                                   const TwoParticleConfig&) = default;
};

/// Exchanges the particle labels. Involutive.
constexpr TwoParticleConfig swap(const TwoParticleConfig& c) { return {c.p2, c.p1}; }

/// Uniformly time-stepped sequence of configurations.
struct DiscretePath {
  double dt = 1.0;
  std::vector<TwoParticleConfig> configs;

  std::size_t steps() const { return configs.empty() ? 0 : configs.size() - 1; }
  const TwoParticleConfig& front() const { return configs.front(); }
  const TwoParticleConfig& back() const { return configs.back(); }
};

struct EndpointPair {
  TwoParticleConfig start;
  TwoParticleConfig end;
};

/// First invariant violation of a path. For CoincidenceAtStep and
/// non-finite coordinates `step` is the config index; for TurnTooLargeAtStep
/// it is the index k of the transition configs[k] -> configs[k+1].
struct PathViolation {
  ErrorCode code;
  std::size_t step;
  std::string message;
};

std::optional<PathViolation> validate_path(const DiscretePath& path);

/// Throws Error carrying the first violation reported by validate_path.
void require_valid(const DiscretePath& path);

/// True when the step r_from -> r_to turns the relative vector by exactly pi.
bool is_half_turn(Vec2 r_from, Vec2 r_to) noexcept;

/// Joins p and q where p ends at q's start; dt must agree.
DiscretePath concat(const DiscretePath& p, const DiscretePath& q);
DiscretePath reverse(const DiscretePath& p);
DiscretePath translate(const DiscretePath& p, Vec2 shift);

// ---------------------------------------------------------------------------
// Lattice

struct LatticeMove {
  int dx = 0;
  int dy = 0;
};

/// Stay, +x, -x, +y, -y.
std::vector<LatticeMove> default_moves();

struct LatticeSpec {
  int extent = 1;          ///< sites span -extent..+extent in each axis
  double spacing = 1.0;    ///< physical distance between neighbouring sites
  double time_step = 1.0;  ///< dt attached to every enumerated walk
  std::vector<LatticeMove> moves = default_moves();
};

void require_valid(const LatticeSpec& lattice);

/// Snaps both configs of `endpoints` to lattice sites. Throws
/// EndpointOffLattice when a coordinate is further than 1e-9 spacing from a
/// site or outside the extent.
EndpointPair snap_to_lattice(const LatticeSpec& lattice, const EndpointPair& endpoints);

using WalkVisitor = std::function<void(const DiscretePath&)>;

/// Number of disjoint enumeration partitions (one per first joint move).
std::size_t walk_partition_count(const LatticeSpec& lattice);

/// Visits every walk of exactly `n_steps` joint moves from endpoints.start
/// to endpoints.end. Each step moves both particles by one allowed move
/// (particle 1 is the major index), stays on the lattice, never coincides
/// and never turns the relative vector by pi. Order is lexicographic in the
/// joint move indices. The visited path object is reused between calls.
void enumerate_walks(const LatticeSpec& lattice, const EndpointPair& endpoints,
                     int n_steps, const WalkVisitor& visit);

/// Same as enumerate_walks restricted to walks whose first joint move has
/// index `partition`. Concatenating all partitions in index order
/// reproduces enumerate_walks exactly.
void enumerate_walks_in_partition(const LatticeSpec& lattice,
                                  const EndpointPair& endpoints, int n_steps,
                                  std::size_t partition, const WalkVisitor& visit);

std::uint64_t count_walks(const LatticeSpec& lattice, const EndpointPair& endpoints,
                          int n_steps);

}  // namespace anyonsim
