#pragma once

// Test-only oracles and generators. Nothing here calls into the enumeration,
// classification or combination code it is used to check.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "anyonsim/config_space.hpp"

namespace anyonsim::testing {

using cplx = std::complex<double>;

struct SiteConfig {
  int x1, y1, x2, y2;
};

struct OracleWalkSums {
  std::map<long, cplx> by_half_turns;  ///< keyed by round(angle / pi)
  cplx total{0.0, 0.0};
  std::uint64_t count = 0;
};

/// Odometer over every sequence of n joint moves from the 5-move set
/// {stay, +x, -x, +y, -y}; keeps sequences that stay within |coord| <= extent,
/// never coincide, never reverse the relative vector, and end at `end`.
/// Action and angle are recomputed from integer displacements.
OracleWalkSums oracle_walk_sums(int extent, double spacing, double dt, double mass, double hbar,
                                SiteConfig start, SiteConfig end, int n_steps);

/// Ryser's formula.
cplx permanent_ryser(const std::vector<std::vector<cplx>>& m);

/// Gaussian elimination with partial pivoting.
cplx determinant_lu(std::vector<std::vector<cplx>> m);

/// Random walk of `n_steps` joint moves from `start` on the unbounded
/// integer lattice, resampling steps that coincide or reverse the relative
/// vector.
DiscretePath random_walk(std::mt19937_64& rng, const TwoParticleConfig& start, int n_steps);

/// Random walk from `start` followed by single-particle Manhattan legs that
/// return to `start` (exchanged = false) or to swap(start). Retries until the
/// result passes validate_path.
DiscretePath random_closed_walk(std::mt19937_64& rng, const TwoParticleConfig& start,
                                int n_random_steps, bool exchanged);

TwoParticleConfig random_site_config(std::mt19937_64& rng, int extent);

}  // namespace anyonsim::testing
