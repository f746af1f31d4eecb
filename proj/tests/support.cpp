#include "support.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace anyonsim::testing {

OracleWalkSums oracle_walk_sums(int extent, double spacing, double dt, double mass, double hbar,
                                SiteConfig start, SiteConfig end, int n_steps) {
  static constexpr int mdx[5] = {0, 1, -1, 0, 0};
  static constexpr int mdy[5] = {0, 0, 0, 1, -1};
  OracleWalkSums out;
  std::vector<int> digits(static_cast<std::size_t>(n_steps), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n_steps; ++i) total *= 25;

  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = n_steps - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(c % 25);
      c /= 25;
    }
    SiteConfig s = start;
    double kinetic = 0.0;  // sum of squared integer displacements
    double angle = 0.0;
    bool ok = true;
    for (int i = 0; i < n_steps && ok; ++i) {
      const int a = digits[static_cast<std::size_t>(i)] / 5;
      const int b = digits[static_cast<std::size_t>(i)] % 5;
      SiteConfig t{s.x1 + mdx[a], s.y1 + mdy[a], s.x2 + mdx[b], s.y2 + mdy[b]};
      if (std::abs(t.x1) > extent || std::abs(t.y1) > extent || std::abs(t.x2) > extent ||
          std::abs(t.y2) > extent) {
        ok = false;
        break;
      }
      if (t.x1 == t.x2 && t.y1 == t.y2) {
        ok = false;
        break;
      }
      const long rx0 = s.x1 - s.x2, ry0 = s.y1 - s.y2, rx1 = t.x1 - t.x2, ry1 = t.y1 - t.y2;
      const long cr = rx0 * ry1 - ry0 * rx1, dp = rx0 * rx1 + ry0 * ry1;
      if (cr == 0 && dp < 0) {
        ok = false;
        break;
      }
      angle += std::atan2(static_cast<double>(cr), static_cast<double>(dp));
      kinetic += mdx[a] * mdx[a] + mdy[a] * mdy[a] + mdx[b] * mdx[b] + mdy[b] * mdy[b];
      s = t;
    }
    if (!ok || s.x1 != end.x1 || s.y1 != end.y1 || s.x2 != end.x2 || s.y2 != end.y2) continue;
    const double phase = mass * kinetic * spacing * spacing / (2.0 * dt) / hbar;
    const cplx amp{std::cos(phase), std::sin(phase)};
    out.by_half_turns[std::lround(angle / std::numbers::pi)] += amp;
    out.total += amp;
    ++out.count;
  }
  return out;
}

cplx permanent_ryser(const std::vector<std::vector<cplx>>& m) {
  const std::size_t n = m.size();
  cplx sum{0.0, 0.0};
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << n); ++subset) {
    cplx prod{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      cplx row{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (subset & (std::uint64_t{1} << j)) row += m[i][j];
      }
      prod *= row;
    }
    const int bits = std::popcount(subset);
    sum += ((static_cast<int>(n) - bits) % 2 == 0) ? prod : -prod;
  }
  return sum;
}

cplx determinant_lu(std::vector<std::vector<cplx>> m) {
  const std::size_t n = m.size();
  cplx det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) == 0.0) return {0.0, 0.0};
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

namespace {

constexpr int kDx[5] = {0, 1, -1, 0, 0};
constexpr int kDy[5] = {0, 0, 0, 1, -1};

bool step_ok(const TwoParticleConfig& from, const TwoParticleConfig& to) {
  if (to.p1 == to.p2) return false;
  const Vec2 r0 = from.relative(), r1 = to.relative();
  return !(cross(r0, r1) == 0.0 && dot(r0, r1) < 0.0);
}

// Moves one particle at a time along x then y (or y then x) to `target`.
void append_legs(std::mt19937_64& rng, DiscretePath& path, const TwoParticleConfig& target) {
  std::bernoulli_distribution coin(0.5);
  for (int particle : {1, 2}) {
    const bool x_first = coin(rng);
    for (int leg = 0; leg < 2; ++leg) {
      const bool along_x = (leg == 0) == x_first;
      while (true) {
        TwoParticleConfig c = path.configs.back();
        Vec2& p = particle == 1 ? c.p1 : c.p2;
        const Vec2 goal = particle == 1 ? target.p1 : target.p2;
        const double delta = along_x ? goal.x - p.x : goal.y - p.y;
        if (delta == 0.0) break;
        (along_x ? p.x : p.y) += delta > 0 ? 1.0 : -1.0;
        path.configs.push_back(c);
      }
    }
  }
}

}  // namespace

DiscretePath random_walk(std::mt19937_64& rng, const TwoParticleConfig& start, int n_steps) {
  std::uniform_int_distribution<int> move(0, 24);
  DiscretePath path{1.0, {start}};
  while (static_cast<int>(path.steps()) < n_steps) {
    const int m = move(rng);
    const auto& from = path.configs.back();
    TwoParticleConfig to{{from.p1.x + kDx[m / 5], from.p1.y + kDy[m / 5]},
                         {from.p2.x + kDx[m % 5], from.p2.y + kDy[m % 5]}};
    if (step_ok(from, to)) path.configs.push_back(to);
  }
  return path;
}

DiscretePath random_closed_walk(std::mt19937_64& rng, const TwoParticleConfig& start,
                                int n_random_steps, bool exchanged) {
  const TwoParticleConfig target = exchanged ? swap(start) : start;
  while (true) {
    DiscretePath path = random_walk(rng, start, n_random_steps);
    append_legs(rng, path, target);
    if (path.configs.size() < 2) path.configs.push_back(path.configs.back());
    if (!validate_path(path)) return path;
  }
}

TwoParticleConfig random_site_config(std::mt19937_64& rng, int extent) {
  std::uniform_int_distribution<int> coord(-extent, extent);
  while (true) {
    TwoParticleConfig c{{static_cast<double>(coord(rng)), static_cast<double>(coord(rng))},
                        {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))}};
    if (!c.coincident()) return c;
  }
}

}  // namespace anyonsim::testing
