#include "anyonsim/config_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>

namespace anyonsim {

bool is_finite(Vec2 v) noexcept { return std::isfinite(v.x) && std::isfinite(v.y); }

bool is_half_turn(Vec2 r_from, Vec2 r_to) noexcept {
  return cross(r_from, r_to) == 0.0 && dot(r_from, r_to) < 0.0;
}

std::optional<PathViolation> validate_path(const DiscretePath& path) {
  if (!(std::isfinite(path.dt) && path.dt > 0.0)) {
    return PathViolation{ErrorCode::InvalidPath, 0,
                         fmt::format("dt must be finite and positive, got {}", path.dt)};
  }
  if (path.configs.size() < 2) {
    return PathViolation{ErrorCode::InvalidPath, 0,
                         fmt::format("path needs at least 2 configs, got {}",
                                     path.configs.size())};
  }
  for (std::size_t k = 0; k < path.configs.size(); ++k) {
    const auto& c = path.configs[k];
    if (!is_finite(c.p1) || !is_finite(c.p2)) {
      return PathViolation{ErrorCode::InvalidPath, k,
                           fmt::format("non-finite coordinate at config {}", k)};
    }
    if (c.coincident()) {
      return PathViolation{ErrorCode::CoincidenceAtStep, k,
                           fmt::format("particles coincide at config {} ({}, {})", k,
                                       c.p1.x, c.p1.y)};
    }
    if (k > 0 && is_half_turn(path.configs[k - 1].relative(), c.relative())) {
      return PathViolation{ErrorCode::TurnTooLargeAtStep, k - 1,
                           fmt::format("relative vector turns by pi between configs {} and {}",
                                       k - 1, k)};
    }
  }
  return std::nullopt;
}

void require_valid(const DiscretePath& path) {
  if (auto v = validate_path(path)) throw Error(v->code, v->message, v->step);
}

DiscretePath concat(const DiscretePath& p, const DiscretePath& q) {
  if (p.configs.empty() || q.configs.empty() || !(p.back() == q.front())) {
    throw Error(ErrorCode::InvalidArgument, "concat: first path must end where second starts");
  }
  if (p.dt != q.dt) throw Error(ErrorCode::InvalidArgument, "concat: time steps differ");
  DiscretePath out{p.dt, p.configs};
  out.configs.insert(out.configs.end(), q.configs.begin() + 1, q.configs.end());
  return out;
}

DiscretePath reverse(const DiscretePath& p) {
  return {p.dt, {p.configs.rbegin(), p.configs.rend()}};
}

DiscretePath translate(const DiscretePath& p, Vec2 shift) {
  DiscretePath out{p.dt, {}};
  out.configs.reserve(p.configs.size());
  for (const auto& c : p.configs) out.configs.push_back({c.p1 + shift, c.p2 + shift});
  return out;
}

std::vector<LatticeMove> default_moves() { return {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}; }

void require_valid(const LatticeSpec& lattice) {
  if (lattice.extent < 1) {
    throw Error(ErrorCode::InvalidLattice, fmt::format("extent must be >= 1, got {}", lattice.extent));
  }
  if (!(std::isfinite(lattice.spacing) && lattice.spacing > 0.0)) {
    throw Error(ErrorCode::InvalidLattice, "spacing must be finite and positive");
  }
  if (!(std::isfinite(lattice.time_step) && lattice.time_step > 0.0)) {
    throw Error(ErrorCode::InvalidLattice, "time step must be finite and positive");
  }
  if (lattice.moves.empty()) throw Error(ErrorCode::InvalidLattice, "move set is empty");
}

namespace {

struct Site {
  int i = 0;
  int j = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct SitePair {
  Site a;
  Site b;
};

std::optional<int> snap_coordinate(const LatticeSpec& lattice, double x) {
  if (!std::isfinite(x)) return std::nullopt;
  const double idx = std::round(x / lattice.spacing);
  if (std::abs(x - idx * lattice.spacing) > 1e-9 * lattice.spacing) return std::nullopt;
  if (std::abs(idx) > lattice.extent) return std::nullopt;
  return static_cast<int>(idx);
}

Site snap_site(const LatticeSpec& lattice, Vec2 p) {
  auto i = snap_coordinate(lattice, p.x);
  auto j = snap_coordinate(lattice, p.y);
  if (!i || !j) {
    throw Error(ErrorCode::EndpointOffLattice,
                fmt::format("point ({}, {}) is not a site of the lattice (extent {}, spacing {})",
                            p.x, p.y, lattice.extent, lattice.spacing));
  }
  return {*i, *j};
}

SitePair snap_pair(const LatticeSpec& lattice, const TwoParticleConfig& c) {
  SitePair s{snap_site(lattice, c.p1), snap_site(lattice, c.p2)};
  if (s.a == s.b) throw Error(ErrorCode::CoincidenceAtStep, "endpoint config is coincident", 0);
  return s;
}

Vec2 position(const LatticeSpec& lattice, Site s) {
  return {s.i * lattice.spacing, s.j * lattice.spacing};
}

int l1(Site a, Site b) { return std::abs(a.i - b.i) + std::abs(a.j - b.j); }

// Depth-first enumeration over joint moves with reachability pruning.
// Step checks run on integer site coordinates so they are exact.
class WalkEnumerator {
 public:
  WalkEnumerator(const LatticeSpec& lattice, const EndpointPair& endpoints, int n_steps,
                 const WalkVisitor& visit)
      : lattice_(lattice), n_steps_(n_steps), visit_(visit) {
    require_valid(lattice);
    if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "n_steps must be >= 1");
    start_ = snap_pair(lattice, endpoints.start);
    end_ = snap_pair(lattice, endpoints.end);
    max_reach_ = 0;
    for (const auto& m : lattice.moves) max_reach_ = std::max(max_reach_, std::abs(m.dx) + std::abs(m.dy));
    sites_.assign(static_cast<std::size_t>(n_steps) + 1, start_);
    path_.dt = lattice.time_step;
    path_.configs.resize(static_cast<std::size_t>(n_steps) + 1);
  }

  void run_partition(std::size_t partition) {
    const std::size_t m = lattice_.moves.size();
    if (partition >= m * m) throw Error(ErrorCode::InvalidArgument, "partition index out of range");
    if (!reachable(start_, 0)) return;
    if (auto next = apply(start_, partition)) {
      sites_[1] = *next;
      descend(1);
    }
  }

  void run_all() {
    const std::size_t m = lattice_.moves.size();
    for (std::size_t p = 0; p < m * m; ++p) run_partition(p);
  }

 private:
  bool reachable(const SitePair& s, int depth) const {
    const int remaining = n_steps_ - depth;
    const int budget = remaining * max_reach_;
    return l1(s.a, end_.a) <= budget && l1(s.b, end_.b) <= budget;
  }

  bool in_bounds(Site s) const {
    return std::abs(s.i) <= lattice_.extent && std::abs(s.j) <= lattice_.extent;
  }

  // Applies joint move `joint` to `from`; nullopt if the step leaves the
  // lattice, coincides or turns the relative vector by pi.
  std::optional<SitePair> apply(const SitePair& from, std::size_t joint) const {
    const std::size_t m = lattice_.moves.size();
    const auto& m1 = lattice_.moves[joint / m];
    const auto& m2 = lattice_.moves[joint % m];
    SitePair to{{from.a.i + m1.dx, from.a.j + m1.dy}, {from.b.i + m2.dx, from.b.j + m2.dy}};
    if (!in_bounds(to.a) || !in_bounds(to.b) || to.a == to.b) return std::nullopt;
    const long rx0 = from.a.i - from.b.i, ry0 = from.a.j - from.b.j;
    const long rx1 = to.a.i - to.b.i, ry1 = to.a.j - to.b.j;
    if (rx0 * ry1 - ry0 * rx1 == 0 && rx0 * rx1 + ry0 * ry1 < 0) return std::nullopt;
    return to;
  }

  void descend(int depth) {
    const SitePair& here = sites_[static_cast<std::size_t>(depth)];
    if (!reachable(here, depth)) return;
    if (depth == n_steps_) {
      if (here.a == end_.a && here.b == end_.b) emit();
      return;
    }
    const std::size_t m = lattice_.moves.size();
    for (std::size_t joint = 0; joint < m * m; ++joint) {
      if (auto next = apply(here, joint)) {
        sites_[static_cast<std::size_t>(depth) + 1] = *next;
        descend(depth + 1);
      }
    }
  }

  void emit() {
    for (std::size_t k = 0; k < sites_.size(); ++k) {
      path_.configs[k] = {position(lattice_, sites_[k].a), position(lattice_, sites_[k].b)};
    }
    visit_(path_);
  }

  const LatticeSpec& lattice_;
  int n_steps_;
  const WalkVisitor& visit_;
  SitePair start_{};
  SitePair end_{};
  int max_reach_ = 0;
  std::vector<SitePair> sites_;
  DiscretePath path_;
};

}  // namespace

EndpointPair snap_to_lattice(const LatticeSpec& lattice, const EndpointPair& endpoints) {
  require_valid(lattice);
  const SitePair s = snap_pair(lattice, endpoints.start);
  const SitePair e = snap_pair(lattice, endpoints.end);
  return {{position(lattice, s.a), position(lattice, s.b)},
          {position(lattice, e.a), position(lattice, e.b)}};
}

std::size_t walk_partition_count(const LatticeSpec& lattice) {
  return lattice.moves.size() * lattice.moves.size();
}

void enumerate_walks(const LatticeSpec& lattice, const EndpointPair& endpoints, int n_steps,
                     const WalkVisitor& visit) {
  WalkEnumerator(lattice, endpoints, n_steps, visit).run_all();
}

void enumerate_walks_in_partition(const LatticeSpec& lattice, const EndpointPair& endpoints,
                                  int n_steps, std::size_t partition, const WalkVisitor& visit) {
  WalkEnumerator(lattice, endpoints, n_steps, visit).run_partition(partition);
}

std::uint64_t count_walks(const LatticeSpec& lattice, const EndpointPair& endpoints, int n_steps) {
  std::uint64_t n = 0;
  enumerate_walks(lattice, endpoints, n_steps, [&n](const DiscretePath&) { ++n; });
  return n;
}

}  // namespace anyonsim
