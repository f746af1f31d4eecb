#include "anyonsim/amplitudes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <numeric>
#include <thread>

namespace anyonsim {

void require_valid(const PhysicsParams& params) {
  if (!(std::isfinite(params.mass) && params.mass > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mass must be finite and positive");
  }
  if (!(std::isfinite(params.hbar) && params.hbar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "hbar must be finite and positive");
  }
}

double step_action(const TwoParticleConfig& from, const TwoParticleConfig& to, double dt,
                   const PhysicsParams& params) {
  const double d1 = norm_squared(to.p1 - from.p1);
  const double d2 = norm_squared(to.p2 - from.p2);
  return (params.mass * d1 + params.mass * d2) / (2.0 * dt);
}

double action(const DiscretePath& path, const PhysicsParams& params) {
  require_valid(path);
  require_valid(params);
  double s = 0.0;
  for (std::size_t k = 1; k < path.configs.size(); ++k) {
    s += step_action(path.configs[k - 1], path.configs[k], path.dt, params);
  }
  return s;
}

Amplitude path_amplitude(const DiscretePath& path, const PhysicsParams& params) {
  return std::polar(1.0, action(path, params) / params.hbar);
}

void ComplexSum::Component::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    carry += (sum - t) + x;
  } else {
    carry += (x - t) + sum;
  }
  sum = t;
}

void ComplexSum::add(Amplitude z) {
  re_.add(z.real());
  im_.add(z.imag());
}

namespace {

// Runs fn(partition) for every partition on `workers` threads and returns
// the results indexed by partition. The first exception in partition order
// is rethrown.
template <class Result, class Fn>
std::vector<Result> run_partitions(std::size_t count, unsigned workers, Fn&& fn) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t p = next.fetch_add(1); p < count; p = next.fetch_add(1)) {
      try {
        results[p] = fn(p);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(count));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

class BudgetCounter {
 public:
  BudgetCounter(std::uint64_t budget, const LatticeSpec& lattice, int n_steps)
      : budget_(budget) {
    const double joint = static_cast<double>(walk_partition_count(lattice));
    estimate_ = std::pow(joint, n_steps);
  }

  void tick() {
    if (count_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      throw Error(ErrorCode::BudgetExceeded,
                  fmt::format("walk count exceeds budget of {} (upper-bound estimate {:.3g} walks)",
                              budget_, estimate_));
    }
  }

 private:
  std::uint64_t budget_;
  double estimate_ = 0.0;
  std::atomic<std::uint64_t> count_{0};
};

void check_options(const KernelOptions& options) {
  if (options.budget == 0) throw Error(ErrorCode::InvalidArgument, "walk budget must be > 0");
}

}  // namespace

ResolvedKernel resolved_kernel(const LatticeSpec& lattice, const EndpointPair& endpoints,
                               int n_steps, const PhysicsParams& params,
                               const KernelOptions& options) {
  require_valid(params);
  check_options(options);
  ResolvedKernel out;
  out.endpoints = snap_to_lattice(lattice, endpoints);
  out.n_steps = n_steps;
  const PathKind kind = out.kind();

  struct Partial {
    std::map<HomotopyClass, ComplexSum> sums;
    std::uint64_t walks = 0;
  };
  BudgetCounter budget(options.budget, lattice, n_steps);
  auto partials = run_partitions<Partial>(
      walk_partition_count(lattice), options.workers, [&](std::size_t p) {
        Partial part;
        enumerate_walks_in_partition(lattice, out.endpoints, n_steps, p,
                                     [&](const DiscretePath& walk) {
                                       budget.tick();
                                       const auto cls = class_from_angle(total_angle(walk).radians, kind);
                                       part.sums[cls].add(path_amplitude(walk, params));
                                       ++part.walks;
                                     });
        return part;
      });

  std::map<HomotopyClass, ComplexSum> merged;
  for (const auto& part : partials) {
    for (const auto& [cls, sum] : part.sums) merged[cls].add(sum.value());
    out.walk_count += part.walks;
  }
  for (const auto& [cls, sum] : merged) out.partials.emplace(cls, sum.value());
  return out;
}

WalkSum walk_sum(const LatticeSpec& lattice, const EndpointPair& endpoints, int n_steps,
                 const PhysicsParams& params, const KernelOptions& options) {
  require_valid(params);
  check_options(options);
  const EndpointPair snapped = snap_to_lattice(lattice, endpoints);

  struct Partial {
    ComplexSum sum;
    std::uint64_t walks = 0;
  };
  BudgetCounter budget(options.budget, lattice, n_steps);
  auto partials = run_partitions<Partial>(
      walk_partition_count(lattice), options.workers, [&](std::size_t p) {
        Partial part;
        enumerate_walks_in_partition(lattice, snapped, n_steps, p, [&](const DiscretePath& walk) {
          budget.tick();
          part.sum.add(path_amplitude(walk, params));
          ++part.walks;
        });
        return part;
      });

  ComplexSum total;
  WalkSum out;
  for (const auto& part : partials) {
    total.add(part.sum.value());
    out.walk_count += part.walks;
  }
  out.total = total.value();
  return out;
}

Amplitude partition_total(const ResolvedKernel& resolved) {
  ComplexSum total;
  for (const auto& [cls, k] : resolved.partials) total.add(k);
  return total.value();
}

Amplitude anyonic_weight(HomotopyClass cls, double theta) {
  return std::polar(1.0, theta * cls.winding());
}

Amplitude anyonic_kernel(const ResolvedKernel& resolved, double theta) {
  ComplexSum total;
  for (const auto& [cls, k] : resolved.partials) total.add(anyonic_weight(cls, theta) * k);
  return total.value();
}

std::string_view to_string(OpClass op) noexcept {
  return op == OpClass::Boson ? "Boson" : "Fermion";
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::InvalidArgument, "image list is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int i, int j) {
  auto p = identity(n).images_;
  std::swap(p.at(static_cast<std::size_t>(i)), p.at(static_cast<std::size_t>(j)));
  return Permutation(std::move(p));
}

int Permutation::sign() const {
  auto p = images_;
  int swaps = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
      ++swaps;
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "permutation sizes differ");
  std::vector<int> images(b.images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a(b.images_[i]);
  return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 1 || n > kMaxPermutationSize) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("permutation size must be in 1..{}, got {}", kMaxPermutationSize, n));
  }
  std::vector<Permutation> out;
  auto images = Permutation::identity(n).images();
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Amplitude operational_combine(const PermutationAmplitudes& perms, OpClass op) {
  if (perms.n < 1 || perms.n > kMaxPermutationSize) {
    throw Error(ErrorCode::IncompleteMap, fmt::format("unsupported particle count {}", perms.n));
  }
  const auto expected = all_permutations(perms.n);
  if (perms.alpha.size() != expected.size()) {
    throw Error(ErrorCode::IncompleteMap,
                fmt::format("expected {} permutation amplitudes, got {}", expected.size(),
                            perms.alpha.size()));
  }
  Amplitude total{0.0, 0.0};
  for (const auto& sigma : expected) {
    auto it = perms.alpha.find(sigma);
    if (it == perms.alpha.end()) {
      throw Error(ErrorCode::IncompleteMap, "permutation amplitude map is missing an entry");
    }
    total += (op == OpClass::Fermion && sigma.sign() < 0) ? -it->second : it->second;
  }
  return total;
}

PermutationAmplitudes two_particle_alphas(Amplitude direct, Amplitude opposite) {
  PermutationAmplitudes out{2, {}};
  out.alpha.emplace(Permutation::identity(2), direct);
  out.alpha.emplace(Permutation::transposition(2, 0, 1), opposite);
  return out;
}

AmplitudeMatrix::AmplitudeMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

AmplitudeMatrix::AmplitudeMatrix(std::initializer_list<std::initializer_list<Amplitude>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

PermutationAmplitudes noninteracting_alpha(const AmplitudeMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::NonSquare,
                fmt::format("single-particle kernel must be square, got {}x{}", m.rows(), m.cols()));
  }
  const int n = static_cast<int>(m.rows());
  PermutationAmplitudes out{n, {}};
  for (auto& sigma : all_permutations(n)) {
    Amplitude prod{1.0, 0.0};
    for (int j = 0; j < n; ++j) {
      prod = feynman_product(prod, m(static_cast<std::size_t>(j), static_cast<std::size_t>(sigma(j))));
    }
    out.alpha.emplace(std::move(sigma), prod);
  }
  return out;
}

}  // namespace anyonsim
