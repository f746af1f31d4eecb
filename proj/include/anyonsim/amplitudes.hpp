#pragma once

// Discretized action amplitudes, homotopy-resolved lattice propagators,
// anyonic class weights, the three Feynman rules and the operational
// boson/fermion combination of distinguishable-particle amplitudes.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string_view>
#include <vector>

#include "anyonsim/config_space.hpp"
#include "anyonsim/homotopy.hpp"

namespace anyonsim {

using Amplitude = std::complex<double>;

struct PhysicsParams {
  double mass = 1.0;  ///< per particle
  double hbar = 1.0;
};

void require_valid(const PhysicsParams& params);

/// Kinetic action of one time step, both particles.
double step_action(const TwoParticleConfig& from, const TwoParticleConfig& to, double dt,
                   const PhysicsParams& params);

/// S = sum_k m (|dp1_k|^2 + |dp2_k|^2) / (2 dt).
double action(const DiscretePath& path, const PhysicsParams& params);

/// exp(i S / hbar).
Amplitude path_amplitude(const DiscretePath& path, const PhysicsParams& params);

/// Neumaier-compensated complex sum.
class ComplexSum {
 public:
  void add(Amplitude z);
  Amplitude value() const { return {re_.value(), im_.value()}; }

 private:
  struct Component {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x);
    double value() const { return sum + carry; }
  };
  Component re_;
  Component im_;
};

inline constexpr std::uint64_t kDefaultWalkBudget = 10'000'000;

struct KernelOptions {
  std::uint64_t budget = kDefaultWalkBudget;  ///< max walks enumerated
  unsigned workers = 1;
};

/// Class-restricted walk sums K^w. Classes with no walks are absent.
struct ResolvedKernel {
  EndpointPair endpoints;
  int n_steps = 0;
  std::map<HomotopyClass, Amplitude> partials;
  std::uint64_t walk_count = 0;

  PathKind kind() const { return endpoint_kind(endpoints.start, endpoints.end); }
};

/// Enumerates every lattice walk between the (closed or exchanged) endpoints
/// and sums path amplitudes per homotopy class. Work is split by first joint
/// move; partial sums are merged in partition order so the result does not
/// depend on `options.workers`. Throws BudgetExceeded or
/// EndpointsNotClosedOrExchanged.
ResolvedKernel resolved_kernel(const LatticeSpec& lattice, const EndpointPair& endpoints,
                               int n_steps, const PhysicsParams& params,
                               const KernelOptions& options = {});

struct WalkSum {
  Amplitude total;
  std::uint64_t walk_count = 0;
};

/// Unclassified walk sum between arbitrary lattice endpoints.
WalkSum walk_sum(const LatticeSpec& lattice, const EndpointPair& endpoints, int n_steps,
                 const PhysicsParams& params, const KernelOptions& options = {});

/// Sum of all class partials (the theta = 0 kernel).
Amplitude partition_total(const ResolvedKernel& resolved);

/// e^{i theta w} for winding w.
Amplitude anyonic_weight(HomotopyClass cls, double theta);

/// sum_w e^{i theta w} K^w.
Amplitude anyonic_kernel(const ResolvedKernel& resolved, double theta);

inline Amplitude feynman_product(Amplitude ab, Amplitude bc) { return ab * bc; }
inline Amplitude feynman_sum(Amplitude abd, Amplitude acd) { return abd + acd; }
inline double probability(Amplitude a) { return std::norm(a); }

// ---------------------------------------------------------------------------
// Operational identical-particle rules

enum class OpClass { Boson, Fermion };

std::string_view to_string(OpClass op) noexcept;

inline constexpr int kMaxPermutationSize = 8;

/// Permutation of {0..n-1} stored as its image list.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, int i, int j);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  /// +1 for an even number of transpositions, -1 otherwise.
  int sign() const;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// All n! permutations in lexicographic order; 1 <= n <= kMaxPermutationSize.
std::vector<Permutation> all_permutations(int n);

struct PermutationAmplitudes {
  int n = 0;
  std::map<Permutation, Amplitude> alpha;
};

/// sum_sigma alpha_sigma (Boson) or sum_sigma sgn(sigma) alpha_sigma
/// (Fermion), summed in lexicographic order. Throws IncompleteMap.
Amplitude operational_combine(const PermutationAmplitudes& perms, OpClass op);

/// Two-particle specialization alpha_dir +/- alpha_op.
PermutationAmplitudes two_particle_alphas(Amplitude direct, Amplitude opposite);

class AmplitudeMatrix {
 public:
  AmplitudeMatrix(std::size_t rows, std::size_t cols);
  AmplitudeMatrix(std::initializer_list<std::initializer_list<Amplitude>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Amplitude& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Amplitude operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Amplitude> data_;
};

/// alpha_sigma = prod_j M(j, sigma(j)) for independent particles, where
/// M(j, k) is the single-particle amplitude from start j to end k.
/// Throws NonSquare.
PermutationAmplitudes noninteracting_alpha(const AmplitudeMatrix& single_kernel);

}  // namespace anyonsim
