#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "coopsim/random.hpp"

namespace coopsim {

/// Distribution on the nonnegative integers used for offspring and for
/// cooperation counts: either Poisson(lambda) or an explicit weight table.
class OffspringLaw {
 public:
  static OffspringLaw poisson(double lambda);
  /// Weights p_0..p_K; nonnegative and summing to 1 within 1e-12.
  static OffspringLaw table(std::vector<double> weights);
  static OffspringLaw point_mass(std::uint64_t value);

  bool is_poisson() const { return std::holds_alternative<Poisson>(law_); }
  double lambda() const;  // Poisson only
  const std::vector<double>& weights() const;  // Table only

  double mean() const;
  double variance() const;
  double pmf(std::uint64_t k) const;
  std::uint64_t sample(RandomStream& rng) const;

 private:
  struct Poisson {
    double lambda;
  };
  struct Table {
    std::vector<double> weights;
    std::vector<double> cumulative;
  };
  explicit OffspringLaw(std::variant<Poisson, Table> law) : law_(std::move(law)) {}
  std::variant<Poisson, Table> law_;
};

struct DbpcParams {
  OffspringLaw offspring;
  OffspringLaw cooperation;
};

/// The Poisson family: offspring Poisson(a^2/2), cooperation Poisson(a^2).
DbpcParams poisson_dbpc(double a);

struct DbpcState {
  std::uint64_t generation = 0;
  std::uint64_t current = 1;
  std::uint64_t cumulative = 1;

  static DbpcState start(std::uint64_t z0) { return {0, z0, z0}; }
};

enum class SamplingPath {
  automatic,     // single Poisson draw for Poisson laws, explicit sum otherwise
  explicit_sum,  // k offspring draws plus C(k,2) cooperation draws
};

/// Pair counts above this are not summed draw by draw.
inline constexpr std::uint64_t kExplosionPairs = 10'000'000;

inline std::uint64_t pairs_of(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

/// Size of the next generation given `k` individuals now. Throws
/// explosion_error when an explicit sum would need more than kExplosionPairs
/// cooperation draws.
std::uint64_t sample_next_size(std::uint64_t k, const DbpcParams& params, RandomStream& rng,
                               SamplingPath path = SamplingPath::automatic);

DbpcState dbpc_step(const DbpcState& state, const DbpcParams& params, RandomStream& rng);

/// E[Z_{g+1} | Z_g = k] = k mu_o + C(k,2) mu_c.
double one_step_mean(std::uint64_t k, const DbpcParams& params);
/// Var[Z_{g+1} | Z_g = k] = k nu_o + C(k,2) nu_c.
double one_step_variance(std::uint64_t k, const DbpcParams& params);

struct SurvivalOptions {
  std::uint64_t z0 = 1;
  std::uint64_t threshold = 0;  // required, >= 2
  std::uint64_t generation_cap = 500;
  std::uint64_t replicates = 0;  // required, >= 1
  unsigned threads = 1;
};

struct SurvivalEstimate {
  double pi_hat = 0.0;
  double stderr_ = 0.0;
  std::uint64_t survived = 0;
  std::uint64_t died = 0;
  std::uint64_t undecided = 0;
};

enum class ReplicateFate : std::uint8_t { died, survived, undecided };

/// Run one replicate from z0 until extinction, Z >= threshold, or the cap.
ReplicateFate run_survival_replicate(const DbpcParams& params, const SurvivalOptions& options, RandomStream rng);

/// Monte Carlo survival probability; replicate i uses rng.split(i), so the
/// result does not depend on the thread count. Undecided replicates are
/// reported and excluded from pi_hat = survived / (survived + died).
SurvivalEstimate estimate_survival(const DbpcParams& params, const SurvivalOptions& options, const RandomStream& rng);

enum class TailPolicy {
  mass_at_cutoff_plus_one,  // upper process: remainder placed on cutoff + 1
  mass_at_zero,             // lower process: remainder placed on 0
};

/// Poisson(base_lambda) weights multiplied by `damping` on 0..cutoff
/// (upper) or 1..cutoff (lower); the leftover mass goes where `policy` says.
OffspringLaw truncated_reweighted_law(double base_lambda, std::uint64_t cutoff, double damping, TailPolicy policy);

/// Upper process for a complete graph with D vertices, V parasites per
/// infection and level `cutoff`: base laws Poisson((V-2l)^2/(2D)) and
/// Poisson((V-2l)^2/D), damped by exp(-l^5 V^3/D^2) and exp(-2 l^5 V^3/D^2).
DbpcParams upper_dbpc(double parasites, double vertices, std::uint64_t cutoff);

/// Lower process: same base laws, both damped by exp(-3 l V / D^delta) on
/// 1..l with the leftover mass at zero; delta in (1/2, 1).
DbpcParams lower_dbpc(double parasites, double vertices, std::uint64_t cutoff, double delta);

}  // namespace coopsim
