#include "coopsim/dbpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coopsim/errors.hpp"
#include "coopsim/parallel.hpp"

namespace coopsim {
namespace {

double poisson_pmf(double lambda, std::uint64_t k) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

std::uint64_t draw_poisson(double mean, RandomStream& rng) {
  if (mean <= 0.0) return 0;
  if (mean > 1e15) throw explosion_error("Poisson mean too large to sample");
  std::poisson_distribution<std::int64_t> dist(mean);
  return static_cast<std::uint64_t>(dist(rng));
}

// Sum of `count` i.i.d. draws from `law`.
std::uint64_t sum_of_draws(const OffspringLaw& law, std::uint64_t count, RandomStream& rng, bool fold_poisson) {
  if (count == 0) return 0;
  if (fold_poisson && law.is_poisson()) return draw_poisson(static_cast<double>(count) * law.lambda(), rng);
  if (count > kExplosionPairs) throw explosion_error("explicit DBPC sum exceeds the explosion guard");
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < count; ++i) total += law.sample(rng);
  return total;
}

}  // namespace

OffspringLaw OffspringLaw::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw invalid_argument("Poisson rate must be nonnegative");
  return OffspringLaw(Poisson{lambda});
}

OffspringLaw OffspringLaw::table(std::vector<double> weights) {
  if (weights.empty()) throw invalid_argument("empty weight table");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw invalid_argument("negative weight in table law");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw invalid_argument("table weights do not sum to 1");
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  cumulative.back() = 1.0;
  return OffspringLaw(Table{std::move(weights), std::move(cumulative)});
}

OffspringLaw OffspringLaw::point_mass(std::uint64_t value) {
  std::vector<double> w(value + 1, 0.0);
  w[value] = 1.0;
  return table(std::move(w));
}

double OffspringLaw::lambda() const {
  if (!is_poisson()) throw invalid_argument("not a Poisson law");
  return std::get<Poisson>(law_).lambda;
}

const std::vector<double>& OffspringLaw::weights() const {
  if (is_poisson()) throw invalid_argument("not a table law");
  return std::get<Table>(law_).weights;
}

double OffspringLaw::mean() const {
  if (is_poisson()) return lambda();
  const auto& w = weights();
  double m = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) m += static_cast<double>(k) * w[k];
  return m;
}

double OffspringLaw::variance() const {
  if (is_poisson()) return lambda();
  const auto& w = weights();
  const double m = mean();
  double v = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) v += (static_cast<double>(k) - m) * (static_cast<double>(k) - m) * w[k];
  return v;
}

double OffspringLaw::pmf(std::uint64_t k) const {
  if (is_poisson()) return poisson_pmf(lambda(), k);
  const auto& w = weights();
  return k < w.size() ? w[k] : 0.0;
}

std::uint64_t OffspringLaw::sample(RandomStream& rng) const {
  if (is_poisson()) return draw_poisson(lambda(), rng);
  const auto& cumulative = std::get<Table>(law_).cumulative;
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                             static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

DbpcParams poisson_dbpc(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw invalid_argument("a must be positive");
  return {OffspringLaw::poisson(a * a / 2.0), OffspringLaw::poisson(a * a)};
}

std::uint64_t sample_next_size(std::uint64_t k, const DbpcParams& params, RandomStream& rng, SamplingPath path) {
  if (k == 0) return 0;
  const std::uint64_t pairs = pairs_of(k);
  const bool fold = path == SamplingPath::automatic;
  if (fold && params.offspring.is_poisson() && params.cooperation.is_poisson()) {
    const double mean = static_cast<double>(k) * params.offspring.lambda() +
                        static_cast<double>(pairs) * params.cooperation.lambda();
    return draw_poisson(mean, rng);
  }
  const std::uint64_t offspring = sum_of_draws(params.offspring, k, rng, fold);
  return offspring + sum_of_draws(params.cooperation, pairs, rng, fold);
}

DbpcState dbpc_step(const DbpcState& state, const DbpcParams& params, RandomStream& rng) {
  DbpcState next = state;
  next.generation += 1;
  next.current = sample_next_size(state.current, params, rng);
  next.cumulative += next.current;
  return next;
}

double one_step_mean(std::uint64_t k, const DbpcParams& params) {
  return static_cast<double>(k) * params.offspring.mean() +
         static_cast<double>(pairs_of(k)) * params.cooperation.mean();
}

double one_step_variance(std::uint64_t k, const DbpcParams& params) {
  return static_cast<double>(k) * params.offspring.variance() +
         static_cast<double>(pairs_of(k)) * params.cooperation.variance();
}

namespace {

bool needs_explicit_sum(const DbpcParams& params) {
  return !params.offspring.is_poisson() || !params.cooperation.is_poisson();
}

void validate(const SurvivalOptions& options) {
  if (options.threshold < 2) throw invalid_argument("survival threshold must be at least 2");
  if (options.replicates < 1) throw invalid_argument("at least one replicate is required");
  if (options.z0 < 1) throw invalid_argument("z0 must be positive");
}

}  // namespace

ReplicateFate run_survival_replicate(const DbpcParams& params, const SurvivalOptions& options, RandomStream rng) {
  DbpcState state = DbpcState::start(options.z0);
  const bool guard = needs_explicit_sum(params);
  while (true) {
    if (state.current == 0) return ReplicateFate::died;
    if (state.current >= options.threshold) return ReplicateFate::survived;
    if (state.generation >= options.generation_cap) return ReplicateFate::undecided;
    if (guard && std::max(pairs_of(state.current), state.current) > kExplosionPairs) return ReplicateFate::survived;
    state = dbpc_step(state, params, rng);
  }
}

SurvivalEstimate estimate_survival(const DbpcParams& params, const SurvivalOptions& options, const RandomStream& rng) {
  validate(options);
  std::vector<ReplicateFate> fates(options.replicates);
  parallel_for(fates.size(), options.threads,
               [&](std::size_t i) { fates[i] = run_survival_replicate(params, options, rng.split(i)); });
  SurvivalEstimate est;
  for (ReplicateFate f : fates) {
    switch (f) {
      case ReplicateFate::died: ++est.died; break;
      case ReplicateFate::survived: ++est.survived; break;
      case ReplicateFate::undecided: ++est.undecided; break;
    }
  }
  const std::uint64_t decided = est.survived + est.died;
  if (decided == 0) {
    est.pi_hat = est.stderr_ = std::numeric_limits<double>::quiet_NaN();
  } else {
    est.pi_hat = static_cast<double>(est.survived) / static_cast<double>(decided);
    est.stderr_ = std::sqrt(est.pi_hat * (1.0 - est.pi_hat) / static_cast<double>(decided));
  }
  return est;
}

OffspringLaw truncated_reweighted_law(double base_lambda, std::uint64_t cutoff, double damping, TailPolicy policy) {
  if (!(base_lambda >= 0.0) || !std::isfinite(base_lambda)) throw invalid_argument("base rate must be nonnegative");
  if (cutoff < 1) throw invalid_argument("cutoff must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw invalid_argument("damping must lie in (0,1]");
  const bool upper = policy == TailPolicy::mass_at_cutoff_plus_one;
  std::vector<double> w(upper ? cutoff + 2 : cutoff + 1, 0.0);
  double sum = 0.0;
  for (std::uint64_t j = upper ? 0 : 1; j <= cutoff; ++j) {
    w[j] = poisson_pmf(base_lambda, j) * damping;
    sum += w[j];
  }
  const double rest = std::max(0.0, 1.0 - sum);
  if (upper) {
    w[cutoff + 1] = rest;
  } else {
    w[0] = rest;
  }
  return OffspringLaw::table(std::move(w));
}

DbpcParams upper_dbpc(double parasites, double vertices, std::uint64_t cutoff) {
  if (!(vertices > 0.0) || !(parasites > 0.0)) throw invalid_argument("V and D must be positive");
  const double l = static_cast<double>(cutoff);
  const double spread = (parasites - 2.0 * l) * (parasites - 2.0 * l);
  const double penalty = std::pow(l, 5) * std::pow(parasites, 3) / (vertices * vertices);
  return {truncated_reweighted_law(spread / (2.0 * vertices), cutoff, std::exp(-penalty), TailPolicy::mass_at_cutoff_plus_one),
          truncated_reweighted_law(spread / vertices, cutoff, std::exp(-2.0 * penalty), TailPolicy::mass_at_cutoff_plus_one)};
}

DbpcParams lower_dbpc(double parasites, double vertices, std::uint64_t cutoff, double delta) {
  if (!(vertices > 0.0) || !(parasites > 0.0)) throw invalid_argument("V and D must be positive");
  if (!(delta > 0.5 && delta < 1.0)) throw invalid_argument("delta must lie in (1/2, 1)");
  const double l = static_cast<double>(cutoff);
  const double spread = (parasites - 2.0 * l) * (parasites - 2.0 * l);
  const double damping = std::exp(-3.0 * l * parasites / std::pow(vertices, delta));
  return {truncated_reweighted_law(spread / (2.0 * vertices), cutoff, damping, TailPolicy::mass_at_zero),
          truncated_reweighted_law(spread / vertices, cutoff, damping, TailPolicy::mass_at_zero)};
}

}  // namespace coopsim
