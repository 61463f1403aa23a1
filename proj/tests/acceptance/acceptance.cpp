// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "coopsim/dbpc.hpp"
#include "coopsim/epidemic.hpp"
#include "coopsim/experiments.hpp"
#include "coopsim/io.hpp"
#include "coopsim/oracles.hpp"
#include "coopsim/rgg.hpp"
#include "coopsim/spatial_index.hpp"

using namespace coopsim;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double hypot_se(double a, double b) { return std::sqrt(a * a + b * b); }

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i) {
    tv += std::abs((i < p.size() ? p[i] : 0.0) - (i < q.size() ? q[i] : 0.0));
  }
  return tv / 2.0;
}

std::vector<double> empirical(const std::vector<std::uint64_t>& xs) {
  std::vector<double> h;
  for (std::uint64_t x : xs) {
    if (x >= h.size()) h.resize(x + 1, 0.0);
    h[x] += 1.0;
  }
  for (double& f : h) f /= static_cast<double>(xs.size());
  return h;
}

SurvivalEstimate survival(const DbpcParams& p, std::uint64_t threshold, std::uint64_t reps, std::uint64_t seed) {
  SurvivalOptions o;
  o.threshold = threshold;
  o.replicates = reps;
  return estimate_survival(p, o, RandomStream(seed));
}

// --- criteria -------------------------------------------------------------

void complete_graph_limit(Verdict& v) {
  ExperimentConfig c;
  c.space.kind = SpaceKind::complete;
  c.space.vertices = 10000;
  c.a_grid = {1.5, 2.0, 2.5};
  c.replicates = 500;
  c.base_seed = 101;
  c.threshold = 10000;
  c.bound_replicates = 10000;
  for (const SweepRow& r : invasion_probability_sweep(c)) {
    const double pooled = hypot_se(r.stderr_, r.pi_upper->stderr_);
    const double gap = std::abs(r.fraction - r.pi_upper->pi_hat);
    v.detail << "a=" << r.a << " fraction " << r.fraction << " pi " << r.pi_upper->pi_hat << "; ";
    v.require(gap <= 0.05 + 3.0 * pooled, "a=" + format_number(r.a));
  }
}

void rgg_sandwich(Verdict& v) {
  ExperimentConfig c;
  c.intensity = 1e5;
  c.beta = 0.7;
  c.a_grid = {1.0, 1.5, 2.0};
  c.replicates = 200;
  c.base_seed = 202;
  c.bound_replicates = 10000;
  for (const SweepRow& r : invasion_probability_sweep(c)) {
    const double sigma = std::sqrt(r.stderr_ * r.stderr_ + r.pi_lower->stderr_ * r.pi_lower->stderr_ +
                                   r.pi_upper->stderr_ * r.pi_upper->stderr_);
    const double lo = r.pi_lower->pi_hat - 3.0 * sigma;
    const double hi = r.pi_upper->pi_hat + 3.0 * sigma;
    v.detail << "a=" << r.a << " " << r.fraction << " in [" << lo << ", " << hi << "]; ";
    v.require(r.fraction >= lo && r.fraction <= hi, "a=" + format_number(r.a));
  }
}

void regimes(Verdict& v) {
  ExperimentConfig c;
  c.intensity = 1e5;
  c.beta = 0.7;
  const double scale = std::sqrt(std::pow(c.intensity, c.beta));
  const double log_n = std::log(c.intensity);
  c.v_grid = {static_cast<std::uint32_t>(std::lround(scale / log_n)),
              static_cast<std::uint32_t>(std::lround(scale * log_n))};
  c.replicates = 200;
  c.base_seed = 303;
  c.bound_replicates = 0;
  const auto rows = invasion_probability_sweep(c);
  v.detail << "v=" << rows[0].v << " fraction " << rows[0].fraction << "; v=" << rows[1].v << " fraction "
           << rows[1].fraction;
  v.require(rows[0].fraction < 0.02, "subcritical");
  v.require(rows[1].fraction > 0.98, "supercritical");
}

void invasion_time_window(Verdict& v) {
  ExperimentConfig c;
  c.intensity = 1e6;
  c.beta = 0.5;
  c.a_grid = {2.0};
  c.replicates = 500;
  c.target_successes = 50;
  c.base_seed = 404;
  const TimeResult r = invasion_time_experiment(c, true);
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const TimeRow& row : r.rows) {
    lo = std::min(lo, row.T);
    hi = std::max(hi, row.T);
  }
  v.detail << r.rows.size() << " successes in " << r.attempts << " attempts, T in [" << lo << ", " << hi << "]";
  v.require(r.prediction.lower == 1000, "lower bound 1000");
  v.require(r.rows.size() == 50, "50 successful replicates");
  v.require(lo >= 1000, "T >= 1000");
  v.require(hi <= 1250, "T <= 1250");
}

void extinction_formula(Verdict& v) {
  const int reps = 100000;
  for (std::uint32_t parasites : {2u, 5u, 10u}) {
    const CompleteGraph g(100);
    EpidemicParams params;
    params.parasites_per_infection = parasites;
    RandomStream base(500 + parasites);
    int extinct = 0;
    for (int i = 0; i < reps; ++i) {
      EpidemicState s = init_epidemic(g, params);
      extinct += step_generation(g, s, params, DestinationTape(base.split(i)())).newly_infected == 0;
    }
    double p = 1.0;
    for (std::uint32_t i = 0; i < parasites; ++i) p *= (99.0 - i) / 99.0;
    const double p_hat = static_cast<double>(extinct) / reps;
    v.detail << "V=" << parasites << " " << p_hat << " vs " << p << "; ";
    v.require(std::abs(p_hat - p) <= 3.0 * std::sqrt(p * (1 - p) / reps), "V=" + std::to_string(parasites));
  }
  const CountedLaw exact = exact_first_generation_law(10, 3);
  v.detail << "D=10 V=3 exact " << exact.counts[0] << "/" << exact.total;
  v.require(exact.counts[0] == 504 && exact.total == 729, "504/729");
}

void oracle_equivalences(Verdict& v) {
  RandomStream rng(606);
  const std::vector<SpaceSpec> spaces{SpaceSpec::cube(1), SpaceSpec::cube(2), SpaceSpec::cube(3), SpaceSpec::sphere2()};
  int mismatched = 0;
  for (int instance = 0; instance < 100; ++instance) {
    const SpaceSpec& space = spaces[instance % spaces.size()];
    const double radius = space.is_sphere() ? 0.02 + 0.5 * rng.uniform01() : 0.01 + 0.3 * rng.uniform01();
    const PointSet ps = sample_point_set(space, 50.0 + 1950.0 * rng.uniform01(), rng);
    const GridIndex index = build_index(ps, radius);
    bool same = true;
    for (std::uint32_t i = 0; i < ps.size() && same; ++i) {
      auto got = index.neighbors_within(i, radius);
      std::sort(got.begin(), got.end());
      std::vector<std::uint32_t> want;
      for (std::uint32_t j = 0; j < ps.size(); ++j)
        if (j != i && distance(space, ps[i], ps[j]) <= radius) want.push_back(j);
      same = got == want;
    }
    mismatched += !same;
  }
  v.detail << "index mismatches " << mismatched << "/100; ";
  v.require(mismatched == 0, "spatial index");

  const DbpcParams table{OffspringLaw::table({0.5, 0.2, 0.3}), OffspringLaw::table({0.6, 0.3, 0.1})};
  RandomStream draws(607);
  std::vector<std::uint64_t> samples;
  for (int i = 0; i < 100000; ++i) samples.push_back(sample_next_size(4, table, draws, SamplingPath::explicit_sum));
  const double tv = total_variation(empirical(samples), exact_dbpc_step_law(table, 4));
  v.detail << "explicit-sum TV " << tv << "; ";
  v.require(tv < 0.01, "explicit sum vs convolution");

  struct Instance {
    std::uint64_t balls, boxes, k, h;
  };
  RandomStream balls_rng(608);
  for (const Instance& in : {Instance{2, 2, 1, 0}, Instance{4, 3, 1, 0}, Instance{4, 3, 2, 1}}) {
    const double p = balls_boxes_event_prob(in.balls, in.boxes, in.k, in.h);
    const int reps = 100000;
    int hits = 0;
    std::vector<int> occ(in.boxes);
    for (int r = 0; r < reps; ++r) {
      std::fill(occ.begin(), occ.end(), 0);
      for (std::uint64_t b = 0; b < in.balls; ++b) ++occ[balls_rng.below(in.boxes)];
      std::uint64_t doubles = 0;
      bool ok = true;
      for (std::uint64_t b = 0; b < in.boxes; ++b) {
        if (occ[b] <= 1) continue;
        if (occ[b] > 2 || b >= in.boxes - in.h) ok = false;
        ++doubles;
      }
      hits += ok && doubles == in.k;
    }
    const double q = static_cast<double>(hits) / reps;
    v.detail << "(" << in.balls << "," << in.boxes << ") " << q << " vs " << p << "; ";
    v.require(std::abs(p - q) <= 3.0 * std::sqrt(p * (1 - p) / reps), "balls into boxes");
  }
}

void dbpc_structure(Verdict& v) {
  std::uint64_t seed = 700;
  const DbpcParams table{OffspringLaw::table({0.5, 0.2, 0.3}), OffspringLaw::table({0.6, 0.3, 0.1})};
  int moment_failures = 0;
  for (const DbpcParams& p : {poisson_dbpc(1.3), table}) {
    for (std::uint64_t k : {1u, 2u, 5u, 10u}) {
      RandomStream rng(++seed);
      const int n = 1000000;
      double sum = 0.0, sum2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto z = static_cast<double>(sample_next_size(k, p, rng));
        sum += z;
        sum2 += z * z;
      }
      const double mean = sum / n;
      const double var = (sum2 - n * mean * mean) / (n - 1);
      const double want_var = one_step_variance(k, p);
      moment_failures += std::abs(mean - one_step_mean(k, p)) > 3.0 * std::sqrt(want_var / n);
      moment_failures += std::abs(var - want_var) / want_var > 0.05;
    }
  }
  v.detail << "moment failures " << moment_failures << "; ";
  v.require(moment_failures == 0, "one-step moments");

  RandomStream rng(710);
  bool absorbing = true;
  for (int i = 0; i < 1000; ++i) {
    absorbing &= dbpc_step(DbpcState::start(0), poisson_dbpc(3.0), rng).current == 0;
    absorbing &= sample_next_size(0, table, rng) == 0;
  }
  v.require(absorbing, "zero absorbing");

  const DbpcParams pairs_always{OffspringLaw::point_mass(0), OffspringLaw::table({0.0, 0.7, 0.3})};
  bool strict = true;
  for (int rep = 0; rep < 200 && strict; ++rep) {
    DbpcState s = DbpcState::start(4);
    while (s.current < 4000 && strict) {
      const DbpcState next = dbpc_step(s, pairs_always, rng);
      strict = next.current > s.current;
      s = next;
    }
  }
  v.require(strict, "strict growth");

  std::vector<SurvivalEstimate> est;
  for (double a : {0.5, 1.0, 1.5, 2.0, 2.5}) est.push_back(survival(poisson_dbpc(a), 100000, 20000, 720));
  bool monotone = true;
  for (std::size_t i = 1; i < est.size(); ++i)
    monotone &= est[i].pi_hat >= est[i - 1].pi_hat - 2.0 * hypot_se(est[i].stderr_, est[i - 1].stderr_);
  v.detail << "pi_hat(0.5..2.5) " << est[0].pi_hat << " " << est[1].pi_hat << " " << est[2].pi_hat << " "
           << est[3].pi_hat << " " << est[4].pi_hat << "; ";
  v.require(monotone, "monotone in a");

  const SurvivalEstimate lo = survival(poisson_dbpc(1.5), 10000, 20000, 730);
  const SurvivalEstimate hi = survival(poisson_dbpc(1.5), 1000000, 20000, 731);
  v.detail << "threshold 1e4 vs 1e6: " << lo.pi_hat << " vs " << hi.pi_hat;
  v.require(std::abs(lo.pi_hat - hi.pi_hat) <= 2.0 * hypot_se(lo.stderr_, hi.stderr_), "threshold insensitivity");
}

void cosame_subset(Verdict& v) {
  RandomStream rng(808);
  std::uint64_t violations = 0;
  int trials = 0;
  std::uint64_t largest = 0;
  for (int attempt = 0; trials < 1000; ++attempt) {
    const SpaceSpec space = attempt % 3 == 0 ? SpaceSpec::cube(1) : attempt % 3 == 1 ? SpaceSpec::cube(2) : SpaceSpec::sphere2();
    const GeometricGraph g = build_rgg(space, 100 + 80 * rng.uniform01(), 0.6, rng);
    if (g.vertex_count() == 0 || g.vertex_count() > 200) continue;
    largest = std::max<std::uint64_t>(largest, g.vertex_count());
    ++trials;
    const DestinationTape tape(rng());
    EpidemicParams full;
    full.parasites_per_infection = 2 + static_cast<std::uint32_t>(rng.below(12));
    EpidemicParams cosame = full;
    cosame.mode = InfectionMode::cosame_only;
    auto recorder = [&g](std::vector<std::vector<HostStatus>>& out) {
      return [&out, &g](const EpidemicState& st) {
        std::vector<HostStatus> snap(g.vertex_count());
        for (VertexId x = 0; x < g.vertex_count(); ++x) snap[x] = st.status(x);
        out.push_back(std::move(snap));
      };
    };
    std::vector<std::vector<HostStatus>> a, b;
    EpidemicState sa = init_epidemic(g, full);
    run_to_absorption(g, sa, full, tape, recorder(a));
    EpidemicState sb = init_epidemic(g, cosame);
    run_to_absorption(g, sb, cosame, tape, recorder(b));
    for (std::size_t gen = 0; gen < b.size(); ++gen) {
      const auto& f = a[std::min(gen, a.size() - 1)];
      for (VertexId x = 0; x < g.vertex_count(); ++x)
        violations += b[gen][x] != HostStatus::susceptible && f[x] == HostStatus::susceptible;
    }
  }
  v.detail << trials << " trials, largest graph " << largest << " vertices, " << violations << " violations";
  v.require(violations == 0, "subset property");
}

void graph_validators(Verdict& v) {
  ExperimentConfig c;
  c.intensity = 1e5;
  c.beta = 0.7;
  c.base_seed = 909;
  const ValidationReport r = validate_graph(c, 100);
  v.detail << "connectivity " << r.connectivity_rate << ", degree band " << r.degree_band_rate;
  v.require(r.connectivity_rate >= 0.99, "connectivity");
  v.require(r.degree_band_rate >= 0.99, "degree band");
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "coopsim");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

void determinism(Verdict& v) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "coopsim_acceptance";
  std::filesystem::create_directories(dir);
  const std::map<std::string, std::vector<std::string>> campaigns = {
      {"sweep", {"sweep", "--intensity", "20000", "--beta", "0.6", "--a", "1", "2", "3", "--replicates", "30"}},
      {"sweep-sphere",
       {"sweep", "--space", "sphere2", "--intensity", "20000", "--beta", "0.6", "--a", "2", "--replicates", "30"}},
      {"time", {"time", "--intensity", "20000", "--beta", "0.5", "--a", "2", "--replicates", "40",
                "--target-successes", "10"}},
      {"wavefront", {"wavefront", "--dimension", "2", "--intensity", "20000", "--beta", "0.6", "--a", "3",
                     "--replicates", "12", "--target-successes", "5"}},
      {"dbpc", {"dbpc", "--a", "1", "2", "--replicates", "3000"}},
      {"validate", {"validate", "--intensity", "20000", "--seeds", "6"}},
  };
  for (const auto& [name, args] : campaigns) {
    std::vector<std::string> contents;
    for (const char* threads : {"1", "3"}) {
      const std::string out = (dir / (name + "_" + threads + ".csv")).string();
      std::vector<std::string> full = args;
      full.insert(full.end(), {"--seed", "1010", "--threads", threads, "--out", out});
      if (invoke(full) != 0) {
        v.require(false, name + " exited nonzero");
        return;
      }
      contents.push_back(read_text_file(out));
    }
    v.detail << name << (contents[0] == contents[1] ? " identical; " : " DIFFERS; ");
    v.require(contents[0] == contents[1] && !contents[0].empty(), name);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"complete-graph limit", complete_graph_limit},
      {"RGG bound sandwich", rgg_sandwich},
      {"sub/supercritical regimes", regimes},
      {"invasion-time window", invasion_time_window},
      {"one-generation extinction formula", extinction_formula},
      {"oracle equivalences", oracle_equivalences},
      {"DBPC structural suite", dbpc_structure},
      {"CoSame-only subset property", cosame_subset},
      {"graph validators", graph_validators},
      {"determinism across thread counts", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::cout << "criterion " << std::setw(2) << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat
              << "  " << v.detail.str() << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
