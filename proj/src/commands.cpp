#include "graphex/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <new>
#include <thread>

#include "graphex/asymptotics.hpp"
#include "graphex/errors.hpp"
#include "graphex/io.hpp"
#include "graphex/rng.hpp"

namespace graphex {

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ResourceError*>(&error) || dynamic_cast<const std::bad_alloc*>(&error)) {
    return kExitResource;
  }
  if (dynamic_cast<const IoError*>(&error)) return kExitIo;
  return kExitConfig;
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t alpha_index,
                             std::uint64_t replicate_index) {
  return derive_key(master_seed, {alpha_index, replicate_index});
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&]() {
    for (std::size_t k = next++; k < n && !failed; k = next++) {
      try {
        fn(k);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ModelSample sample_model(const ModelConfig& config, double alpha, std::uint64_t seed,
                         double delta, bool fast, const SamplerOptions& options) {
  ModelSample s;
  if (config.kind == ModelKind::LocalGlobal) {
    SparseSbmModel model = make_sbm_model(config);
    s.lg = sample_lg_graph(model, alpha, seed, delta, options);
    s.graph = s.lg->graph;
    return s;
  }
  GraphonModel model = make_model(config);
  if (fast && has_separable_envelope(model.kind())) {
    s.graph = sample_graph_separable(model, alpha, seed, delta, options);
  } else {
    s.graph = sample_graph_naive(model, alpha, seed, delta, options);
  }
  return s;
}

GraphStats cmd_sample(const SampleRequest& request) {
  SamplerOptions options;
  options.threads = request.threads;
  ModelSample s = sample_model(request.model, request.alpha, request.seed, request.delta,
                               request.fast, options);
  write_graph_bundle(request.out, s.graph, s.lg ? &*s.lg : nullptr);
  return summarize(s.graph);
}

namespace {

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

SweepResult run_sweep(const SweepRequest& request) {
  if (request.alphas.empty()) throw ValidationError("sweep needs at least one alpha");
  if (request.reps == 0) throw ValidationError("sweep needs at least one replicate");
  for (double a : request.alphas) validate_sampling_args(a, request.delta);

  SweepResult result;
  result.metadata.model_digest = config_digest(request.model);
  result.metadata.delta = request.delta;
  result.metadata.master_seed = request.master_seed;
  result.metadata.timestamp = utc_timestamp();

  const std::size_t reps = request.reps;
  result.rows.resize(request.alphas.size() * reps);
  SamplerOptions options;
  parallel_for(result.rows.size(), request.threads, [&](std::size_t task) {
    std::size_t a = task / reps;
    auto r = static_cast<std::uint32_t>(task % reps);
    std::uint64_t seed = replicate_seed(request.master_seed, a, r);
    ModelSample s = sample_model(request.model, request.alphas[a], seed, request.delta,
                                 request.fast, options);
    result.rows[task] = make_sweep_row(request.alphas[a], r, seed, s.graph.n_latent,
                                       summarize(s.graph));
  });
  return result;
}

SweepResult cmd_sweep(const SweepRequest& request) {
  SweepResult result = run_sweep(request);
  write_sweep(request.out, result);
  return result;
}

namespace {

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

template <class Fn>
Moments moments(const std::vector<SweepRow>& rows, Fn&& value) {
  Moments m;
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) m.mean += value(r);
  m.mean /= n;
  double ss = 0.0;
  for (const auto& r : rows) ss += (value(r) - m.mean) * (value(r) - m.mean);
  m.se = n > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return m;
}

class Checklist {
 public:
  void add(const std::string& name, bool passed, double value, double target,
           double tolerance, const std::string& detail = {}) {
    nlohmann::json c = {{"name", name},   {"passed", passed},       {"value", value},
                        {"target", target}, {"tolerance", tolerance}};
    if (!detail.empty()) c["detail"] = detail;
    checks_.push_back(std::move(c));
    all_ &= passed;
  }
  void within_se(const std::string& name, const Moments& m, double target, double k = 3.0) {
    double tol = k * m.se;
    add(name, std::abs(m.mean - target) <= tol, m.mean, target, tol, "mean within 3 SE");
  }
  nlohmann::json json() const { return checks_; }
  bool passed() const { return all_; }

 private:
  nlohmann::json checks_ = nlohmann::json::array();
  bool all_ = true;
};

std::vector<SweepRow> rows_at(const SweepResult& sweep, double alpha) {
  std::vector<SweepRow> out;
  for (const auto& r : sweep.rows) {
    if (r.alpha == alpha) out.push_back(r);
  }
  return out;
}

double deg_fraction(const SweepRow& r, std::size_t j) {
  return r.n_nodes ? static_cast<double>(r.degree_counts[j - 1]) / r.n_nodes : 0.0;
}

}  // namespace

VerifyReport run_verify(const VerifyRequest& request) {
  const std::vector<double> grid = {50.0, 100.0, 200.0, 400.0};
  Checklist checks;
  SweepRequest base;
  base.model = request.model;
  base.master_seed = request.seed;
  base.delta = request.delta;
  base.fast = true;
  base.threads = request.threads;

  SweepRequest law = base;
  law.alphas = {50.0};
  law.reps = request.reps;
  SweepResult law_rows = run_sweep(law);
  auto edges = moments(law_rows.rows, [](const SweepRow& r) { return double(r.n_edges); });
  auto nodes = moments(law_rows.rows, [](const SweepRow& r) { return double(r.n_nodes); });

  SweepRequest trend = base;
  trend.alphas = grid;
  trend.reps = 10;
  trend.master_seed = request.seed + 1;
  SweepResult trend_rows = run_sweep(trend);
  auto summary = summarize_by_alpha(trend_rows);

  if (request.model.kind == ModelKind::LocalGlobal) {
    SparseSbmModel model = make_sbm_model(request.model);
    checks.within_se("edge_count_mean_alpha50", edges, lg_expected_edges(model, 50.0));
    checks.within_se("node_count_mean_alpha50", nodes, lg_expected_nodes(model, 50.0).exact);
    auto big = lg_expected_nodes(model, 1e4);
    double ratio = big.exact / big.asymptotic;
    checks.add("node_count_asymptotic_ratio_alpha1e4", std::abs(ratio - 1.0) <= 0.1, ratio,
               1.0, 0.1);
    double sigma = model.eta().tail_profile().sigma;
    if (sigma > 0.0 && sigma < 1.0) {
      for (std::size_t j = 1; j <= 2; ++j) {
        auto m = moments(rows_at(trend_rows, 400.0),
                         [j](const SweepRow& r) { return deg_fraction(r, j); });
        double target = asymptotic_degree_fraction(sigma, j);
        checks.add("degree" + std::to_string(j) + "_fraction_alpha400",
                   std::abs(m.mean - target) <= 0.07, m.mean, target, 0.07);
      }
    }
  } else {
    GraphonModel model = make_model(request.model);
    TailProfile profile = model.tail_profile();
    checks.within_se("edge_count_mean_alpha50", edges, expected_edges_exact(model, 50.0));
    checks.within_se("node_count_mean_alpha50", nodes, expected_nodes_exact(model, 50.0));

    double t = profile.regime == Regime::AlmostExtremelySparse ? 1e8 : 1e6;
    double tol = profile.regime == Regime::AlmostExtremelySparse ? 0.10
                 : profile.regime == Regime::AlmostDense          ? 0.05
                                                                  : 0.02;
    double tr = tauberian_ratio(model, t);
    checks.add("tauberian_ratio", std::abs(tr - 1.0) <= tol, tr, 1.0, tol);

    RegimeClassification cls = classify_regime(trend_rows);
    checks.add("regime", cls.regime == profile.regime, static_cast<double>(cls.regime),
               static_cast<double>(profile.regime), 0.0,
               std::string("classified ") + std::string(to_string(cls.regime)) +
                   ", expected " + std::string(to_string(profile.regime)));

    switch (profile.regime) {
      case Regime::SparsePowerLaw: {
        SweepRequest deg = base;
        deg.alphas = {300.0};
        deg.reps = 20;
        deg.master_seed = request.seed + 2;
        SweepResult deg_rows = run_sweep(deg);
        double en = expected_nodes_exact(model, 300.0);
        const double tols[] = {0.05, 0.04};
        for (std::size_t j = 1; j <= 2; ++j) {
          auto m = moments(deg_rows.rows, [j](const SweepRow& r) { return deg_fraction(r, j); });
          double target = expected_degree_count_exact(model, 300.0, j) / en;
          checks.add("degree" + std::to_string(j) + "_fraction_alpha300",
                     std::abs(m.mean - target) <= tols[j - 1], m.mean, target, tols[j - 1],
                     "limit " + format_double(asymptotic_degree_fraction(profile.sigma, j)));
        }
        bool decreasing = true;
        for (std::size_t k = 0; k < summary.size(); ++k) {
          double a = summary[k].alpha;
          double oracle =
              sigma_hat(expected_nodes_exact(model, a), expected_edges_exact(model, a));
          checks.add("sigma_hat_alpha" + format_double(a),
                     std::abs(summary[k].mean_sigma_hat - oracle) <= 0.05,
                     summary[k].mean_sigma_hat, oracle, 0.05);
          if (k > 0 && !(summary[k].mean_sigma_hat < summary[k - 1].mean_sigma_hat)) {
            decreasing = false;
          }
        }
        checks.add("sigma_hat_decreasing", decreasing, decreasing ? 1.0 : 0.0, 1.0, 0.0);
        break;
      }
      case Regime::AlmostExtremelySparse: {
        bool increasing = true;
        for (std::size_t k = 1; k < summary.size(); ++k) {
          if (!(summary[k].degree1_fraction > summary[k - 1].degree1_fraction)) {
            increasing = false;
          }
        }
        checks.add("degree1_fraction_increasing", increasing, increasing ? 1.0 : 0.0, 1.0, 0.0);
        double last = summary.back().degree1_fraction;
        checks.add("degree1_fraction_alpha400", last >= 0.75, last, 0.75, 0.0, "lower bound");
        break;
      }
      case Regime::Dense: {
        double target = 0.5 * model.total_mass() * profile.ell_star(2.0);
        double value = summary.back().mean_edges /
                       (summary.back().mean_nodes * summary.back().mean_nodes);
        checks.add("edge_density_alpha400", std::abs(value / target - 1.0) <= 0.15, value,
                   target, 0.15, "relative");
        break;
      }
      case Regime::AlmostDense: {
        bool decreasing = true;
        for (std::size_t k = 1; k < summary.size(); ++k) {
          if (!(summary[k].degree1_fraction < summary[k - 1].degree1_fraction)) {
            decreasing = false;
          }
        }
        checks.add("degree1_fraction_decreasing", decreasing, decreasing ? 1.0 : 0.0, 1.0,
                   0.0);
        break;
      }
    }
  }

  VerifyReport report;
  report.passed = checks.passed();
  report.doc = {{"model", to_json(request.model)},
                {"replicates", request.reps},
                {"seed", request.seed},
                {"delta", request.delta},
                {"checks", checks.json()},
                {"passed", report.passed}};
  return report;
}

VerifyReport cmd_verify(const VerifyRequest& request) {
  VerifyReport report = run_verify(request);
  if (request.out.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(request.out.parent_path(), ec);
  }
  write_json(request.out, report.doc);
  return report;
}

}  // namespace graphex
