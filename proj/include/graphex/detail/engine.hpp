#pragma once

// Sampling engines shared by plain graphons and the block-structured model.
// Coordinates are carried both as x and as s = log1p(x), so that the cell
// sampler can reach truncation levels beyond the range of a double.
// A kernel supplies:
//   double log_envelope(double s) const;  non-increasing log g at x = expm1(s),
//                                         with W <= scale g(x) g(y), g <= 1
//   double scale() const;
//   bool has_mark() const;                draws an extra U(0,1) coordinate
//   double edge(const Atom&, const Atom&) const;      probability, from x
//   double self(const Atom&) const;
//   double log_edge(const Atom&, const Atom&) const;  log probability, from s
//   double log_self(const Atom&) const;                and Atom::log_g

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "graphex/errors.hpp"
#include "graphex/rng.hpp"
#include "graphex/sampler.hpp"

namespace graphex::detail {

struct Atom {
  double theta = 0.0;
  double x = 0.0;  // +inf when beyond double range
  double s = 0.0;  // log1p(x)
  double mark = 0.0;
  double log_g = 0.0;  // log envelope at s; set by the cell sampler only
};

struct RawGraph {
  std::vector<Atom> atoms;  // retained only, sorted by s
  std::vector<Edge> edges;  // sorted, i <= j
  double n_latent = 0.0;
};

enum StreamTag : std::uint64_t {
  kLatent = 0,
  kPair = 1,
  kHeavyCount = 2,
  kHeavyAtoms = 3,
  kHeavyPair = 4,
  kHeavySelf = 5,
  kHeavyLight = 6,
  kCellCount = 7,
  kCellAtom = 8,
  kLightPair = 9,
  kLightSelf = 10,
  kSkipRow = 11,
};

/// Keeps atoms with at least one edge, orders them by s and relabels.
/// Repeated edges are merged.
inline RawGraph finalize(std::vector<Atom> atoms, std::vector<Edge> edges,
                         double n_latent) {
  std::vector<std::uint32_t> degree(atoms.size(), 0);
  for (const auto& e : edges) {
    degree[e.i] = 1;
    degree[e.j] = 1;
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t a = 0; a < atoms.size(); ++a) {
    if (degree[a]) order.push_back(a);
  }
  std::sort(order.begin(), order.end(), [&](std::uint32_t l, std::uint32_t r) {
    if (atoms[l].s != atoms[r].s) return atoms[l].s < atoms[r].s;
    return l < r;
  });
  std::vector<std::uint32_t> relabel(atoms.size(), 0);
  RawGraph out;
  out.n_latent = n_latent;
  out.atoms.reserve(order.size());
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    relabel[order[k]] = k;
    out.atoms.push_back(atoms[order[k]]);
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(edges.size());
  for (const auto& e : edges) {
    std::uint64_t a = relabel[e.i];
    std::uint64_t b = relabel[e.j];
    keys.push_back(a < b ? (a << 32) | b : (b << 32) | a);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  out.edges.reserve(keys.size());
  for (std::uint64_t k : keys) {
    out.edges.push_back({static_cast<std::uint32_t>(k >> 32),
                         static_cast<std::uint32_t>(k & 0xffffffffULL)});
  }
  return out;
}

inline void check_capacity(double count, const SamplerOptions& options,
                           const char* what) {
  if (!std::isfinite(count) || count > static_cast<double>(options.max_points) || count > 4.0e9) {
    throw ResourceError(std::string(what) + " needs " + std::to_string(count) +
                        " latent points, above the cap of " +
                        std::to_string(options.max_points) +
                        " (set GRAPHEX_MAX_POINTS or use the fast sampler)");
  }
}

template <class Kernel>
RawGraph sample_naive(const Kernel& kernel, double alpha, double v_max,
                      std::uint64_t seed, const SamplerOptions& options) {
  check_capacity(alpha * v_max, options, "naive sampling");
  CounterStream latent(seed, {kLatent});
  double count = latent.poisson(alpha * v_max);
  check_capacity(count, options, "naive sampling");
  auto n = static_cast<std::uint32_t>(count);
  std::vector<Atom> atoms(n);
  for (auto& a : atoms) {
    a.theta = alpha * latent.uniform();
    a.x = v_max * latent.uniform();
    a.s = std::log1p(a.x);
    if (kernel.has_mark()) a.mark = latent.uniform();
    if constexpr (requires { kernel.prepare(a); }) kernel.prepare(a);
  }

  // Rows are grouped into blocks of similar pair counts; blocks are merged in
  // order so the result does not depend on the thread count.
  std::vector<std::uint32_t> bounds{0};
  unsigned threads = std::max(1u, options.threads);
  double total_pairs = 0.5 * static_cast<double>(n) * (n + 1.0);
  double per_block = std::max(1.0, total_pairs / (8.0 * threads));
  double acc = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc += static_cast<double>(n - i);
    if (acc >= per_block) {
      bounds.push_back(i + 1);
      acc = 0.0;
    }
  }
  if (bounds.back() != n) bounds.push_back(n);

  std::size_t blocks = bounds.size() - 1;
  std::vector<std::vector<Edge>> found(blocks);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t b = next++; b < blocks; b = next++) {
      auto& out = found[b];
      for (std::uint32_t i = bounds[b]; i < bounds[b + 1]; ++i) {
        const Atom& ai = atoms[i];
        if (CounterStream(seed, {kPair, i, i}).uniform() < kernel.self(ai)) {
          out.push_back({i, i});
        }
        for (std::uint32_t j = i + 1; j < n; ++j) {
          if (CounterStream(seed, {kPair, i, j}).uniform() < kernel.edge(ai, atoms[j])) {
            out.push_back({i, j});
          }
        }
      }
    }
  };
  if (threads == 1 || blocks <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<Edge> edges;
  for (auto& part : found) edges.insert(edges.end(), part.begin(), part.end());
  return finalize(std::move(atoms), std::move(edges), count);
}

/// Lazy cell sampler, working in s = log1p(x).
///
/// Atoms with envelope above g_cut are drawn explicitly. The remaining range is
/// split into cells on which the envelope varies by at most a fixed ratio; a
/// cell stores only its Poisson count, and an atom (cell, index) gets its
/// coordinates from a dedicated stream when first touched. Edges among light
/// atoms and between heavy and light atoms come from Poisson proposals at an
/// envelope rate, thinned so that a pair is joined with probability W.
template <class Kernel>
class CellSampler {
 public:
  static constexpr double kHeavyCut = 0.5;
  static constexpr double kCellRatio = 0.8;
  static constexpr double kMinWidth = 1e-3;
  // Above this mean a cell count is set to its mean plus a Gaussian term.
  static constexpr double kLogExactPoisson = 34.0;
  static constexpr double kDenseRegistry = 4.0e6;
  static constexpr std::uint32_t kUnset = 0xffffffffU;

  CellSampler(const Kernel& kernel, double alpha, double s_max, std::uint64_t seed,
              const SamplerOptions& options)
      : k_(kernel), alpha_(alpha), s_max_(s_max), seed_(seed), options_(options) {}

  RawGraph run() {
    build_heavy();
    build_cells();
    heavy_heavy();
    heavy_light();
    light_light();
    light_self();
    std::vector<Edge> list;
    list.reserve(edges_.size());
    for (std::uint64_t key : edges_) {
      list.push_back({static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(key & 0xffffffffULL)});
    }
    return finalize(std::move(atoms_), std::move(list), n_latent_);
  }

 private:
  struct Cell {
    double lo;         // in s
    double hi;
    double count;      // may be +inf when the count exceeds double range
    double log_count;
    double log_g;      // log envelope at lo, an upper bound on the cell
    double weight;     // count * g
  };

  struct AtomKey {
    std::uint32_t cell;
    std::uint64_t index;
    bool operator==(const AtomKey&) const = default;
  };
  struct AtomKeyHash {
    std::size_t operator()(const AtomKey& key) const {
      return mix64(key.index ^ (static_cast<std::uint64_t>(key.cell) << 40));
    }
  };

  double log_g(double s) const { return k_.log_envelope(s); }

  // Smallest s in [lo, hi] with log g(s) <= level.
  double first_below(double level, double lo, double hi) const {
    if (log_g(lo) <= level) return lo;
    if (log_g(hi) > level) return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
      double mid = 0.5 * (lo + hi);
      if (log_g(mid) <= level) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

  void build_heavy() {
    s_heavy_ = first_below(std::log(kHeavyCut), 0.0, s_max_);
    double x_heavy = std::expm1(s_heavy_);
    CounterStream count_stream(seed_, {kHeavyCount});
    check_capacity(alpha_ * x_heavy, options_, "heavy region");
    double count = count_stream.poisson(alpha_ * x_heavy);
    check_capacity(count, options_, "heavy region");
    n_heavy_ = static_cast<std::uint32_t>(count);
    n_latent_ = count;
    CounterStream s(seed_, {kHeavyAtoms});
    atoms_.resize(n_heavy_);
    heavy_log_g_.resize(n_heavy_);
    for (std::uint32_t i = 0; i < n_heavy_; ++i) {
      Atom& a = atoms_[i];
      a.theta = alpha_ * s.uniform();
      a.x = x_heavy * s.uniform();
      a.s = std::log1p(a.x);
      if (k_.has_mark()) a.mark = s.uniform();
      a.log_g = log_g(a.s);
      heavy_log_g_[i] = a.log_g;
    }
  }

  void build_cells() {
    const double log_alpha = std::log(alpha_);
    double lo = s_heavy_;
    while (lo < s_max_) {
      double lg_lo = log_g(lo);
      if (lg_lo == -INFINITY || std::isnan(lg_lo)) break;
      double min_end = std::min(s_max_, lo + kMinWidth);
      double hi = std::max(min_end, first_below(lg_lo + std::log(kCellRatio), lo, s_max_));
      if (!(hi > lo)) break;
      auto c = static_cast<std::uint32_t>(cells_.size());
      // Lebesgue measure of the cell in x is e^lo * expm1(hi - lo).
      double log_mean = log_alpha + lo + std::log(std::expm1(hi - lo));
      CounterStream cs(seed_, {kCellCount, c});
      Cell cell{lo, hi, 0.0, 0.0, lg_lo, 0.0};
      if (log_mean < kLogExactPoisson) {
        cell.count = cs.poisson(std::exp(log_mean));
        cell.log_count = cell.count > 0.0 ? std::log(cell.count) : -INFINITY;
      } else {
        cell.log_count = log_mean + std::log1p(cs.normal() * std::exp(-0.5 * log_mean));
        cell.count = std::exp(cell.log_count);
      }
      cell.weight = cell.count > 0.0 ? std::exp(cell.log_count + lg_lo) : 0.0;
      cells_.push_back(cell);
      n_latent_ += cell.count;
      lo = hi;
    }
    prefix_.assign(cells_.size() + 1, 0.0);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      prefix_[c + 1] = prefix_[c] + cells_[c].weight;
    }
    // With few light atoms a flat table replaces the hash registry.
    double light = 0.0;
    for (const Cell& cell : cells_) light += cell.count;
    if (light <= kDenseRegistry) {
      offsets_.assign(cells_.size() + 1, 0);
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        offsets_[c + 1] = offsets_[c] + static_cast<std::uint64_t>(cells_[c].count);
      }
      dense_ids_.assign(offsets_.back(), kUnset);
      dense_atoms_.resize(offsets_.back());
      dense_made_.assign(offsets_.back(), 0);
    }
  }

  Atom cell_atom(std::uint32_t c, std::uint64_t index) {
    if (!dense_ids_.empty()) {
      std::uint64_t slot = offsets_[c] + index;
      if (!dense_made_[slot]) {
        dense_atoms_[slot] = make_cell_atom(c, index);
        dense_made_[slot] = 1;
      }
      return dense_atoms_[slot];
    }
    return make_cell_atom(c, index);
  }

  Atom make_cell_atom(std::uint32_t c, std::uint64_t index) const {
    const Cell& cell = cells_[c];
    CounterStream s(seed_, {kCellAtom, c, index});
    Atom a;
    a.theta = alpha_ * s.uniform();
    // Uniform in x over the cell, expressed in s.
    a.s = std::min(cell.hi, cell.lo + std::log1p(s.uniform() * std::expm1(cell.hi - cell.lo)));
    if (k_.has_mark()) a.mark = s.uniform();
    a.log_g = log_g(a.s);
    return a;  // x is filled in once the atom is retained
  }

  static bool countable(const Cell& cell) { return cell.count < 1.8e19; }

  static std::uint64_t pick_index(CounterStream& s, const Cell& cell) {
    if (countable(cell)) return s.below(static_cast<std::uint64_t>(cell.count));
    return s.next_u64();  // collisions have negligible probability here
  }

  // Cell index c >= first with prefix_[c] <= value < prefix_[c + 1].
  std::uint32_t locate(double value, std::uint32_t first) const {
    auto it = std::upper_bound(prefix_.begin() + first + 1, prefix_.end(), value);
    auto c = static_cast<std::uint32_t>(it - prefix_.begin()) - 1;
    c = std::min<std::uint32_t>(c, static_cast<std::uint32_t>(cells_.size()) - 1);
    while (cells_[c].weight == 0.0 && c > first) --c;
    while (cells_[c].weight == 0.0 && c + 1 < cells_.size()) ++c;
    return c;
  }

  std::uint32_t intern(std::uint32_t c, std::uint64_t index, const Atom& atom) {
    if (!dense_ids_.empty()) {
      std::uint32_t& id = dense_ids_[offsets_[c] + index];
      if (id == kUnset) {
        id = static_cast<std::uint32_t>(atoms_.size());
        atoms_.push_back(atom);
        atoms_.back().x = std::expm1(atom.s);
      }
      return id;
    }
    auto [it, inserted] =
        registry_.try_emplace(AtomKey{c, index}, static_cast<std::uint32_t>(atoms_.size()));
    if (inserted) {
      if (atoms_.size() >= 0xfffffff0ULL) throw ResourceError("too many retained atoms");
      atoms_.push_back(atom);
      atoms_.back().x = std::expm1(atom.s);
    }
    return it->second;
  }

  void add_edge(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    edges_.push_back((static_cast<std::uint64_t>(a) << 32) | b);
  }

  // P(at least one accepted proposal) = W when proposals at rate
  // exp(log_bound) are kept with probability -log(1 - W) / exp(log_bound).
  static double acceptance(double log_w, double log_bound) {
    if (log_w == -INFINITY) return 0.0;
    double w = std::exp(log_w);
    if (w >= 1.0) return INFINITY;
    double hazard_ratio = w > 0.0 ? -std::log1p(-w) / w : 1.0;
    return hazard_ratio * std::exp(log_w - log_bound);
  }

  void heavy_heavy() {
    for (std::uint32_t i = 0; i < n_heavy_; ++i) {
      if (CounterStream(seed_, {kHeavySelf, i}).uniform() < k_.self(atoms_[i])) {
        add_edge(i, i);
      }
      for (std::uint32_t j = i + 1; j < n_heavy_; ++j) {
        if (CounterStream(seed_, {kHeavyPair, i, j}).uniform() <
            k_.edge(atoms_[i], atoms_[j])) {
          add_edge(i, j);
        }
      }
    }
  }

  void heavy_light() {
    if (cells_.empty()) return;
    const double total = prefix_.back();
    if (!(total > 0.0)) return;
    const double log_kappa_scale =
        std::log(k_.scale() / (1.0 - k_.scale() * kHeavyCut));
    for (std::uint32_t i = 0; i < n_heavy_; ++i) {
      double log_bound_i = log_kappa_scale + heavy_log_g_[i];
      if (log_bound_i == -INFINITY) continue;
      CounterStream s(seed_, {kHeavyLight, i});
      double proposals = s.poisson(std::exp(log_bound_i) * total);
      for (double p = 0; p < proposals; p += 1.0) {
        std::uint32_t c = locate(s.uniform() * total, 0);
        std::uint64_t index = pick_index(s, cells_[c]);
        Atom other = cell_atom(c, index);
        double accept = acceptance(k_.log_edge(atoms_[i], other), log_bound_i + cells_[c].log_g);
        if (s.uniform() < accept) add_edge(i, intern(c, index, other));
      }
    }
  }

  void light_light() {
    const double rate_scale = k_.scale() / (1.0 - k_.scale() * kHeavyCut * kHeavyCut);
    const double log_rate_scale = std::log(rate_scale);
    const auto n_cells = static_cast<std::uint32_t>(cells_.size());
    for (std::uint32_t c = 0; c < n_cells; ++c) {
      const Cell& cell = cells_[c];
      if (cell.weight == 0.0) continue;
      double g_c = std::exp(cell.log_g);
      double later = std::max(0.0, prefix_.back() - prefix_[c + 1]);
      double cross = cell.weight * later;
      double within = cell.count >= 2.0 ? 0.5 * cell.weight * (cell.weight - g_c) : 0.0;
      double rate = rate_scale * (cross + within);
      if (!(rate > 0.0)) continue;
      CounterStream s(seed_, {kLightPair, c});
      double proposals = s.poisson(rate);
      for (double p = 0; p < proposals; p += 1.0) {
        std::uint32_t d = c;
        std::uint64_t ia = pick_index(s, cell);
        std::uint64_t ib = 0;
        if (s.uniform() * (cross + within) < cross) {
          d = locate(prefix_[c + 1] + s.uniform() * later, c + 1);
          ib = pick_index(s, cells_[d]);
        } else if (countable(cell)) {
          ib = s.below(static_cast<std::uint64_t>(cell.count) - 1);
          if (ib >= ia) ++ib;
        } else {
          ib = s.next_u64();
          if (ib == ia) continue;
        }
        Atom a = cell_atom(c, ia);
        Atom b = cell_atom(d, ib);
        double accept =
            acceptance(k_.log_edge(a, b), log_rate_scale + cell.log_g + cells_[d].log_g);
        if (s.uniform() < accept) add_edge(intern(c, ia, a), intern(d, ib, b));
      }
    }
  }

  void light_self() {
    const double rate_scale = k_.scale() / (1.0 - k_.scale() * kHeavyCut * kHeavyCut);
    const double log_rate_scale = std::log(rate_scale);
    for (std::uint32_t c = 0; c < cells_.size(); ++c) {
      const Cell& cell = cells_[c];
      double rate = rate_scale * std::exp(cell.log_g) * cell.weight;
      if (!(rate > 0.0)) continue;
      CounterStream s(seed_, {kLightSelf, c});
      double proposals = s.poisson(rate);
      for (double p = 0; p < proposals; p += 1.0) {
        std::uint64_t index = pick_index(s, cell);
        Atom a = cell_atom(c, index);
        double accept = acceptance(k_.log_self(a), log_rate_scale + 2.0 * cell.log_g);
        if (s.uniform() < accept) {
          std::uint32_t id = intern(c, index, a);
          add_edge(id, id);
        }
      }
    }
  }

  const Kernel& k_;
  double alpha_;
  double s_max_;
  std::uint64_t seed_;
  SamplerOptions options_;

  double s_heavy_ = 0.0;
  std::uint32_t n_heavy_ = 0;
  double n_latent_ = 0.0;
  std::vector<double> heavy_log_g_;
  std::vector<Cell> cells_;
  std::vector<double> prefix_;
  std::vector<Atom> atoms_;
  std::unordered_map<AtomKey, std::uint32_t, AtomKeyHash> registry_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> dense_ids_;
  std::vector<Atom> dense_atoms_;
  std::vector<std::uint8_t> dense_made_;
  std::vector<std::uint64_t> edges_;  // may hold repeats until run() dedups
};

/// Explicit atoms sorted by decreasing envelope. Row i walks j > i with
/// geometric skips at the envelope bound p = scale g_i g_j, which only falls
/// along the row, and keeps a candidate with probability W / p.
template <class Kernel>
RawGraph sample_skip(const Kernel& kernel, double alpha, double s_max, std::uint64_t seed,
                     const SamplerOptions& options) {
  const double v_max = std::expm1(s_max);
  check_capacity(alpha * v_max, options, "explicit sampling");
  CounterStream latent(seed, {kLatent});
  double count = latent.poisson(alpha * v_max);
  check_capacity(count, options, "explicit sampling");
  auto n = static_cast<std::uint32_t>(count);
  std::vector<Atom> atoms(n);
  for (auto& a : atoms) {
    a.theta = alpha * latent.uniform();
    a.x = v_max * latent.uniform();
    a.s = std::log1p(a.x);
    if (kernel.has_mark()) a.mark = latent.uniform();
    a.log_g = kernel.log_envelope(a.s);
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) { return l.s < r.s; });
  std::vector<double> g(n);
  for (std::uint32_t i = 0; i < n; ++i) g[i] = std::exp(atoms[i].log_g);
  const double scale = kernel.scale();

  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Atom& ai = atoms[i];
    CounterStream row(seed, {kSkipRow, i});
    if (row.uniform() < kernel.self(ai)) edges.push_back({i, i});
    const double gi = scale * g[i];
    std::uint64_t j = i + 1;
    while (j < n) {
      double p = gi * g[j];
      if (!(p > 0.0)) break;
      if (p < 1.0) {
        double skip = std::floor(std::log(row.uniform()) / std::log1p(-p));
        if (skip >= static_cast<double>(n - j)) break;
        j += static_cast<std::uint64_t>(skip);
      }
      double w = std::exp(kernel.log_edge(ai, atoms[j]));
      if (row.uniform() * p < w) edges.push_back({i, static_cast<std::uint32_t>(j)});
      ++j;
    }
  }
  return finalize(std::move(atoms), std::move(edges), count);
}

/// Uses explicit atoms with skip sampling while the latent count is modest,
/// lazy cells otherwise. `s_max` is the truncation level in log1p coordinates.
template <class Kernel>
RawGraph sample_cells(const Kernel& kernel, double alpha, double s_max,
                      std::uint64_t seed, const SamplerOptions& options) {
  constexpr double kExplicitLimit = 2.0e6;
  if (alpha * std::expm1(s_max) <= kExplicitLimit) {
    return sample_skip(kernel, alpha, s_max, seed, options);
  }
  return CellSampler<Kernel>(kernel, alpha, s_max, seed, options).run();
}

/// Lazy cells regardless of the latent count.
template <class Kernel>
RawGraph sample_lazy_cells(const Kernel& kernel, double alpha, double s_max,
                           std::uint64_t seed, const SamplerOptions& options) {
  return CellSampler<Kernel>(kernel, alpha, s_max, seed, options).run();
}

}  // namespace graphex::detail
