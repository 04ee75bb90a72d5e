#include "sharpset/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "float_simplex.hpp"
#include "sharpset/discretize.hpp"

namespace sharpset {

std::string to_string(Distribution d) { return d == Distribution::Exponential ? "exponential" : "half-normal"; }

Distribution parse_distribution(const std::string& s) {
  if (s == "exponential" || s == "exp") return Distribution::Exponential;
  if (s == "half-normal" || s == "halfnormal") return Distribution::HalfNormal;
  throw ValidationError("unknown distribution '" + s + "' (expected exponential or half-normal)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kScale = 9007199254740992.0;  // 2^53

Rat truncate(double w) {
  double m = std::floor(w * kScale);
  if (m < 1) m = 1;
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), m);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, 53);
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(q);
}

}  // namespace

Vec sample_objective(std::size_t n, std::uint64_t seed, std::size_t k, Distribution dist) {
  std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k))));
  Vec w(n);
  for (auto& x : w) {
    double r;
    if (dist == Distribution::Exponential) {
      const double u = static_cast<double>(gen() >> 11) / kScale;
      r = -std::log1p(-u);
    } else {
      std::normal_distribution<double> nd(0.0, 1.0);
      r = std::fabs(nd(gen));
    }
    x = truncate(r);
  }
  return w;
}

namespace {

// Snap a floating coordinate to a nearby rational with a small denominator.
std::optional<Rat> snap(double v) {
  for (long q = 1; q <= 64; ++q) {
    const double p = std::round(v * static_cast<double>(q));
    if (std::abs(v - p / static_cast<double>(q)) < 1e-7) {
      mpq_class r(static_cast<long>(p), q);
      r.canonicalize();
      return Rat(r);
    }
  }
  return std::nullopt;
}

}  // namespace

SamplerResult probabilistic_frontier(const Polyhedron& poly, const SamplerConfig& config) {
  if (config.K == 0) throw ValidationError("sampler: K must be at least 1");
  const std::size_t n = poly.ny, nx = poly.ny + poly.nz;
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.K)));
  std::vector<Vec> found(config.K);
  std::vector<std::string> errors(threads);
  const LinearProgram lp = poly.lp();
  auto worker = [&](unsigned t) {
    try {
      // Double precision proposes the maximizer; a draw whose solution does
      // not snap to a feasible small-denominator point is re-solved exactly.
      std::optional<detail::FloatSimplex> fast;
      if (!config.exact_lp) fast.emplace(lp);
      std::optional<Simplex> exact;
      std::vector<double> c(nx, 0.0);
      for (std::size_t k = t; k < config.K; k += threads) {
        const Vec w = sample_objective(n, config.seed, k, config.distribution);
        if (fast) {
          for (std::size_t j = 0; j < n; ++j) c[j] = w[j].to_double();
          if (fast->maximize(c) && fast->max_violation() < 1e-7) {
            Vec y;
            for (std::size_t j = 0; j < n; ++j) {
              auto r = snap(fast->x()[j]);
              if (!r) break;
              y.push_back(*r);
            }
            if (y.size() == n) {
              found[k] = std::move(y);
              continue;
            }
          }
        }
        if (!exact) exact.emplace(lp);
        Vec full = w;
        full.resize(nx);
        LPResult r = exact->reoptimize(full, Direction::Max);
        if (r.status != LPStatus::Optimal) throw std::logic_error("sampler LP not optimal");
        found[k].assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
      }
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::logic_error(e);

  SamplerResult out;
  std::set<Vec> distinct(found.begin(), found.end());
  for (const Vec& y : distinct) {
    bool ok;
    if (config.certification_cache) {
      auto it = config.certification_cache->find(y);
      if (it == config.certification_cache->end()) it = config.certification_cache->emplace(y, certify_undominated_extreme(poly, y)).first;
      ok = it->second;
    } else {
      ok = certify_undominated_extreme(poly, y);
    }
    if (ok)
      out.raw.emplace_back(y, "probabilistic");
    else
      ++out.rejected;
  }
  if (config.record_objectives)
    for (std::size_t k = 0; k < config.K; ++k) out.objectives.push_back(sample_objective(n, config.seed, k, config.distribution));
  out.reduced = eliminate_redundant(out.raw, poly.labels);
  return out;
}

}  // namespace sharpset
