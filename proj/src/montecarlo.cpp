#include "pcmc/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pcmc/rng.hpp"

namespace pcmc::montecarlo {

namespace {

double norm2(const Vec3& p) { return p.x * p.x + p.y * p.y + p.z * p.z; }

}  // namespace

void SimConfig::validate() const {
  geometry.validate();
  if (!(dt > 0.0)) throw std::domain_error("SimConfig: dt must be positive");
  if (!(t_max >= dt)) throw std::domain_error("SimConfig: t_max must be >= dt");
  if (n_molecules < 1)
    throw std::domain_error("SimConfig: n_molecules must be >= 1");
}

std::pair<Vec3, double> crossing_point(const Vec3& p_prev, const Vec3& p_next,
                                       double rr) {
  // |p_prev + lambda (p_next - p_prev)|^2 = rr^2, smallest root in [0, 1].
  const Vec3 step{p_next.x - p_prev.x, p_next.y - p_prev.y,
                  p_next.z - p_prev.z};
  const double a = norm2(step);
  const double b = p_prev.x * step.x + p_prev.y * step.y + p_prev.z * step.z;
  const double c = norm2(p_prev) - rr * rr;
  const double disc = b * b - a * c;
  if (a > 0.0 && disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // Root closer to p_prev first; b < 0 when moving inward.
    for (double lambda : {(-b - sq) / a, (-b + sq) / a}) {
      if (lambda >= 0.0 && lambda <= 1.0) {
        Vec3 hit{p_prev.x + lambda * step.x, p_prev.y + lambda * step.y,
                 p_prev.z + lambda * step.z};
        // Project exactly onto the sphere to wash out roundoff.
        const double r = std::sqrt(norm2(hit));
        if (r > 0.0) {
          const double scale = rr / r;
          hit.x *= scale;
          hit.y *= scale;
          hit.z *= scale;
        }
        return {hit, lambda};
      }
    }
  }
  throw std::logic_error("crossing_point: segment does not reach the sphere");
}

std::optional<HitRecord> walk_molecule(const SimConfig& cfg, std::uint64_t id) {
  const double rr = cfg.geometry.rr;
  const double sigma = std::sqrt(2.0 * cfg.geometry.D * cfg.dt);
  const auto n_steps =
      static_cast<std::uint64_t>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  rng::SplitMix64 gen = rng::SplitMix64::stream(cfg.seed, id);
  std::normal_distribution<double> gauss(0.0, sigma);

  Vec3 p{cfg.geometry.r0, 0.0, 0.0};
  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    const Vec3 q{p.x + gauss(gen), p.y + gauss(gen), p.z + gauss(gen)};
    if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
      throw std::runtime_error("walk_molecule: non-finite position");
    // Segment test catches pass-through excursions, not just endpoints.
    const double b = p.x * (q.x - p.x) + p.y * (q.y - p.y) + p.z * (q.z - p.z);
    bool may_cross = norm2(q) <= rr * rr;
    if (!may_cross && b < 0.0) {
      const double a = norm2({q.x - p.x, q.y - p.y, q.z - p.z});
      const double disc = b * b - a * (norm2(p) - rr * rr);
      if (disc >= 0.0 && a > 0.0) {
        const double lambda_in = (-b - std::sqrt(disc)) / a;
        may_cross = lambda_in >= 0.0 && lambda_in <= 1.0;
      }
    }
    if (may_cross) {
      const auto [hit, lambda] = crossing_point(p, q, rr);
      const double hit_time = (static_cast<double>(k - 1) + lambda) * cfg.dt;
      const double cos_theta = std::min(1.0, std::max(-1.0, hit.x / rr));
      return HitRecord{id, hit_time, std::acos(cos_theta)};
    }
    p = q;
  }
  return std::nullopt;
}

namespace {

std::vector<HitRecord> compact(std::vector<HitRecord>&& slots) {
  std::vector<HitRecord> out;
  out.reserve(slots.size());
  for (const HitRecord& r : slots)
    if (r.hit_time >= 0.0) out.push_back(r);
  return out;
}

}  // namespace

std::vector<HitRecord> simulate(const SimConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::int64_t>(cfg.n_molecules);
  std::vector<HitRecord> slots(cfg.n_molecules, HitRecord{0, -1.0, 0.0});
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    if (auto hit = walk_molecule(cfg, static_cast<std::uint64_t>(i)))
      slots[static_cast<std::size_t>(i)] = *hit;
  }
  return compact(std::move(slots));
}

std::vector<HitRecord> simulate_serial(const SimConfig& cfg) {
  cfg.validate();
  std::vector<HitRecord> out;
  for (std::uint64_t i = 0; i < cfg.n_molecules; ++i)
    if (auto hit = walk_molecule(cfg, i)) out.push_back(*hit);
  return out;
}

EmpiricalCdf empirical_cdf(const std::vector<HitRecord>& records,
                           std::uint64_t n_molecules,
                           const std::vector<double>& alphas,
                           const std::vector<double>& times) {
  if (n_molecules == 0)
    throw std::domain_error("empirical_cdf: n_molecules must be positive");
  EmpiricalCdf cdf{alphas, times,
                   std::vector<double>(alphas.size() * times.size(), 0.0)};
  for (const HitRecord& r : records) {
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      if (r.hit_angle > alphas[ai]) continue;
      for (std::size_t ti = 0; ti < times.size(); ++ti)
        if (r.hit_time <= times[ti]) cdf.values[ai * times.size() + ti] += 1.0;
    }
  }
  for (double& v : cdf.values) v /= static_cast<double>(n_molecules);
  return cdf;
}

}  // namespace pcmc::montecarlo
