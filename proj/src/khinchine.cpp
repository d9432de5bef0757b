#include "bergman/khinchine.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

double abs_pow(Complex v, double p) { return p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p); }

// Signed sums over every pattern of the given coefficients; pattern bit k set means -c_k.
std::vector<Complex> all_sums(std::span<const Complex> c) {
  std::vector<Complex> s(std::size_t{1} << c.size());
  s[0] = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::size_t half = std::size_t{1} << k;
    for (std::size_t mask = 0; mask < half; ++mask) {
      s[mask | half] = s[mask] - c[k];
      s[mask] += c[k];
    }
  }
  return s;
}

}  // namespace

int rademacher(unsigned j, double t) {
  double frac = t - std::floor(t);
  frac = std::ldexp(frac, static_cast<int>(j));
  frac -= std::floor(frac);
  return frac < 0.5 ? 1 : -1;
}

KhinchineResult khinchine_integral(std::span<const Complex> c, double p, std::size_t mc_samples,
                                   std::uint64_t seed) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("khinchine_integral: p must be positive");
  KhinchineResult out;
  if (c.empty()) return out;
  if (c.size() <= kKhinchineExactLimit) {
    // Split into low and high halves so every sum has at most 12 rounding steps.
    const std::size_t lo_bits = c.size() / 2;
    const auto lo = all_sums(c.first(lo_bits));
    const auto hi = all_sums(c.subspan(lo_bits));
    std::vector<double> rows(hi.size());
    parallel_for(hi.size(), [&](std::size_t h) {
      std::vector<double> terms(lo.size());
      for (std::size_t l = 0; l < lo.size(); ++l) terms[l] = abs_pow(hi[h] + lo[l], p);
      rows[h] = pairwise_sum(terms);
    });
    out.patterns = lo.size() * hi.size();
    out.value = pairwise_sum(rows) / static_cast<double>(out.patterns);
    return out;
  }
  if (mc_samples < 2) throw DomainError("khinchine_integral: Monte Carlo needs at least two samples");
  std::vector<double> vals(mc_samples);
  parallel_for(mc_samples, [&](std::size_t i) {
    std::mt19937_64 rng(mix_seed(seed, i));
    Complex s{0.0, 0.0};
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k % 64 == 0) bits = rng();
      s += (bits & 1u) ? -c[k] : c[k];
      bits >>= 1u;
    }
    vals[i] = abs_pow(s, p);
  });
  const double mean = pairwise_sum(vals) / static_cast<double>(mc_samples);
  std::vector<double> dev(mc_samples);
  for (std::size_t i = 0; i < mc_samples; ++i) dev[i] = (vals[i] - mean) * (vals[i] - mean);
  out.exact = false;
  out.patterns = mc_samples;
  out.value = mean;
  out.std_error = std::sqrt(pairwise_sum(dev) / static_cast<double>(mc_samples - 1) / static_cast<double>(mc_samples));
  return out;
}

double khinchine_ratio(std::span<const Complex> c, double p) {
  const double l2 = std::sqrt(norm_sq(c));
  if (l2 == 0.0) throw DomainError("khinchine_ratio: zero coefficient vector");
  return std::pow(khinchine_integral(c, p).value, 1.0 / p) / l2;
}

}  // namespace bergman
