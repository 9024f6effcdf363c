#include "fiperiod/oracles.hpp"

#include <stdexcept>

#include "fiperiod/gfla.hpp"
#include "fiperiod/symcore.hpp"

namespace fiperiod::oracles {

std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (!gfla::is_prime(p)) throw std::invalid_argument("binom_mod_p: p is not prime");
  std::uint64_t acc = 1;
  while (n > 0 || k > 0) {
    const auto ni = n % p;
    const auto ki = k % p;
    if (ki > ni) return 0;
    // small binomial C(ni, ki) mod p by multiplicative formula with inverses
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < ki; ++i) {
      num = num * ((ni - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    acc = acc * num % p * gfla::PrimeField(p).inv(static_cast<std::uint32_t>(den)) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(acc);
}

int example1_dim(int d, int n) {
  if (d < 3) throw std::invalid_argument("example1_dim: d must be at least 3");
  if (n < d) throw std::invalid_argument("example1_dim: n must be at least d");
  const bool a = binom_mod_p(static_cast<std::uint64_t>(n - 2), static_cast<std::uint64_t>(d - 2), 2) == 0;
  if (d % 2 == 1) return a ? 2 : 1;
  const bool b = binom_mod_p(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(d - 1), 2) == 0;
  return a && b ? 2 : 1;
}

fimod::FIPresentation example1_presentation(int d, std::uint32_t p) {
  if (d < 3) throw std::invalid_argument("example1_presentation: d must be at least 3");
  fimod::FreeShape shape(p, {0, d});
  fimod::Element rel(shape, d);
  rel.add(0, {}, 1);
  rel.add_all_injections(1, 1);
  return fimod::FIPresentation::presented(shape, {rel});
}

std::int64_t example1_level_dim(int d, int n) {
  if (n < d) throw std::invalid_argument("example1_level_dim: n must be at least d");
  return 1 + static_cast<std::int64_t>(fimod::falling(n, d)) - static_cast<std::int64_t>(symcore::binomial(n, d));
}

fimod::FIPresentation intro_kernel_presentation(std::uint32_t p) {
  auto source = fimod::FIPresentation::free(p, {1});
  auto target = fimod::FIPresentation::free(p, {0});
  fimod::Element image(target.shape(), 1);
  image.add(0, {}, 1);
  return fimod::FIPresentation::kernel_of(fimod::FIMorphism(source, target, {image}));
}

int intro_kernel_h0(int n) { return n >= 2 && n % 2 == 0 ? 1 : 0; }

int sphere_h1(std::uint32_t p, int n) {
  if (n < 1) throw std::invalid_argument("sphere_h1: n must be at least 1");
  return (2 * static_cast<std::int64_t>(n) - 2) % p == 0 ? 1 : 0;
}

int trivial_h1(std::uint32_t p, int n) { return p == 2 && n >= 2 ? 1 : 0; }

fimod::DimensionSeries oracle_series(const std::string& name, std::uint32_t p, int d, int n_min, int n_max) {
  if (n_max < n_min) throw std::invalid_argument("oracle_series: empty range");
  fimod::DimensionSeries s;
  s.n_min = n_min;
  s.label = "oracle";
  for (int n = n_min; n <= n_max; ++n) {
    if (name == "example1") {
      s.values.push_back(example1_dim(d, n));
    } else if (name == "intro_kernel") {
      s.values.push_back(intro_kernel_h0(n));
    } else if (name == "sphere_h1") {
      s.values.push_back(sphere_h1(p, n));
    } else if (name == "trivial_h1") {
      s.values.push_back(trivial_h1(p, n));
    } else {
      throw std::invalid_argument("unknown oracle '" + name + "'");
    }
  }
  return s;
}

}  // namespace fiperiod::oracles
