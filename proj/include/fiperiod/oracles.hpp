#pragma once

// Closed-form reference series and the presentations they describe.

#include <cstdint>
#include <string>

#include "fiperiod/fimod.hpp"

namespace fiperiod::oracles {

/// C(n, k) mod p via base-p digits (Lucas).
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// dim of the invariants of the example1 quotient over F_2; d >= 3, n >= d.
int example1_dim(int d, int n);

/// Generators in degrees (0, d); one relation in degree d: gen 0 plus the sum
/// of all injections [d] -> [d] on gen 1.
fimod::FIPresentation example1_presentation(int d, std::uint32_t p = 2);

/// dim V_n of the example1 quotient: 1 + n!/(n-d)! - C(n, d) for n >= d.
std::int64_t example1_level_dim(int d, int n);

/// Kernel of M(1) -> M(0) sending the generator to the generator.
fimod::FIPresentation intro_kernel_presentation(std::uint32_t p = 2);

/// 1 iff n >= 2 and n is even.
int intro_kernel_h0(int n);

/// 1 iff p divides 2n - 2.
int sphere_h1(std::uint32_t p, int n);

/// dim H^1(S_n, F_p): 1 iff p = 2 and n >= 2.
int trivial_h1(std::uint32_t p, int n);

/// Named series over [n_min, n_max]: example1 (uses d), intro_kernel, sphere_h1, trivial_h1.
fimod::DimensionSeries oracle_series(const std::string& name, std::uint32_t p, int d, int n_min, int n_max);

}  // namespace fiperiod::oracles
