#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ringlab {

/// Prime factorization (Pollard rho), primes ascending with their exponents.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Product of the distinct primes dividing n.
std::int64_t radical(std::int64_t n);

/// a^-1 mod m for gcd(a, m) = 1; m >= 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Least k >= 1 with a^k = 1 mod m; requires gcd(a, m) = 1 (returns 1 for m = 1).
std::uint64_t multiplicative_order(std::int64_t a, std::int64_t m);

}  // namespace ringlab
