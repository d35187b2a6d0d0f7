#include "ringlab/numeric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "ringlab/construct.hpp"
#include "ringlab/error.hpp"
#include "rings_impl.hpp"

namespace ringlab {

namespace {

using detail::mul_mod;

std::int64_t pollard_rho(std::int64_t n) {
    if (n % 2 == 0) return 2;
    std::mt19937_64 rng(0x5eed);
    while (true) {
        std::int64_t c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n - 1)) + 1;
        std::int64_t x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
        std::int64_t y = x;
        std::int64_t d = 1;
        auto f = [&](std::int64_t v) { return (mul_mod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void split(std::int64_t n, std::map<std::int64_t, int>& out) {
    if (n == 1) return;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    std::int64_t d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) fail(ErrorCode::Unsupported, "factorize needs n >= 1");
    std::map<std::int64_t, int> found;
    split(n, found);
    return {found.begin(), found.end()};
}

std::int64_t radical(std::int64_t n) {
    std::int64_t r = 1;
    for (auto [p, e] : factorize(n)) r *= p;
    return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t old_r = detail::mod_reduce(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) fail(ErrorCode::Unsupported, "value is not invertible");
    return detail::mod_reduce(old_s, m);
}

std::uint64_t multiplicative_order(std::int64_t a, std::int64_t m) {
    if (m == 1) return 1;
    if (std::gcd(detail::mod_reduce(a, m), m) != 1) fail(ErrorCode::Unsupported, "value is not invertible");
    // The order divides the Carmichael-style exponent lcm(phi(p^e)); phi(m) works just as well.
    std::int64_t phi = m;
    for (auto [p, e] : factorize(m)) phi = phi / p * (p - 1);
    auto power = [&](std::int64_t base, std::int64_t e) {
        std::int64_t result = 1 % m;
        base = detail::mod_reduce(base, m);
        while (e > 0) {
            if (e & 1) result = mul_mod(result, base, m);
            base = mul_mod(base, base, m);
            e >>= 1;
        }
        return result;
    };
    std::int64_t order = phi;
    for (auto [p, e] : factorize(phi)) {
        while (order % p == 0 && power(a, order / p) == 1) order /= p;
    }
    return static_cast<std::uint64_t>(order);
}

}  // namespace ringlab
