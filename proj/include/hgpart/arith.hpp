#pragma once

// Exact integer helpers shared by every module: checked 128-bit products,
// integer square roots, modular arithmetic, factorization and CRT.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hgpart {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when an operation would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
  public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Work counter that throws BudgetExceeded once `limit` units are spent.
/// A limit of 0 means unlimited.
class WorkBudget {
  public:
    explicit WorkBudget(u64 limit = 0) : limit_(limit) {}

    void spend(u64 units, const char* where) {
        used_ += units;
        if (limit_ != 0 && used_ > limit_)
            throw BudgetExceeded(std::string(where) + ": work budget of " +
                                 std::to_string(limit_) + " exhausted");
    }
    u64 used() const { return used_; }
    u64 limit() const { return limit_; }

  private:
    u64 limit_;
    u64 used_ = 0;
};

i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);
i128 checked_pow(i128 base, unsigned exp);

/// Saturating power: returns `cap` as soon as the true value would exceed it.
u128 pow_saturate(u128 base, unsigned exp, u128 cap);

u64 isqrt(u64 n);
u64 isqrt(u128 n);
bool is_square(u128 n, u64* root = nullptr);

std::string to_string(i128 v);

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
/// Extended gcd: returns g = gcd(a,b) >= 0 and sets x, y with a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

/// Least non-negative residue.
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}
inline i64 mod(i128 a, i64 m) {
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
i64 inv_mod(i64 a, i64 m);

struct PrimePower {
    i64 p;
    int e;
};
std::vector<PrimePower> factorize(i64 n);
int omega(i64 n);
bool is_prime(i64 n);
bool is_squarefree(i64 n);
/// Product of the distinct primes dividing n.
i64 radical(i64 n);

/// Combine x = r1 (mod m1), x = r2 (mod m2) for coprime moduli.
std::pair<i64, i64> crt_pair(i64 r1, i64 m1, i64 r2, i64 m2);

/// All square roots of n modulo an odd prime p (0, 1 or 2 residues, sorted).
std::vector<i64> sqrt_mod_prime(i64 n, i64 p);

/// All x mod p^k with x^2 = n, for odd p not dividing n, by Hensel lifting.
std::vector<i64> sqrt_mod_odd_prime_power(i64 n, i64 p, int k);

/// All x mod 2^k with x^2 = n, for odd n.
std::vector<i64> sqrt_mod_two_power(i64 n, int k);

/// Primes in [lo, hi) by a segmented sieve.
std::vector<i64> primes_in_range(i64 lo, i64 hi);

/// Parse "p/q" or an integer into (numerator, denominator>0).
std::pair<i64, i64> parse_fraction(const std::string& text);

}  // namespace hgpart
