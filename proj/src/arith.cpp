#include "hgpart/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace hgpart {

namespace {
constexpr i128 kI128Max = static_cast<i128>(~u128{0} >> 1);
}

i128 checked_mul(i128 a, i128 b) {
    if (a == 0 || b == 0) return 0;
    u128 ua = a < 0 ? static_cast<u128>(-a) : static_cast<u128>(a);
    u128 ub = b < 0 ? static_cast<u128>(-b) : static_cast<u128>(b);
    if (ua > static_cast<u128>(kI128Max) / ub)
        throw std::overflow_error("checked_mul: 128-bit overflow");
    return a * b;
}

i128 checked_add(i128 a, i128 b) {
    if ((b > 0 && a > kI128Max - b) || (b < 0 && a < -kI128Max - b))
        throw std::overflow_error("checked_add: 128-bit overflow");
    return a + b;
}

i128 checked_pow(i128 base, unsigned exp) {
    i128 r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

u128 pow_saturate(u128 base, unsigned exp, u128 cap) {
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap;
        r *= base;
        if (r > cap) return cap;
    }
    return r;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 isqrt(u128 n) {
    if (n <= std::numeric_limits<u64>::max()) return isqrt(static_cast<u64>(n));
    long double approx = std::sqrt(static_cast<long double>(n));
    u64 r = approx >= 18446744073709551615.0L ? std::numeric_limits<u64>::max()
                                              : static_cast<u64>(approx);
    while (static_cast<u128>(r) * r > n) --r;
    while (r < std::numeric_limits<u64>::max() && static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(u128 n, u64* root) {
    // Quadratic residues mod 64 reject most non-squares cheaply.
    constexpr u64 kMask = [] {
        u64 m = 0;
        for (u64 i = 0; i < 64; ++i) m |= u64{1} << (i * i % 64);
        return m;
    }();
    if (!((kMask >> static_cast<unsigned>(n & 63)) & 1)) return false;
    u64 r = isqrt(n);
    if (static_cast<u128>(r) * r != n) return false;
    if (root) *root = r;
    return true;
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) { return a / gcd(a, b) * b; }

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

i64 inv_mod(i64 a, i64 m) {
    i64 x, y;
    i64 g = ext_gcd(mod(a, m), m, x, y);
    if (g != 1) throw std::domain_error("inv_mod: argument not invertible");
    return mod(x, m);
}

std::vector<PrimePower> factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

int omega(i64 n) { return static_cast<int>(factorize(n).size()); }

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

bool is_squarefree(i64 n) {
    if (n < 1) return false;
    for (const auto& pe : factorize(n))
        if (pe.e > 1) return false;
    return true;
}

i64 radical(i64 n) {
    i64 r = 1;
    for (const auto& pe : factorize(n)) r *= pe.p;
    return r;
}

std::pair<i64, i64> crt_pair(i64 r1, i64 m1, i64 r2, i64 m2) {
    // x = r1 + m1 * t with m1 * t = r2 - r1 (mod m2)
    i64 t = static_cast<i64>(static_cast<i128>(mod(r2 - r1, m2)) * inv_mod(m1, m2) % m2);
    i64 m = m1 * m2;
    return {mod(static_cast<i128>(r1) + static_cast<i128>(m1) * t, m), m};
}

std::vector<i64> sqrt_mod_prime(i64 n, i64 p) {
    n = mod(n, p);
    if (p == 2) return {n};
    if (n == 0) return {0};
    u64 up = static_cast<u64>(p);
    if (powmod(static_cast<u64>(n), (up - 1) / 2, up) != 1) return {};
    // Tonelli-Shanks
    u64 q = up - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (up - 1) / 2, up) != up - 1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, up);
    u64 t = powmod(static_cast<u64>(n), q, up);
    u64 r = powmod(static_cast<u64>(n), (q + 1) / 2, up);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, up);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, up);
        m = i;
        c = mulmod(b, b, up);
        t = mulmod(t, c, up);
        r = mulmod(r, b, up);
    }
    i64 x = static_cast<i64>(r), y = p - x;
    if (x == y) return {x};
    return {std::min(x, y), std::max(x, y)};
}

std::vector<i64> sqrt_mod_odd_prime_power(i64 n, i64 p, int k) {
    if (p % 2 == 0 || n % p == 0)
        throw std::invalid_argument("sqrt_mod_odd_prime_power: need odd p not dividing n");
    if (k == 0) return {0};
    std::vector<i64> roots = sqrt_mod_prime(n, p);
    i64 pk = p;
    for (int j = 1; j < k; ++j) {
        pk *= p;
        for (auto& x : roots) {
            i64 f = mod(static_cast<i128>(x) * x - n, pk);
            i64 inv = inv_mod(mod(2 * static_cast<i128>(x), pk), pk);
            x = mod(static_cast<i128>(x) - static_cast<i128>(f) * inv, pk);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<i64> sqrt_mod_two_power(i64 n, int k) {
    if (n % 2 == 0) throw std::invalid_argument("sqrt_mod_two_power: n must be odd");
    if (k == 0) return {0};
    if (k == 1) return {1};
    if (k == 2) return mod(n, 4) == 1 ? std::vector<i64>{1, 3} : std::vector<i64>{};
    if (mod(n, 8) != 1) return {};
    i64 m = i64{1} << k;
    i64 x = 1;
    for (int i = 3; i < k; ++i) {
        i64 mi = i64{1} << (i + 1);
        if (mod(static_cast<i128>(x) * x - n, mi) != 0) x += i64{1} << (i - 1);
    }
    i64 half = m / 2;
    std::vector<i64> roots = {mod(x, m), mod(-x, m), mod(x + half, m), mod(-x + half, m)};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<i64> primes_in_range(i64 lo, i64 hi) {
    std::vector<i64> out;
    lo = std::max<i64>(lo, 2);
    if (hi <= lo) return out;
    i64 root = static_cast<i64>(isqrt(static_cast<u64>(hi - 1)));
    std::vector<char> small(static_cast<size_t>(root + 1), 1);
    std::vector<i64> base;
    for (i64 i = 2; i <= root; ++i) {
        if (!small[static_cast<size_t>(i)]) continue;
        base.push_back(i);
        for (i64 j = i * i; j <= root; j += i) small[static_cast<size_t>(j)] = 0;
    }
    constexpr i64 kSegment = 1 << 16;
    std::vector<char> seg;
    for (i64 s = lo; s < hi; s += kSegment) {
        i64 e = std::min(hi, s + kSegment);
        seg.assign(static_cast<size_t>(e - s), 1);
        for (i64 p : base) {
            i64 start = std::max(p * p, (s + p - 1) / p * p);
            for (i64 j = start; j < e; j += p) seg[static_cast<size_t>(j - s)] = 0;
        }
        for (i64 i = s; i < e; ++i)
            if (seg[static_cast<size_t>(i - s)]) out.push_back(i);
    }
    return out;
}

std::pair<i64, i64> parse_fraction(const std::string& text) {
    auto parse_int = [&](std::string_view sv) {
        i64 v = 0;
        auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || ptr != sv.data() + sv.size() || sv.empty())
            throw std::invalid_argument("not an exact number: '" + text + "'");
        return v;
    };
    std::string_view sv(text);
    auto slash = sv.find('/');
    if (slash == std::string_view::npos) return {parse_int(sv), 1};
    i64 num = parse_int(sv.substr(0, slash));
    i64 den = parse_int(sv.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive: '" + text + "'");
    return {num, den};
}

}  // namespace hgpart
