#include "hgpart/sieve.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "hgpart/quadforms.hpp"

namespace hgpart::sieve {

int kronecker(i64 a, i64 n) {
    static constexpr int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    int k = (v % 2 == 0) ? 1 : kTab2[a & 7];
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    a = mod(a, n);
    while (a != 0) {
        v = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++v;
        }
        if (v & 1) k *= kTab2[n & 7];
        if (a & n & 2) k = -k;
        i64 r = n % a;
        n = a;
        a = r;
    }
    return n == 1 ? k : 0;
}

int chi(i64 d, i64 n) { return kronecker(quadforms::fundamental_discriminant(d).delta, n); }

std::vector<char> squarefree_mask(i64 lo, i64 hi) {
    if (lo < 1 || hi <= lo) throw std::invalid_argument("squarefree range must satisfy 1 <= lo < hi");
    std::vector<char> mask(static_cast<size_t>(hi - lo), 1);
    const i64 root = static_cast<i64>(isqrt(static_cast<u64>(hi - 1)));
    for (i64 p : primes_in_range(2, root + 1)) {
        const i64 q = p * p;
        for (i64 m = (lo + q - 1) / q * q; m < hi; m += q) mask[static_cast<size_t>(m - lo)] = 0;
    }
    return mask;
}

std::vector<i64> squarefree_range(i64 lo, i64 hi) {
    auto mask = squarefree_mask(lo, hi);
    std::vector<i64> out;
    for (i64 i = lo; i < hi; ++i)
        if (mask[static_cast<size_t>(i - lo)]) out.push_back(i);
    return out;
}

i64 squarefree_count(i64 lo, i64 hi) {
    i64 n = 0;
    for (char c : squarefree_mask(lo, hi)) n += c;
    return n;
}

PrimeWindow prime_window(i64 Z) {
    if (Z < 1) throw std::invalid_argument("prime window needs Z >= 1");
    return {Z, primes_in_range(Z, 2 * Z)};
}

PrimeWindow split_primes(i64 d, const PrimeWindow& window) {
    const i64 delta = quadforms::fundamental_discriminant(d).delta;
    PrimeWindow out{window.Z, {}};
    for (i64 p : window.primes)
        if ((2 * d) % p != 0 && kronecker(delta, p) == 1) out.primes.push_back(p);
    return out;
}

PrimeWindow split_primes(i64 d, i64 Z) { return split_primes(d, prime_window(Z)); }

CharacterSum character_sum_M(i64 d, const PrimeWindow& window) {
    const i64 delta = quadforms::fundamental_discriminant(d).delta;
    i64 m = 0;
    for (i64 p : window.primes) m += kronecker(delta, p);
    return {d, window.Z, m};
}

CharacterSum character_sum_M(i64 d, i64 Z) { return character_sum_M(d, prime_window(Z)); }

WindowPartition partition_window(i64 d, const PrimeWindow& window) {
    const i64 delta = quadforms::fundamental_discriminant(d).delta;
    WindowPartition out;
    for (i64 p : window.primes) {
        switch (kronecker(delta, p)) {
            case 1: ++out.split; break;
            case -1: ++out.inert; break;
            default: ++out.ramified; break;
        }
    }
    return out;
}

double exceptional_threshold(i64 Z) {
    if (Z < 3) throw std::invalid_argument("exceptional set needs Z >= 3");
    return 0.25 * static_cast<double>(Z) / std::log(static_cast<double>(Z));
}

ExceptionalSet exceptional_set(i64 Z, i64 X) { return exceptional_set(Z, X, exceptional_threshold(Z)); }

ExceptionalSet exceptional_set(i64 Z, i64 X, double threshold) {
    if (Z < 3) throw std::invalid_argument("exceptional set needs Z >= 3");
    if (X < 1) throw std::invalid_argument("exceptional set needs X >= 1");
    ExceptionalSet out{Z, X, threshold, 0, {}};
    const PrimeWindow window = prime_window(Z);
    for (i64 d : squarefree_range(X, 2 * X)) {
        ++out.squarefree_total;
        if (static_cast<double>(std::llabs(character_sum_M(d, window).value)) >= threshold)
            out.members.push_back(d);
    }
    return out;
}

void write_character_csv(std::ostream& out, i64 Z, i64 X) {
    const double threshold = exceptional_threshold(Z);
    const PrimeWindow window = prime_window(Z);
    out << kCsvHeader << '\n';
    for (i64 d : squarefree_range(X, 2 * X)) {
        i64 m = character_sum_M(d, window).value;
        out << d << ',' << Z << ',' << m << ',' << (static_cast<double>(std::llabs(m)) >= threshold ? 1 : 0)
            << '\n';
    }
}

}  // namespace hgpart::sieve
