#pragma once

// Square-free ranges, the quadratic character of Q(sqrt(-d)), prime windows
// [Z, 2Z) and the character sums M(d; Z) over them.

#include <cstdint>
#include <ostream>
#include <vector>

#include "hgpart/arith.hpp"

namespace hgpart::sieve {

/// Kronecker symbol (a | n) for any integer a and n.
int kronecker(i64 a, i64 n);

/// chi_d(n) = (delta | n) with delta the fundamental discriminant of Q(sqrt(-d)).
int chi(i64 d, i64 n);

/// mask[i] != 0 iff lo + i is square-free. Requires 1 <= lo < hi.
std::vector<char> squarefree_mask(i64 lo, i64 hi);
std::vector<i64> squarefree_range(i64 lo, i64 hi);
i64 squarefree_count(i64 lo, i64 hi);

struct PrimeWindow {
    i64 Z = 0;
    std::vector<i64> primes;  // every prime in [Z, 2Z), ascending
};

PrimeWindow prime_window(i64 Z);

/// Primes p of the window with p not dividing 2d and chi_d(p) = +1.
PrimeWindow split_primes(i64 d, const PrimeWindow& window);
PrimeWindow split_primes(i64 d, i64 Z);

struct CharacterSum {
    i64 d = 0;
    i64 Z = 0;
    i64 value = 0;
};

CharacterSum character_sum_M(i64 d, const PrimeWindow& window);
CharacterSum character_sum_M(i64 d, i64 Z);

struct WindowPartition {
    i64 split = 0;
    i64 inert = 0;
    i64 ramified = 0;
};

WindowPartition partition_window(i64 d, const PrimeWindow& window);

/// Z / (4 log Z), natural logarithm. Requires Z >= 3.
double exceptional_threshold(i64 Z);

struct ExceptionalSet {
    i64 Z = 0;
    i64 X = 0;
    double threshold = 0;
    i64 squarefree_total = 0;    // square-free d in [X, 2X)
    std::vector<i64> members;    // ascending
};

/// Square-free d in [X, 2X) with |M(d; Z)| >= threshold. The default
/// threshold is exceptional_threshold(Z).
ExceptionalSet exceptional_set(i64 Z, i64 X);
ExceptionalSet exceptional_set(i64 Z, i64 X, double threshold);

/// CSV rows "d,Z,M,is_exceptional" for every square-free d in [X, 2X).
inline constexpr const char* kCsvHeader = "d,Z,M,is_exceptional";
void write_character_csv(std::ostream& out, i64 Z, i64 X);

}  // namespace hgpart::sieve
