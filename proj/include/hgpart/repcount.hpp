#pragma once

// Representations 4(pp')^g = u^2 + d v^2 by pairs of window primes and the
// counting quantities built on them: S_g, M(w; v), N(Z, X; V0), R_g, T_g,
// cube-pair detection and odd square-free kernels.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgpart/arith.hpp"
#include "hgpart/sieve.hpp"

namespace hgpart::repcount {

struct WindowParams {
    i64 X = 0;
    i64 Z = 0;
    i64 g = 0;
    i64 W = 0;          // Z^2
    i128 U = 0;         // 2^(g+1) Z^g
    i128 V_squared_X = 0;  // V^2 X = 4^(g+1) Z^(2g), exact
    i64 V_floor = 0;    // floor(V)
    bool below_lower_bound = false;  // Z < X^(1/(2g))
    bool below_relaxed_bound = false;  // Z < X^(1/(2g)) / 4
    double V() const;
    /// v <= V, decided exactly as v^2 X <= V^2 X.
    bool v_within(i64 v) const;
};

/// Validates g odd prime and 1 <= Z <= X.
WindowParams window_params(i64 X, i64 Z, i64 g);

struct RepWitness {
    i64 d = 0;
    i64 p = 0;
    i64 p2 = 0;  // p < p2
    i64 u = 0;
    i64 v = 0;
    auto operator<=>(const RepWitness&) const = default;
};

struct SgResult {
    i64 d = 0;
    i64 Z = 0;
    i64 g = 0;
    i64 unordered_pairs = 0;       // pairs {p, p'} with at least one witness
    i64 ordered_pairs = 0;         // 2 * unordered_pairs
    std::vector<RepWitness> witnesses;  // every (p < p', u, v) with u, v >= 1
};

/// Exhaustive S_g(d; Z): every pair of distinct window primes and every v with
/// d v^2 < 4(pp')^g, gcd(v, pp') = 1 is tested for an exact square. Odd primes
/// that are not split for d are skipped since they admit no witness.
SgResult s_g_direct(i64 d, i64 Z, i64 g);
SgResult s_g_direct(i64 d, const sieve::PrimeWindow& window, i64 g);

/// Residues u mod v^2 with u^2 = 4 w^g (mod v^2), sorted.
std::vector<i64> m_solve(i64 w, i64 v, i64 g);

struct UInterval {
    i128 lo = 0;  // inclusive
    i128 hi = 0;  // inclusive
    i128 half_width = 0;
    bool empty() const { return hi < lo; }
};

/// Interval around 2 w^(g/2) of half-width 4 V0^2 X / Z^g, clamped to [1, U].
/// Every u with (4w^g - u^2)/v^2 in [X, 2X) for some v in [V0, 2V0) lies in it.
/// Requires W <= w < 4W and 1 <= V0 <= V.
UInterval u_interval(i64 w, i64 V0, const WindowParams& params);

enum class NStrategy { direct, congruence };

struct NCount {
    i64 V0 = 0;
    i64 count = 0;
    NStrategy strategy = NStrategy::congruence;
};

/// N(Z, X; V0) for a dyadic V0 with 1 <= V0 <= V. The direct strategy loops
/// over every (w, v, u) with u <= U; the congruence strategy takes the
/// residues of m_solve inside u_interval.
NCount n_count(const WindowParams& params, i64 V0, NStrategy strategy, WorkBudget* budget = nullptr);

/// Dyadic V0 = 1, 2, 4, ... with V0 <= V.
std::vector<i64> dyadic_levels(const WindowParams& params);

struct TripleWitness {
    i64 d = 0;
    i64 w = 0;
    i64 u = 0;
    i64 v = 0;
    auto operator<=>(const TripleWitness&) const = default;
};

struct RgResult {
    i64 d = 0;
    i64 count = 0;
    std::vector<TripleWitness> triples;
};

/// R_g(d; Z): triples (w, u, v) with w = p1 p2 for distinct window primes,
/// u <= U, v <= V, gcd(w, v) = 1 and 4 w^g = u^2 + d v^2. Zero for d not
/// square-free.
RgResult r_g(i64 d, const WindowParams& params);

/// Every triple counted by R_g(d; Z) for square-free d in [X, 2X), found by
/// sieving d out of (w, v) congruence classes: u runs over the m_solve
/// residues inside u_interval at the dyadic level of v. Sorted.
std::vector<TripleWitness> aggregate_triples(const WindowParams& params, WorkBudget* budget = nullptr);

struct TgResult {
    i64 T = 0;                  // sum over d of R(R - 1)
    i64 pairwise = 0;           // ordered pairs of distinct triples with equal d
    i64 T0 = 0;                 // pairs with gcd(w1, w2) != 1
    std::map<i64, i64> T3_by_delta;  // coprime-w pairs by gcd(v1, v2)
    i64 pair_identity_checked = 0;
    std::vector<TripleWitness> triples;
    std::vector<std::pair<size_t, size_t>> coprime_pairs;  // indices into triples
};

/// T_g over [X, 2X) with an O(n^2) pairwise cross-check. Throws
/// BudgetExceeded when the budget runs out and std::logic_error if the two
/// counts disagree or the factorization identity fails for some pair.
TgResult t_g(const WindowParams& params, WorkBudget* budget = nullptr);

/// True iff y1^2 m2^3 = y2^2 m1^3 has a solution in nonzero integers, which
/// for coprime y1, y2 means both are perfect cubes. Throws for gcd > 1.
bool cube_pair_related(i64 y1, i64 y2);
bool is_perfect_cube(i64 n);

/// Product of the distinct odd primes dividing k.
i64 kernel(i64 k);

/// #{k <= K : product of the primes of k outside `excluded` equals kappa}.
i64 kernel_count(i64 K, i64 kappa, const std::set<i64>& excluded = {2});

struct KernelMax {
    i64 max_count = 0;
    i64 argmax = 0;  // smallest kappa attaining max_count
};

/// Max of kernel_count(K, kappa, {2}) over all kappa, by summing the
/// per-kappa enumeration over every odd square-free kappa <= K.
KernelMax kernel_count_max(i64 K);

std::string witness_csv(const SgResult& result);
std::string triple_csv(const std::vector<TripleWitness>& triples);

}  // namespace hgpart::repcount
