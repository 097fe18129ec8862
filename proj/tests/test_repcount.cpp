#include "doctest.h"

#include <map>

#include "hgpart/repcount.hpp"
#include "hgpart/sieve.hpp"

using namespace hgpart;
using namespace hgpart::repcount;

namespace {

// All (p < p', u, v) with 4(pp')^g = u^2 + d v^2, gcd(v, pp') = 1, by looping u and v.
std::vector<RepWitness> oracle_witnesses(i64 d, i64 Z, i64 g) {
    std::vector<RepWitness> out;
    const auto primes = primes_in_range(Z, 2 * Z);
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t j = i + 1; j < primes.size(); ++j) {
            const i64 w = primes[i] * primes[j];
            const i128 N = 4 * checked_pow(w, static_cast<unsigned>(g));
            for (i64 u = 1; static_cast<i128>(u) * u < N; ++u) {
                const i128 rest = N - static_cast<i128>(u) * u;
                if (rest % d != 0) continue;
                u64 v = 0;
                if (is_square(static_cast<u128>(rest / d), &v) && v > 0 && gcd(static_cast<i64>(v), w) == 1)
                    out.push_back({d, primes[i], primes[j], u, static_cast<i64>(v)});
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> oracle_m(i64 w, i64 v, i64 g) {
    const i64 m = v * v;
    i64 t = 4 % m;
    for (i64 i = 0; i < g; ++i) t = t * (w % m) % m;
    std::vector<i64> out;
    for (i64 u = 0; u < m; ++u)
        if (u * u % m == t) out.push_back(u);
    return out;
}

}  // namespace

TEST_CASE("window parameters") {
    const auto p = window_params(10000, 10, 3);
    CHECK(p.W == 100);
    CHECK(p.U == 16000);
    CHECK(p.V_floor == 160);
    CHECK(p.V() == doctest::Approx(160.0));
    CHECK(p.v_within(160));
    CHECK_FALSE(p.v_within(161));
    CHECK_FALSE(p.below_lower_bound);
    CHECK(window_params(10000, 4, 3).below_lower_bound);
    CHECK_FALSE(window_params(10000, 2, 3).below_relaxed_bound);
    CHECK_THROWS_AS(window_params(10, 11, 3), std::invalid_argument);
    CHECK_THROWS_AS(window_params(100, 10, 4), std::invalid_argument);
}

TEST_CASE("m_solve examples and residue-scan oracle") {
    CHECK(m_solve(7, 1, 3) == std::vector<i64>{0});
    CHECK(m_solve(1, 3, 3) == std::vector<i64>{2, 7});
    CHECK(m_solve(5, 3, 3).empty());
    CHECK_THROWS_AS(m_solve(6, 4, 3), std::invalid_argument);
    for (i64 g : {3, 5})
        for (i64 v = 1; v <= 40; ++v)
            for (i64 w = 1; w <= 40; ++w) {
                if (gcd(w, v) != 1) continue;
                const auto got = m_solve(w, v, g);
                CHECK(got == oracle_m(w, v, g));
                CHECK(got.size() <= (size_t{4} << omega(v)));
            }
}

TEST_CASE("s_g_direct agrees with a (p, p', u, v) loop on d in [50, 100), Z = 5") {
    i64 total = 0;
    for (i64 d : sieve::squarefree_range(50, 100)) {
        const auto got = s_g_direct(d, 5, 3);
        auto want = oracle_witnesses(d, 5, 3);
        CHECK(got.witnesses == want);
        std::set<std::pair<i64, i64>> pairs;
        for (const auto& w : want) pairs.insert({w.p, w.p2});
        CHECK(got.unordered_pairs == static_cast<i64>(pairs.size()));
        CHECK(got.ordered_pairs == 2 * got.unordered_pairs);
        total += got.unordered_pairs;
    }
    MESSAGE("unordered witness pairs over d in [50,100), Z = 5: " << total);
    CHECK(total > 0);
    CHECK_THROWS_AS(s_g_direct(50, 5, 3), std::invalid_argument);
}

TEST_CASE("s_g_direct trivial cases") {
    // window [1, 2) holds no prime
    CHECK(s_g_direct(10001, 1, 5).unordered_pairs == 0);
    // 4 (2*3)^3 < 10^4 so nothing survives at Z = 2
    for (i64 d = 10000; d < 10100; ++d)
        if (is_squarefree(d)) CHECK(s_g_direct(d, 2, 3).unordered_pairs == 0);
}

TEST_CASE("u_interval containment and scaling") {
    const auto params = window_params(10000, 10, 3);
    const i64 w = 150;
    const auto I = u_interval(w, 1, params);
    const i128 N = 4 * static_cast<i128>(w) * w * w;
    i64 seen = 0;
    for (i128 u = 1; u <= params.U; ++u) {
        const i128 q = N - u * u;
        if (q >= params.X && q < 2 * params.X) {
            CHECK(u >= I.lo);
            CHECK(u <= I.hi);
            ++seen;
        }
    }
    CHECK(seen > 0);
    CHECK(u_interval(w, 8, params).half_width == 4 * u_interval(w, 4, params).half_width);
    // at the top dyadic level the interval covers every u <= U near the centre
    const auto top = u_interval(w, 128, params);
    CHECK(top.half_width > 1000);
    CHECK_THROWS_AS(u_interval(w, 256, params), std::invalid_argument);
    CHECK_THROWS_AS(u_interval(99, 1, params), std::invalid_argument);
    CHECK_THROWS_AS(u_interval(w, 0, params), std::invalid_argument);
}

TEST_CASE("u_interval contains every admissible u at every level") {
    const auto params = window_params(1000, 6, 3);
    for (i64 V0 : dyadic_levels(params))
        for (i64 w = params.W; w < 4 * params.W; w += 7) {
            const auto I = u_interval(w, V0, params);
            const i128 N = 4 * static_cast<i128>(w) * w * w;
            for (i64 v = V0; v < 2 * V0; ++v)
                for (i128 u = 1; u * u < N; ++u) {
                    const i128 q = N - u * u;
                    if (q % (static_cast<i128>(v) * v) != 0) continue;
                    const i128 d = q / (static_cast<i128>(v) * v);
                    if (d >= params.X && d < 2 * params.X) {
                        CHECK(u >= I.lo);
                        CHECK(u <= I.hi);
                    }
                }
        }
}

TEST_CASE("n_count strategies agree") {
    const auto params = window_params(10000, 10, 3);
    for (i64 V0 : {1, 2, 4}) {
        const auto a = n_count(params, V0, NStrategy::direct);
        const auto b = n_count(params, V0, NStrategy::congruence);
        CHECK(a.count == b.count);
        MESSAGE("N(10, 10^4; " << V0 << ") = " << a.count);
    }
    CHECK_THROWS_AS(n_count(params, 3, NStrategy::congruence), std::invalid_argument);
    WorkBudget tiny(1000);
    CHECK_THROWS_AS(n_count(params, 1, NStrategy::direct, &tiny), BudgetExceeded);
}

TEST_CASE("dyadic N dominates the non-exceptional S_g mass") {
    const auto params = window_params(10000, 10, 3);
    i64 N = 0;
    for (i64 V0 : dyadic_levels(params)) N += n_count(params, V0, NStrategy::congruence).count;
    const auto E = sieve::exceptional_set(10, 10000);
    const auto window = sieve::prime_window(10);
    i64 witnesses = 0;
    for (i64 d : sieve::squarefree_range(10000, 20000)) {
        if (std::binary_search(E.members.begin(), E.members.end(), d)) continue;
        witnesses += static_cast<i64>(s_g_direct(d, window, 3).witnesses.size());
    }
    MESSAGE("sum N = " << N << ", non-exceptional witnesses = " << witnesses);
    CHECK(N >= witnesses);
}

TEST_CASE("r_g against a brute-force triple loop") {
    const auto params = window_params(50, 5, 3);
    const auto primes = primes_in_range(5, 10);
    for (i64 d = 50; d < 100; ++d) {
        const auto got = r_g(d, params);
        if (!is_squarefree(d)) {
            CHECK(got.count == 0);
            continue;
        }
        std::vector<TripleWitness> want;
        for (size_t i = 0; i < primes.size(); ++i)
            for (size_t j = i + 1; j < primes.size(); ++j) {
                const i64 w = primes[i] * primes[j];
                const i128 N = 4 * static_cast<i128>(w) * w * w;
                for (i64 u = 1; u <= params.U; ++u)
                    for (i64 v = 1; v <= params.V_floor; ++v)
                        if (gcd(w, v) == 1 && static_cast<i128>(u) * u + static_cast<i128>(d) * v * v == N)
                            want.push_back({d, w, u, v});
            }
        std::sort(want.begin(), want.end());
        CHECK(got.triples == want);
        CHECK(got.count >= static_cast<i64>(s_g_direct(d, 5, 3).witnesses.size()));
    }
}

TEST_CASE("aggregate triples equal per-d R_g") {
    for (auto [X, Z] : std::vector<std::pair<i64, i64>>{{1000, 6}, {1000, 10}, {3000, 8}}) {
        const auto params = window_params(X, Z, 3);
        std::vector<TripleWitness> want;
        for (i64 d = X; d < 2 * X; ++d) {
            const auto r = r_g(d, params);
            want.insert(want.end(), r.triples.begin(), r.triples.end());
        }
        std::sort(want.begin(), want.end());
        CHECK(aggregate_triples(params) == want);
    }
}

TEST_CASE("t_g pairwise enumeration and stratification") {
    for (auto [X, Z] : std::vector<std::pair<i64, i64>>{{1000, 6}, {1000, 10}, {1000, 14}}) {
        const auto params = window_params(X, Z, 3);
        const auto t = t_g(params);
        CHECK(t.pairwise == t.T);
        i64 strat = t.T0;
        for (const auto& [delta, c] : t.T3_by_delta) strat += c;
        CHECK(strat == t.T);
        CHECK(t.pair_identity_checked == t.T);
        MESSAGE("X = " << X << ", Z = " << Z << ": triples " << t.triples.size() << ", T = " << t.T
                       << ", T0 = " << t.T0);
    }
    WorkBudget tiny(5);
    CHECK_THROWS_AS(t_g(window_params(1000, 14, 3), &tiny), BudgetExceeded);
}

TEST_CASE("cube pairs") {
    CHECK(cube_pair_related(1, 1));
    CHECK(cube_pair_related(8, 27));
    CHECK_FALSE(cube_pair_related(2, 3));
    CHECK_THROWS_AS(cube_pair_related(4, 6), std::invalid_argument);
    // brute force over mu1, mu2 <= 100
    for (i64 y1 = 1; y1 <= 30; ++y1)
        for (i64 y2 = 1; y2 <= 30; ++y2) {
            if (gcd(y1, y2) != 1) continue;
            bool found = false;
            for (i64 m1 = 1; m1 <= 100 && !found; ++m1)
                for (i64 m2 = 1; m2 <= 100 && !found; ++m2)
                    if (static_cast<i128>(y1) * y1 * m2 * m2 * m2 == static_cast<i128>(y2) * y2 * m1 * m1 * m1)
                        found = true;
            CHECK(cube_pair_related(y1, y2) == found);
        }
}

TEST_CASE("kernels") {
    CHECK(kernel(8) == 1);
    CHECK(kernel(12) == 3);
    CHECK(kernel(45) == 15);
    for (i64 a = 1; a <= 200; ++a) {
        CHECK(a % kernel(a) == 0);
        CHECK(kernel(kernel(a)) == kernel(a));
        for (i64 b = 1; b <= 60; ++b)
            if (gcd(a, b) == 1) CHECK(kernel(a * b) == kernel(a) * kernel(b));
    }
    CHECK(kernel_count(100, 3) == 13);
    CHECK(kernel_count(100, 4) == 0);
    CHECK(kernel_count(100, 101) == 0);
    CHECK(kernel_count(100, 6) == 0);
    CHECK(kernel_count(100, 15, {2, 3}) == 0);
    // brute force over k <= 2000 for a handful of kappa and excluded sets
    for (const std::set<i64>& P : {std::set<i64>{2}, std::set<i64>{2, 3}, std::set<i64>{}}) {
        for (i64 kappa : {1, 3, 5, 7, 15, 21, 105}) {
            i64 want = 0;
            for (i64 k = 1; k <= 2000; ++k) {
                i64 r = 1;
                for (const auto& pe : factorize(k))
                    if (!P.count(pe.p)) r *= pe.p;
                if (r == kappa) ++want;
            }
            CHECK(kernel_count(2000, kappa, P) == want);
        }
    }
    const auto km = kernel_count_max(2000);
    std::map<i64, i64> hist;
    for (i64 k = 1; k <= 2000; ++k) ++hist[kernel(k)];
    i64 best = 0;
    for (const auto& [kp, c] : hist) best = std::max(best, c);
    CHECK(km.max_count == best);
}
