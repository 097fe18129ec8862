#include "hgpart/repcount.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hgpart/quadforms.hpp"

namespace hgpart::repcount {

double WindowParams::V() const {
    return std::sqrt(static_cast<double>(V_squared_X) / static_cast<double>(X));
}

bool WindowParams::v_within(i64 v) const {
    return checked_mul(checked_mul(v, v), X) <= V_squared_X;
}

WindowParams window_params(i64 X, i64 Z, i64 g) {
    quadforms::require_odd_prime(g);
    if (X < 1 || Z < 1 || Z > X)
        throw std::invalid_argument("window parameters need 1 <= Z <= X (X = " + std::to_string(X) +
                                    ", Z = " + std::to_string(Z) + ")");
    WindowParams p;
    p.X = X;
    p.Z = Z;
    p.g = g;
    p.W = Z * Z;
    const auto ug = static_cast<unsigned>(g);
    const i128 zg = checked_pow(Z, ug);
    p.U = checked_mul(checked_pow(2, ug + 1), zg);
    p.V_squared_X = checked_mul(checked_pow(4, ug + 1), checked_mul(zg, zg));
    p.V_floor = static_cast<i64>(isqrt(static_cast<u128>(p.V_squared_X / X)));
    p.below_lower_bound = checked_mul(zg, zg) < X;
    p.below_relaxed_bound = checked_pow(checked_mul(4, Z), 2 * ug) < X;
    return p;
}

namespace {

i128 four_w_pow(i64 w, i64 g) { return checked_mul(4, checked_pow(w, static_cast<unsigned>(g))); }

}  // namespace

SgResult s_g_direct(i64 d, i64 Z, i64 g) { return s_g_direct(d, sieve::prime_window(Z), g); }

SgResult s_g_direct(i64 d, const sieve::PrimeWindow& window, i64 g) {
    quadforms::require_odd_prime(g);
    if (!is_squarefree(d)) throw std::invalid_argument("s_g_direct: d = " + std::to_string(d) + " is not square-free");
    SgResult out{d, window.Z, g, 0, 0, {}};
    const i64 delta = quadforms::fundamental_discriminant(d).delta;
    std::vector<i64> primes;
    for (i64 p : window.primes)
        if (p == 2 || sieve::kronecker(delta, p) == 1) primes.push_back(p);

    for (size_t i = 0; i < primes.size(); ++i) {
        for (size_t j = i + 1; j < primes.size(); ++j) {
            const i64 p = primes[i], p2 = primes[j];
            const i128 N = four_w_pow(p * p2, g);
            bool found = false;
            for (i64 v = 1; static_cast<i128>(d) * v * v < N; ++v) {
                if (gcd(v, p * p2) != 1) continue;
                u64 u = 0;
                if (is_square(static_cast<u128>(N - static_cast<i128>(d) * v * v), &u)) {
                    out.witnesses.push_back({d, p, p2, static_cast<i64>(u), v});
                    found = true;
                }
            }
            if (found) ++out.unordered_pairs;
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    out.ordered_pairs = 2 * out.unordered_pairs;
    return out;
}

std::vector<i64> m_solve(i64 w, i64 v, i64 g) {
    if (w < 1 || v < 1) throw std::invalid_argument("m_solve: w and v must be positive");
    if (gcd(w, v) != 1)
        throw std::invalid_argument("m_solve: gcd(w, v) = " + std::to_string(gcd(w, v)) + " != 1");
    if (v == 1) return {0};
    if (v > 3037000499) throw std::overflow_error("m_solve: v^2 exceeds 64 bits");
    const i64 modulus = v * v;
    const u64 wg_mod = powmod(static_cast<u64>(w), static_cast<u64>(g), static_cast<u64>(modulus));
    const i64 target = static_cast<i64>(mulmod(4, wg_mod, static_cast<u64>(modulus)));

    std::vector<i64> acc = {0};
    i64 acc_mod = 1;
    for (const auto& [q, r] : factorize(v)) {
        i64 m = 1;
        for (int i = 0; i < 2 * r; ++i) m *= q;
        std::vector<i64> local;
        if (q != 2) {
            local = sqrt_mod_odd_prime_power(mod(target, m), q, 2 * r);
        } else {
            // u = 2u' with u'^2 = w^g (mod 2^(2r-2)); u' is then free mod 2^(2r-1).
            std::vector<i64> half_roots = {0};
            const int k = 2 * r - 2;
            if (k > 0) {
                const u64 mk = u64{1} << k;
                half_roots = sqrt_mod_two_power(
                    static_cast<i64>(powmod(static_cast<u64>(w), static_cast<u64>(g), mk)), k);
            }
            const i64 lift = i64{1} << (2 * r - 1);
            for (i64 s : half_roots) {
                local.push_back(mod(2 * s, m));
                local.push_back(mod(2 * s + lift, m));
            }
        }
        std::vector<i64> next;
        for (i64 a : acc)
            for (i64 b : local) next.push_back(crt_pair(a, acc_mod, b, m).first);
        acc = std::move(next);
        acc_mod *= m;
        if (acc.empty()) break;
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

UInterval u_interval(i64 w, i64 V0, const WindowParams& params) {
    if (w < params.W || w >= 4 * params.W)
        throw std::invalid_argument("u_interval: w = " + std::to_string(w) + " outside [W, 4W)");
    if (V0 < 1 || !params.v_within(V0))
        throw std::invalid_argument("u_interval: V0 = " + std::to_string(V0) + " outside [1, V]");
    const i128 N = four_w_pow(w, params.g);
    const i128 s_floor = static_cast<i128>(isqrt(static_cast<u128>(N)));
    const i128 s_ceil = s_floor * s_floor == N ? s_floor : s_floor + 1;
    const i128 num = checked_mul(checked_mul(4, checked_mul(V0, V0)), params.X);
    const i128 den = checked_pow(params.Z, static_cast<unsigned>(params.g));
    UInterval out;
    out.half_width = (num + den - 1) / den;
    out.lo = std::max<i128>(1, s_floor - out.half_width);
    out.hi = std::min<i128>(params.U, s_ceil + out.half_width);
    return out;
}

std::vector<i64> dyadic_levels(const WindowParams& params) {
    std::vector<i64> out;
    for (i64 V0 = 1; params.v_within(V0); V0 *= 2) out.push_back(V0);
    return out;
}

namespace {

// Calls f(u, d) for every u in the interval with u = r (mod v^2) for some
// residue r and (4w^g - u^2)/v^2 = d in [X, 2X).
template <typename F>
void sieve_u(const WindowParams& params, i64 w, i64 v, const UInterval& I, F&& f) {
    if (I.empty()) return;
    const i128 N = four_w_pow(w, params.g);
    const i64 v2 = v * v;
    for (i64 r : m_solve(w, v, params.g)) {
        i128 u = I.lo + mod(static_cast<i128>(r) - I.lo, v2);
        for (; u <= I.hi; u += v2) {
            const i128 q = N - u * u;
            if (q <= 0 || q % v2 != 0) continue;
            const i128 d = q / v2;
            if (d >= params.X && d < 2 * static_cast<i128>(params.X)) f(static_cast<i64>(u), static_cast<i64>(d));
        }
    }
}

}  // namespace

NCount n_count(const WindowParams& params, i64 V0, NStrategy strategy, WorkBudget* budget) {
    if (V0 < 1 || (V0 & (V0 - 1)) != 0 || !params.v_within(V0))
        throw std::invalid_argument("n_count: V0 = " + std::to_string(V0) + " is not a dyadic level <= V");
    NCount out{V0, 0, strategy};
    for (i64 w = params.W; w < 4 * params.W; ++w) {
        const i128 N = four_w_pow(w, params.g);
        const UInterval I = u_interval(w, V0, params);
        for (i64 v = V0; v < 2 * V0; ++v) {
            if (gcd(v, w) != 1) continue;
            if (strategy == NStrategy::direct) {
                if (budget) budget->spend(static_cast<u64>(params.U), "n_count");
                const i128 v2 = static_cast<i128>(v) * v;
                for (i128 u = 1; u <= params.U; ++u) {
                    const i128 q = N - u * u;
                    if (q <= 0) break;
                    if (q % v2 != 0) continue;
                    const i128 d = q / v2;
                    if (d >= params.X && d < 2 * static_cast<i128>(params.X)) ++out.count;
                }
            } else {
                if (budget) budget->spend(1, "n_count");
                sieve_u(params, w, v, I, [&](i64, i64) { ++out.count; });
            }
        }
    }
    return out;
}

RgResult r_g(i64 d, const WindowParams& params) {
    RgResult out{d, 0, {}};
    if (d < 1 || !is_squarefree(d)) return out;
    const auto window = sieve::prime_window(params.Z);
    for (size_t i = 0; i < window.primes.size(); ++i) {
        for (size_t j = i + 1; j < window.primes.size(); ++j) {
            const i64 w = window.primes[i] * window.primes[j];
            const i128 N = four_w_pow(w, params.g);
            for (i64 v = 1; params.v_within(v) && static_cast<i128>(d) * v * v < N; ++v) {
                if (gcd(v, w) != 1) continue;
                u64 u = 0;
                if (is_square(static_cast<u128>(N - static_cast<i128>(d) * v * v), &u) &&
                    static_cast<i128>(u) <= params.U)
                    out.triples.push_back({d, w, static_cast<i64>(u), v});
            }
        }
    }
    std::sort(out.triples.begin(), out.triples.end());
    out.count = static_cast<i64>(out.triples.size());
    return out;
}

std::vector<TripleWitness> aggregate_triples(const WindowParams& params, WorkBudget* budget) {
    const auto window = sieve::prime_window(params.Z);
    std::vector<i64> ws;
    for (size_t i = 0; i < window.primes.size(); ++i)
        for (size_t j = i + 1; j < window.primes.size(); ++j) ws.push_back(window.primes[i] * window.primes[j]);
    std::sort(ws.begin(), ws.end());

    std::vector<TripleWitness> out;
    for (i64 V0 : dyadic_levels(params)) {
        const i64 v_end = std::min(2 * V0 - 1, params.V_floor);
        for (i64 w : ws) {
            const UInterval I = u_interval(w, V0, params);
            for (i64 v = V0; v <= v_end; ++v) {
                if (gcd(v, w) != 1) continue;
                if (budget) budget->spend(1, "aggregate_triples");
                sieve_u(params, w, v, I, [&](i64 u, i64 d) {
                    if (is_squarefree(d)) out.push_back({d, w, u, v});
                });
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TgResult t_g(const WindowParams& params, WorkBudget* budget) {
    TgResult out;
    out.triples = aggregate_triples(params, budget);
    const auto& tr = out.triples;
    const i64 g = params.g;

    std::map<i64, i64> per_d;
    for (const auto& t : tr) ++per_d[t.d];
    for (const auto& [d, r] : per_d) out.T += r * (r - 1);

    std::vector<i128> wg(tr.size()), rhs(tr.size());
    for (size_t i = 0; i < tr.size(); ++i) {
        wg[i] = checked_pow(tr[i].w, static_cast<unsigned>(g));
        rhs[i] = 4 * wg[i] - static_cast<i128>(tr[i].u) * tr[i].u;
    }
    for (size_t i = 0; i < tr.size(); ++i) {
        if (budget) budget->spend(tr.size(), "t_g");
        const auto& a = tr[i];
        for (size_t j = 0; j < tr.size(); ++j) {
            if (i == j) continue;
            const auto& b = tr[j];
            if (a.w == b.w && a.u == b.u && a.v == b.v) continue;
            if (gcd(a.w, a.v) != 1 || gcd(b.w, b.v) != 1) continue;
            const i128 va2 = static_cast<i128>(a.v) * a.v, vb2 = static_cast<i128>(b.v) * b.v;
            if (rhs[i] % va2 != 0 || rhs[j] % vb2 != 0) continue;
            const i128 lhs3 = checked_mul(va2, rhs[j]), rhs3 = checked_mul(vb2, rhs[i]);
            if (lhs3 != rhs3 || lhs3 == 0) continue;
            ++out.pairwise;

            const i128 diff = checked_mul(vb2, wg[i]) - checked_mul(va2, wg[j]);
            if (diff == 0)
                throw std::logic_error("t_g: v1^2 w2^g = v2^2 w1^g for a counted pair");
            const i128 m = static_cast<i128>(b.v) * a.u - static_cast<i128>(a.v) * b.u;
            const i128 p = static_cast<i128>(b.v) * a.u + static_cast<i128>(a.v) * b.u;
            if (checked_mul(4, diff) != checked_mul(m, p))
                throw std::logic_error("t_g: factorization identity fails for a counted pair");
            ++out.pair_identity_checked;

            if (gcd(a.w, b.w) != 1) {
                ++out.T0;
            } else {
                ++out.T3_by_delta[gcd(a.v, b.v)];
                out.coprime_pairs.emplace_back(i, j);
            }
        }
    }
    if (out.pairwise != out.T)
        throw std::logic_error("t_g: pairwise count " + std::to_string(out.pairwise) +
                               " != sum R(R-1) = " + std::to_string(out.T));
    return out;
}

bool is_perfect_cube(i64 n) {
    if (n < 0) return is_perfect_cube(-n);
    i64 r = static_cast<i64>(std::llround(std::cbrt(static_cast<double>(n))));
    for (i64 c = std::max<i64>(0, r - 1); c <= r + 1; ++c)
        if (static_cast<i128>(c) * c * c == n) return true;
    return false;
}

bool cube_pair_related(i64 y1, i64 y2) {
    if (y1 < 1 || y2 < 1) throw std::invalid_argument("cube_pair_related: inputs must be positive");
    if (gcd(y1, y2) != 1)
        throw std::invalid_argument("cube_pair_related: gcd(" + std::to_string(y1) + ", " + std::to_string(y2) +
                                    ") != 1");
    return is_perfect_cube(y1) && is_perfect_cube(y2);
}

i64 kernel(i64 k) {
    if (k < 1) throw std::invalid_argument("kernel: k must be positive");
    while (k % 2 == 0) k /= 2;
    return radical(k);
}

namespace {

// Products of powers of primes[i..] not exceeding limit.
i64 smooth_count(i64 limit, const std::vector<i64>& primes, size_t i) {
    if (i == primes.size()) return 1;
    i64 total = 0;
    for (i64 pe = 1; pe <= limit; pe *= primes[i]) {
        total += smooth_count(limit / pe, primes, i + 1);
        if (pe > limit / primes[i]) break;
    }
    return total;
}

}  // namespace

i64 kernel_count(i64 K, i64 kappa, const std::set<i64>& excluded) {
    if (K < 1 || kappa < 1 || kappa > K || !is_squarefree(kappa)) return 0;
    for (i64 p : excluded)
        if (kappa % p == 0) return 0;
    std::vector<i64> primes(excluded.begin(), excluded.end());
    for (const auto& pe : factorize(kappa)) primes.push_back(pe.p);
    return smooth_count(K / kappa, primes, 0);
}

KernelMax kernel_count_max(i64 K) {
    KernelMax best;
    if (K < 1) return best;
    // smallest prime factor table for factoring each kappa
    std::vector<std::int32_t> spf(static_cast<size_t>(K + 1), 0);
    for (i64 i = 2; i <= K; ++i) {
        if (spf[static_cast<size_t>(i)] != 0) continue;
        for (i64 j = i; j <= K; j += i)
            if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = static_cast<std::int32_t>(i);
    }
    std::vector<i64> primes;
    for (i64 kappa = 1; kappa <= K; kappa += 2) {
        primes.assign(1, 2);
        bool squarefree = true;
        for (i64 n = kappa; n > 1;) {
            const i64 p = spf[static_cast<size_t>(n)];
            n /= p;
            if (n % p == 0) {
                squarefree = false;
                break;
            }
            primes.push_back(p);
        }
        if (!squarefree) continue;
        const i64 c = smooth_count(K / kappa, primes, 0);
        if (c > best.max_count) best = {c, kappa};
    }
    return best;
}

std::string witness_csv(const SgResult& result) {
    std::ostringstream os;
    os << "d,p,p',u,v\n";
    for (const auto& w : result.witnesses) os << w.d << ',' << w.p << ',' << w.p2 << ',' << w.u << ',' << w.v << '\n';
    return os.str();
}

std::string triple_csv(const std::vector<TripleWitness>& triples) {
    std::ostringstream os;
    os << "d,w,u,v\n";
    for (const auto& t : triples) os << t.d << ',' << t.w << ',' << t.u << ',' << t.v << '\n';
    return os.str();
}

}  // namespace hgpart::repcount
