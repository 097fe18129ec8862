#include "hgpart/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hgpart::lattice {

namespace {

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 narrow(i128 v, const char* where) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(std::string(where) + ": coordinate overflow");
    return static_cast<i64>(v);
}

Vec2 combo(i128 n1, const Vec2& a, i128 n2, const Vec2& b) {
    return {narrow(n1 * a.x + n2 * b.x, "lattice"), narrow(n1 * a.y + n2 * b.y, "lattice")};
}

Vec2 sign_normalized(Vec2 v) {
    if (v.x < 0 || (v.x == 0 && v.y < 0)) return {-v.x, -v.y};
    return v;
}

bool shorter(const Vec2& a, const Vec2& b) {
    const i128 na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
}

// Hermite form: the lattice is {(a t, beta t + c s)}.
struct Hermite {
    i64 a, beta, c;
};

Hermite hermite(const Lattice2D& lat) {
    i64 x, y;
    const i64 a = ext_gcd(lat.b1.x, lat.b2.x, x, y);
    if (a == 0) throw std::invalid_argument("degenerate lattice");
    const i64 c = lat.det / a;
    const i64 beta = mod(static_cast<i128>(x) * lat.b1.y + static_cast<i128>(y) * lat.b2.y, c);
    return {a, beta, c};
}

}  // namespace

long double Minima::lambda1() const { return std::sqrt(static_cast<long double>(norm1)); }
long double Minima::lambda2() const { return std::sqrt(static_cast<long double>(norm2)); }

Lattice2D lattice_from_basis(Vec2 b1, Vec2 b2) {
    const i128 det = cross(b1, b2);
    if (det == 0) throw std::invalid_argument("lattice basis is degenerate");
    return {b1, b2, narrow(det < 0 ? -det : det, "lattice_from_basis"), {0, 0}};
}

Lattice2D lattice_from_congruence(i64 ell, i64 b) {
    if (ell < 1) throw std::invalid_argument("lattice_from_congruence: ell must be >= 1");
    if (b < 0 || b >= ell) throw std::invalid_argument("lattice_from_congruence: need 0 <= b < ell");
    return lattice_from_basis({1, b}, {0, ell});
}

bool contains(const Lattice2D& lat, Vec2 point) {
    const Vec2 p{point.x - lat.origin.x, point.y - lat.origin.y};
    const i128 det = cross(lat.b1, lat.b2);
    return cross(p, lat.b2) % det == 0 && cross(lat.b1, p) % det == 0;
}

std::pair<Lattice2D, Minima> gauss_reduce(const Lattice2D& lat) {
    Vec2 b1 = lat.b1, b2 = lat.b2;
    if (cross(b1, b2) == 0) throw std::invalid_argument("gauss_reduce: degenerate basis");
    while (true) {
        if (norm2(b1) > norm2(b2)) std::swap(b1, b2);
        const i128 n = norm2(b1);
        const i128 q = floor_div(2 * dot(b1, b2) + n, 2 * n);
        if (q == 0) break;
        b2 = combo(1, b2, -q, b1);
    }
    Minima m;
    bool have1 = false;
    for (int n1 = -2; n1 <= 2; ++n1)
        for (int n2 = -2; n2 <= 2; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const Vec2 v = sign_normalized(combo(n1, b1, n2, b2));
            if (!have1 || shorter(v, m.v1)) {
                m.v1 = v;
                have1 = true;
            }
        }
    bool have2 = false;
    for (int n1 = -2; n1 <= 2; ++n1)
        for (int n2 = -2; n2 <= 2; ++n2) {
            const Vec2 v = sign_normalized(combo(n1, b1, n2, b2));
            if (cross(v, m.v1) == 0) continue;
            if (!have2 || shorter(v, m.v2)) {
                m.v2 = v;
                have2 = true;
            }
        }
    m.norm1 = norm2(m.v1);
    m.norm2 = norm2(m.v2);
    Lattice2D reduced{m.v1, m.v2, lat.det, lat.origin};
    return {reduced, m};
}

bool minkowski_holds(const Minima& m, i64 det) {
    const i128 prod = checked_mul(m.norm1, m.norm2);
    const i128 det2 = static_cast<i128>(det) * det;
    return det2 <= prod && checked_mul(3, prod) <= checked_mul(4, det2);
}

i64 count_points(const Lattice2D& lat, long double radius, WorkBudget* budget) {
    if (!(radius > 0)) throw std::invalid_argument("count_points: radius must be positive");
    const auto [red, minima] = gauss_reduce(lat);
    const Vec2 b1 = red.b1, b2 = red.b2;
    const long double r2 = radius * radius;
    const long double A = static_cast<long double>(norm2(b1));
    const long double D = static_cast<long double>(dot(b1, b2));
    const long double Bn = static_cast<long double>(norm2(b2));
    const i64 n2_max = static_cast<i64>(radius * std::sqrt(A) / static_cast<long double>(red.det)) + 1;
    i64 count = 0;
    for (i64 n2 = -n2_max; n2 <= n2_max; ++n2) {
        const long double B = static_cast<long double>(n2) * D;
        const long double C = static_cast<long double>(n2) * static_cast<long double>(n2) * Bn - r2;
        const long double disc = B * B - A * C;
        if (disc < 0) continue;
        const long double root = std::sqrt(disc);
        const i64 lo = static_cast<i64>(std::floor((-B - root) / A)) - 1;
        const i64 hi = static_cast<i64>(std::ceil((-B + root) / A)) + 1;
        if (budget) budget->spend(static_cast<u64>(hi - lo + 1), "count_points");
        for (i64 n1 = lo; n1 <= hi; ++n1) {
            const Vec2 v = combo(n1, b1, n2, b2);
            if (static_cast<long double>(norm2(v)) <= r2) ++count;
        }
    }
    return count;
}

namespace {

std::vector<i64> cube_roots_prime(i64 a, i64 p) {
    a = mod(a, p);
    const u64 up = static_cast<u64>(p);
    if (a == 0) return {0};
    if (p == 3) return {a};
    if (p % 3 == 2) return {static_cast<i64>(powmod(static_cast<u64>(a), (2 * up - 1) / 3, up))};
    if (powmod(static_cast<u64>(a), (up - 1) / 3, up) != 1) return {};

    // p - 1 = 3^s t; the 3-Sylow subgroup is cyclic, generated by gamma.
    u64 t = up - 1;
    int s = 0;
    while (t % 3 == 0) {
        t /= 3;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (up - 1) / 3, up) == 1) ++z;
    const u64 gamma = powmod(z, t, up);
    u64 three_s1 = 1;
    for (int i = 0; i + 1 < s; ++i) three_s1 *= 3;
    const u64 omega = powmod(gamma, three_s1, up);

    const u64 e = static_cast<u64>(inv_mod(3, static_cast<i64>(t)));
    const u64 j = (3 * e - 1) / t;
    const u64 x0 = powmod(static_cast<u64>(a), e, up);
    const u64 c = powmod(static_cast<u64>(a), t, up);
    const u64 tau = powmod(static_cast<u64>(inv_mod(static_cast<i64>(c), p)), j, up);

    // discrete log of tau to base gamma, one base-3 digit at a time
    const u64 gamma_inv = static_cast<u64>(inv_mod(static_cast<i64>(gamma), p));
    u64 L = 0, three_i = 1;
    for (int i = 0; i < s; ++i) {
        u64 h = mulmod(tau, powmod(gamma_inv, L, up), up);
        u64 exp = 1;
        for (int k = 0; k + 1 + i < s; ++k) exp *= 3;
        h = powmod(h, exp, up);
        u64 digit = 0;
        for (u64 w = 1; w != h; w = mulmod(w, omega, up)) {
            if (++digit > 2) throw std::logic_error("cube_roots_mod: discrete log failed");
        }
        L += digit * three_i;
        three_i *= 3;
    }
    if (L % 3 != 0) throw std::logic_error("cube_roots_mod: residue is not a cube in the 3-Sylow subgroup");
    const u64 r = mulmod(x0, powmod(gamma, L / 3, up), up);
    const u64 r2 = mulmod(r, omega, up);
    const u64 r3 = mulmod(r2, omega, up);
    std::vector<i64> out = {static_cast<i64>(r), static_cast<i64>(r2), static_cast<i64>(r3)};
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<i64> cube_roots_mod(i64 a, i64 q) {
    if (q < 1 || q % 2 == 0 || !is_squarefree(q))
        throw std::invalid_argument("cube_roots_mod: q = " + std::to_string(q) + " must be odd and square-free");
    std::vector<i64> acc = {0};
    i64 acc_mod = 1;
    for (const auto& pe : factorize(q)) {
        const auto local = cube_roots_prime(a, pe.p);
        std::vector<i64> next;
        for (i64 x : acc)
            for (i64 y : local) next.push_back(crt_pair(x, acc_mod, y, pe.p).first);
        acc = std::move(next);
        acc_mod *= pe.p;
        if (acc.empty()) break;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

LatticeSystem lattice_system(i64 y1, i64 y2, i64 k) {
    if (y1 < 1 || y2 < 1 || k < 1) throw std::invalid_argument("lattice_system: y1, y2, k must be positive");
    if (gcd(y1, y2) != 1) throw std::invalid_argument("lattice_system: gcd(y1, y2) != 1");
    auto odd_kernel = [](i64 n) {
        while (n % 2 == 0) n /= 2;
        return radical(n);
    };
    LatticeSystem sys;
    sys.y1 = y1;
    sys.y2 = y2;
    sys.k = k;
    sys.q1 = odd_kernel(y1);
    sys.q2 = odd_kernel(y2);
    sys.ell = odd_kernel(k);
    if (gcd(sys.q1, sys.q2) != 1 || gcd(sys.q1, sys.ell) != 1 || gcd(sys.q2, sys.ell) != 1)
        throw std::invalid_argument("lattice_system: kernels q1 = " + std::to_string(sys.q1) +
                                    ", q2 = " + std::to_string(sys.q2) + ", ell = " + std::to_string(sys.ell) +
                                    " are not pairwise coprime");
    const i64 k2_q1 = mod(static_cast<i128>(k % sys.q1) * (k % sys.q1), sys.q1);
    const i64 k2_q2 = mod(static_cast<i128>(k % sys.q2) * (k % sys.q2), sys.q2);
    sys.a1 = sys.q1 == 1 ? 0 : mod(static_cast<i128>(k2_q1) * inv_mod(mod(4 * static_cast<i128>(y2) * y2, sys.q1), sys.q1), sys.q1);
    sys.a2 = sys.q2 == 1 ? 0 : mod(static_cast<i128>(k2_q2) * inv_mod(mod(4 * static_cast<i128>(y1) * y1, sys.q2), sys.q2), sys.q2);
    if (sys.ell > 1) {
        const i64 ratio = mod(static_cast<i128>(y2) * inv_mod(y1, sys.ell), sys.ell);
        sys.a = mod(static_cast<i128>(ratio) * ratio, sys.ell);
    }

    const auto R1 = cube_roots_mod(sys.a1, sys.q1);
    const auto R2 = cube_roots_mod(sys.a2, sys.q2);
    const auto B = cube_roots_mod(sys.a, sys.ell);
    const i64 m2 = sys.q2 * sys.ell;
    for (i64 b : B) {
        const i64 beta = crt_pair(0, sys.q2, mod(static_cast<i128>(b) * sys.q1, sys.ell), sys.ell).first;
        const Lattice2D base = lattice_from_basis({sys.q1, beta}, {0, m2});
        for (i64 r1 : R1) {
            const i64 c1 = crt_pair(r1, sys.q1, 0, sys.ell).first;
            for (i64 r2 : R2) {
                const i64 c2 = crt_pair(r2, sys.q2, 0, sys.ell).first;
                Coset cs{base, r1, r2, b};
                cs.lattice.origin = {c1, c2};
                sys.cosets.push_back(cs);
            }
        }
    }
    return sys;
}

bool satisfies_system(const LatticeSystem& sys, i64 w1, i64 w2) {
    auto cube = [](i64 w, i64 m) {
        const i64 r = mod(w, m);
        return mod(static_cast<i128>(r) * r % m * r, m);
    };
    if (cube(w1, sys.q1) != mod(sys.a1, sys.q1)) return false;
    if (cube(w2, sys.q2) != mod(sys.a2, sys.q2)) return false;
    const i64 l = sys.ell;
    const i64 lhs = mod(static_cast<i128>(mod(static_cast<i128>(sys.y2) * sys.y2, l)) * cube(w1, l), l);
    const i64 rhs = mod(static_cast<i128>(mod(static_cast<i128>(sys.y1) * sys.y1, l)) * cube(w2, l), l);
    return lhs == rhs;
}

std::optional<Vec2> shift_into_box(const Coset& coset, i64 W) {
    if (W < 1) throw std::invalid_argument("shift_into_box: W must be positive");
    const Lattice2D& lat = coset.lattice;
    const Hermite h = hermite(lat);
    for (i64 x = W + mod(lat.origin.x - W, h.a); x < 4 * W; x += h.a) {
        const i128 t = (static_cast<i128>(x) - lat.origin.x) / h.a;
        const i64 y0 = mod(static_cast<i128>(lat.origin.y) + t * h.beta, h.c);
        const i64 y = W + mod(static_cast<i128>(y0) - W, h.c);
        if (y < 4 * W) return Vec2{x, y};
    }
    return std::nullopt;
}

i128 system_min_norm1(const LatticeSystem& sys) {
    i128 best = 0;
    for (const auto& c : sys.cosets) {
        const i128 n = gauss_reduce(c.lattice).second.norm1;
        if (best == 0 || n < best) best = n;
    }
    return best;
}

}  // namespace hgpart::lattice
