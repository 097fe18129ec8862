#include "doctest.h"

#include <random>

#include "hgpart/lattice.hpp"

using namespace hgpart;
using namespace hgpart::lattice;

namespace {

// Shortest norm and second minimum by scanning coefficients |n1|, |n2| <= R.
std::pair<i128, i128> oracle_minima(const Lattice2D& lat, int R) {
    i128 best1 = 0;
    Vec2 v1;
    for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b) {
            if (a == 0 && b == 0) continue;
            const Vec2 v{a * lat.b1.x + b * lat.b2.x, a * lat.b1.y + b * lat.b2.y};
            if (best1 == 0 || norm2(v) < best1) {
                best1 = norm2(v);
                v1 = v;
            }
        }
    i128 best2 = 0;
    for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b) {
            const Vec2 v{a * lat.b1.x + b * lat.b2.x, a * lat.b1.y + b * lat.b2.y};
            if (cross(v, v1) == 0) continue;
            if (best2 == 0 || norm2(v) < best2) best2 = norm2(v);
        }
    return {best1, best2};
}

i64 oracle_disc(const Lattice2D& lat, i64 x) {
    Lattice2D centred = lat;
    centred.origin = {0, 0};
    i64 n = 0;
    for (i64 a = -x; a <= x; ++a)
        for (i64 b = -x; b <= x; ++b)
            if (a * a + b * b <= x * x && contains(centred, {a, b})) ++n;
    return n;
}

std::vector<i64> oracle_cube_roots(i64 a, i64 q) {
    std::vector<i64> out;
    for (i64 x = 0; x < q; ++x)
        if (mod(static_cast<i128>(x) * x % q * x - a, q) == 0) out.push_back(x);
    return out;
}

bool raw_congruences(i64 y1, i64 y2, i64 k, i64 q1, i64 q2, i64 ell, i64 w1, i64 w2) {
    const i128 W1 = static_cast<i128>(w1) * w1 * w1, W2 = static_cast<i128>(w2) * w2 * w2;
    const i128 Y1 = static_cast<i128>(y1) * y1, Y2 = static_cast<i128>(y2) * y2, K = static_cast<i128>(k) * k;
    return (4 * Y2 * W1 - K) % q1 == 0 && (4 * Y1 * W2 - K) % q2 == 0 && (Y2 * W1 - Y1 * W2) % ell == 0;
}

}  // namespace

TEST_CASE("congruence lattices and reduction examples") {
    const auto z2 = lattice_from_congruence(1, 0);
    CHECK(z2.det == 1);
    auto [r1, m1] = gauss_reduce(z2);
    CHECK(m1.norm1 == 1);
    CHECK(m1.norm2 == 1);

    const auto [r5, m5] = gauss_reduce(lattice_from_congruence(5, 2));
    CHECK(r5.det == 5);
    CHECK(m5.norm1 == 5);
    CHECK(m5.norm2 == 5);
    CHECK(m5.v1 == Vec2{1, 2});
    CHECK(m5.v2 == Vec2{2, -1});

    const auto l7 = lattice_from_congruence(7, 0);
    CHECK(l7.b1 == Vec2{1, 0});
    CHECK(l7.b2 == Vec2{0, 7});
    CHECK(gauss_reduce(l7).second.norm1 == 1);

    const auto [rb, mb] = gauss_reduce(lattice_from_basis({100, 1}, {99, 1}));
    CHECK(mb.norm1 == 1);
    // (1, 0) and (0, 1) tie on norm; the lexicographic rule picks (0, 1)
    CHECK(mb.v1 == Vec2{0, 1});
    CHECK(mb.v2 == Vec2{1, 0});
    CHECK(rb.det == 1);

    CHECK_THROWS_AS(lattice_from_congruence(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(lattice_from_congruence(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(lattice_from_basis({1, 2}, {2, 4}), std::invalid_argument);
}

TEST_CASE("reduction against coefficient scans on random lattices") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<i64> coord(-300, 300);
    for (int trial = 0; trial < 200; ++trial) {
        Vec2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
        if (cross(a, b) == 0) continue;
        const auto lat = lattice_from_basis(a, b);
        const auto [red, m] = gauss_reduce(lat);
        CHECK(red.det == lat.det);
        CHECK(std::llabs(static_cast<long long>(cross(red.b1, red.b2))) == lat.det);
        CHECK(norm2(red.b1) <= norm2(red.b2));
        CHECK(2 * (dot(red.b1, red.b2) < 0 ? -dot(red.b1, red.b2) : dot(red.b1, red.b2)) <= norm2(red.b1));
        CHECK(minkowski_holds(m, lat.det));
        // the reduced basis spans the input lattice
        CHECK(contains(lat, red.b1));
        CHECK(contains(lat, red.b2));
        const auto [o1, o2] = oracle_minima(red, 6);
        CHECK(m.norm1 == o1);
        CHECK(m.norm2 == o2);
    }
}

TEST_CASE("disc counts") {
    CHECK(count_points(lattice_from_congruence(1, 0), 10) == 317);
    CHECK(count_points(lattice_from_congruence(5, 2), 10) == oracle_disc(lattice_from_congruence(5, 2), 10));
    CHECK(count_points(lattice_from_congruence(5, 2), 2.2L) == 1);
    for (i64 ell = 1; ell <= 40; ++ell)
        for (i64 b = 0; b < ell; b += 3) {
            const auto lat = lattice_from_congruence(ell, b);
            for (i64 x : {3, 10, 25}) CHECK(count_points(lat, static_cast<long double>(x)) == oracle_disc(lat, x));
        }
    WorkBudget tiny(10);
    CHECK_THROWS_AS(count_points(lattice_from_congruence(1, 0), 100, &tiny), BudgetExceeded);
    CHECK_THROWS_AS(count_points(lattice_from_congruence(1, 0), 0), std::invalid_argument);
}

TEST_CASE("cube roots modulo odd square-free q") {
    CHECK(cube_roots_mod(1, 7) == std::vector<i64>{1, 2, 4});
    CHECK(cube_roots_mod(2, 5) == std::vector<i64>{3});
    CHECK(cube_roots_mod(0, 3) == std::vector<i64>{0});
    CHECK(cube_roots_mod(5, 1) == std::vector<i64>{0});
    CHECK_THROWS_AS(cube_roots_mod(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(cube_roots_mod(1, 9), std::invalid_argument);
    for (i64 q = 1; q <= 400; q += 2) {
        if (!is_squarefree(q)) continue;
        for (i64 a = 0; a < q; ++a) CHECK(cube_roots_mod(a, q) == oracle_cube_roots(a, q));
    }
    // primes with a large 3-part in p - 1
    for (i64 p : {109, 163, 487, 1459, 2917, 39367}) {
        for (i64 a = 1; a < 200; ++a) CHECK(cube_roots_mod(a, p) == oracle_cube_roots(a, p));
    }
}

TEST_CASE("lattice systems") {
    const auto trivial = lattice_system(1, 1, 1);
    REQUIRE(trivial.cosets.size() == 1);
    CHECK(trivial.det() == 1);
    CHECK(contains(trivial.cosets[0].lattice, {123, -45}));

    // q1 = q2 = 1, ell = 7; (y2/y1)^2 = 1 is a cube mod 7, 4 is not
    for (i64 y2 : {1, 2}) {
        const auto toy = lattice_system(1, y2, 7);
        CHECK(toy.ell == 7);
        CHECK(toy.cosets.size() == (y2 == 1 ? 3 : 0));
        for (const auto& c : toy.cosets) CHECK(c.lattice.det == 7);
        for (i64 w1 = 0; w1 < 7; ++w1)
            for (i64 w2 = 0; w2 < 7; ++w2) {
                if (gcd(w1, w2) != 1) continue;
                bool in = false;
                for (const auto& c : toy.cosets) in = in || contains(c.lattice, {w1, w2});
                CHECK(in == raw_congruences(1, y2, 7, 1, 1, 7, w1, w2));
            }
    }

    CHECK_THROWS_AS(lattice_system(6, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(lattice_system(3, 5, 9), std::invalid_argument);
}

TEST_CASE("lattice system coset union equals the congruence scan") {
    int systems = 0;
    for (i64 y1 = 1; y1 <= 21; ++y1)
        for (i64 y2 = 1; y2 <= 21; ++y2)
            for (i64 k = 1; k <= 35; k += 2) {
                if (gcd(y1, y2) != 1) continue;
                LatticeSystem sys;
                try {
                    sys = lattice_system(y1, y2, k);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                if (sys.det() > 400) continue;
                ++systems;
                CHECK(sys.cosets.size() <= static_cast<size_t>(std::pow(3, omega(sys.q1) + omega(sys.q2) + omega(sys.ell))));
                const i64 P = sys.q1 * sys.ell > sys.q2 * sys.ell ? sys.q1 * sys.ell : sys.q2 * sys.ell;
                for (i64 w1 = 0; w1 < P; ++w1)
                    for (i64 w2 = 0; w2 < P; ++w2) {
                        bool in = false;
                        for (const auto& c : sys.cosets) in = in || contains(c.lattice, {w1, w2});
                        const bool raw = raw_congruences(y1, y2, k, sys.q1, sys.q2, sys.ell, w1, w2);
                        CHECK(satisfies_system(sys, w1, w2) == raw);
                        if (gcd(w1, w2) == 1) CHECK(in == raw);
                    }
            }
    MESSAGE(systems << " systems scanned");
    CHECK(systems > 100);
}

TEST_CASE("coset shifts into the box") {
    const auto sys = lattice_system(5, 7, 3);
    for (i64 W : {1, 4, 9, 36, 100}) {
        for (const auto& c : sys.cosets) {
            const auto got = shift_into_box(c, W);
            std::optional<Vec2> want;
            for (i64 x = W; x < 4 * W && !want; ++x)
                for (i64 y = W; y < 4 * W && !want; ++y)
                    if (contains(c.lattice, {x, y})) want = Vec2{x, y};
            CHECK(got == want);
        }
    }
    CHECK_THROWS_AS(shift_into_box(sys.cosets.front(), 0), std::invalid_argument);
    CHECK(system_min_norm1(sys) > 0);
}
