#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hgpart/moments.hpp"
#include "hgpart/quadforms.hpp"
#include "hgpart/sieve.hpp"

using namespace hgpart;
using namespace hgpart::moments;

namespace {

struct OracleRow {
    i64 d, delta, h;
    quadforms::GPart g3, g5;
};

// Class numbers and g-parts straight from the full group structure.
OracleRow oracle_row(i64 d) {
    const auto group = quadforms::enumerate_class_group(quadforms::fundamental_discriminant(d).delta);
    return {d, group.disc.delta, group.h, quadforms::g_part(group, 3), quadforms::g_part(group, 5)};
}

const SweepTable& small_table() {
    static const SweepTable t = sweep(1, 4000, {3, 5}, {.jobs = 1, .chunk = 700, .csv_path = {}});
    return t;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hgpart_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("rationals") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational::parse("3/2").str() == "3/2");
    CHECK(Rational::parse("4").is_integer());
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("sweep examples") {
    const auto t = sweep(1, 11, {3});
    CHECK(t.d == std::vector<i64>{1, 2, 3, 5, 6, 7, 10});
    CHECK(t.h[0] == 1);
    CHECK(t.value(0, 3, Column::torsion) == 1);
    const auto u = sweep(23, 24, {3, 5});
    REQUIRE(u.size() == 1);
    CHECK(u.delta[0] == -23);
    CHECK(u.h[0] == 3);
    CHECK(u.value(0, 3, Column::torsion) == 3);
    CHECK(u.value(0, 5, Column::sylow) == 1);
    CHECK(sweep(8, 10, {3}).size() == 0);
    CHECK_THROWS_AS(sweep(0, 10, {3}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(1, 10, {4}), std::invalid_argument);
    CHECK_THROWS_AS(t.g_index(5), std::invalid_argument);
}

TEST_CASE("sweep rows agree with full class-group enumeration") {
    const auto& t = small_table();
    require_coverage(t, 1, 4000);
    CHECK(static_cast<i64>(t.size()) == sieve::squarefree_count(1, 4000));
    for (size_t r = 0; r < t.size(); ++r) {
        const auto o = oracle_row(t.d[r]);
        CHECK(t.delta[r] == o.delta);
        CHECK(t.h[r] == o.h);
        CHECK(t.value(r, 3, Column::torsion) == o.g3.torsion_count);
        CHECK(t.value(r, 3, Column::sylow) == o.g3.sylow_order);
        CHECK(t.value(r, 5, Column::torsion) == o.g5.torsion_count);
        CHECK(t.value(r, 5, Column::sylow) == o.g5.sylow_order);
    }
}

TEST_CASE("parallel sweep merges in order") {
    const auto a = sweep(5000, 9000, {3, 5}, {.jobs = 1, .chunk = 1000, .csv_path = {}});
    const auto b = sweep(5000, 9000, {3, 5}, {.jobs = 3, .chunk = 333, .csv_path = {}});
    CHECK(a.d == b.d);
    CHECK(a.h == b.h);
    CHECK(a.torsion == b.torsion);
    CHECK(a.sylow == b.sylow);
}

TEST_CASE("sweep persistence and resume") {
    const auto path = temp_file("sweep.csv");
    std::filesystem::remove(path);
    const auto fresh = sweep(1, 3000, {3}, {.jobs = 1, .chunk = 400, .csv_path = {}});
    std::ostringstream expect;
    write_csv(expect, fresh);

    sweep(1, 1200, {3}, {.jobs = 1, .chunk = 400, .csv_path = path.string()});
    {
        // tear the last line as an interrupted run would
        std::ifstream in(path);
        std::string all((std::istreambuf_iterator<char>(in)), {});
        all.resize(all.size() - 3);
        std::ofstream(path, std::ios::trunc) << all;
    }
    const auto resumed = sweep(1, 3000, {3}, {.jobs = 2, .chunk = 500, .csv_path = path.string()});
    CHECK(resumed.d == fresh.d);
    CHECK(resumed.torsion == fresh.torsion);
    std::ifstream in(path);
    const std::string on_disk((std::istreambuf_iterator<char>(in)), {});
    CHECK(on_disk == expect.str());

    const auto back = read_csv(path.string(), 1, 3000);
    CHECK(back.g_list == std::vector<i64>{3});
    CHECK(back.d == fresh.d);
    CHECK(back.sylow == fresh.sylow);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(sweep(1, 100, {3}, {.jobs = 1, .chunk = 50, .csv_path = "/nonexistent-dir/x.csv"}), SweepIOError);
    CHECK(csv_header({3, 5}) == "d,delta,h,h3_torsion,h3_sylow,h5_torsion,h5_sylow");
}

TEST_CASE("coverage gaps abort aggregation") {
    auto t = sweep(1, 200, {3});
    const size_t drop = t.lower_row(101);
    t.d.erase(t.d.begin() + static_cast<long>(drop));
    t.delta.erase(t.delta.begin() + static_cast<long>(drop));
    t.h.erase(t.h.begin() + static_cast<long>(drop));
    t.torsion[0].erase(t.torsion[0].begin() + static_cast<long>(drop));
    t.sylow[0].erase(t.sylow[0].begin() + static_cast<long>(drop));
    CHECK_THROWS_AS(moment_sum(t, 3, Rational(1), 150), CoverageGap);
    CHECK_THROWS_AS(tail_count(t, 3, Rational(1), 60), CoverageGap);
    CHECK_NOTHROW(moment_sum(t, 3, Rational(1), 100));
    try {
        require_coverage(t, 1, 200);
    } catch (const CoverageGap& e) {
        CHECK(e.missing_d == 101);
    }
}

TEST_CASE("moment sums") {
    const auto& t = small_table();
    CHECK(*moment_sum(t, 3, Rational(0), 100).exact == 61);
    i64 k1 = 0, k2 = 0;
    long double k32 = 0;
    for (i64 d = 1; d < 100; ++d) {
        if (!is_squarefree(d)) continue;
        const auto o = oracle_row(d);
        k1 += o.g3.torsion_count;
        k2 += o.g3.torsion_count * o.g3.torsion_count;
        k32 += std::pow(static_cast<long double>(o.g3.torsion_count), 1.5L);
    }
    CHECK(*moment_sum(t, 3, Rational(1), 100).exact == k1);
    CHECK(*moment_sum(t, 3, Rational(2), 100).exact == k2);
    CHECK(k2 >= k1);
    const auto frac = moment_sum(t, 3, Rational(3, 2), 100);
    CHECK_FALSE(frac.exact.has_value());
    CHECK(std::fabs(static_cast<double>((frac.value - k32) / k32)) < 1e-9);

    // fundamental mode: every fundamental discriminant with |delta| < X
    i64 fund = 0, fund_count = 0;
    for (i64 D = 3; D < 4000; ++D) {
        if (!quadforms::is_negative_fundamental(-D)) continue;
        ++fund_count;
        fund += quadforms::g_part(quadforms::enumerate_class_group(-D), 3).torsion_count;
    }
    const auto fm = moment_sum(t, 3, Rational(1), 4000, Column::torsion, Mode::fundamental);
    CHECK(*fm.exact == fund);
    CHECK(fm.terms == fund_count);
    CHECK(*moment_sum(t, 3, Rational(1), 4000, Column::sylow).exact >=
          *moment_sum(t, 3, Rational(1), 4000, Column::torsion).exact);

    // log-convexity in k: S(2)^2 <= S(1) S(3)
    const long double s1 = moment_sum(t, 3, Rational(1), 4000).value;
    const long double s2 = moment_sum(t, 3, Rational(2), 4000).value;
    const long double s3 = moment_sum(t, 3, Rational(3), 4000).value;
    CHECK(s2 * s2 <= s1 * s3);
}

TEST_CASE("tail counts") {
    const auto& t = small_table();
    CHECK(tail_count(t, 3, Rational(0), 100).count == sieve::squarefree_count(100, 200));
    i64 want = 0;
    for (i64 d : sieve::squarefree_range(100, 200))
        if (quadforms::reduced_forms(quadforms::fundamental_discriminant(d).delta).size() % 3 == 0) ++want;
    CHECK(tail_count(t, 3, Rational(1), 100).count == want);
    CHECK(tail_count(t, 3, Rational(1000), 100).count == 0);
    i64 prev = tail_count(t, 3, Rational(0), 1000).count;
    for (i64 H = 1; H <= 30; ++H) {
        const i64 c = tail_count(t, 3, Rational(H), 1000).count;
        CHECK(c <= prev);
        prev = c;
    }
    CHECK(tail_count(t, 3, Rational(5, 2), 1000).count == tail_count(t, 3, Rational(2), 1000).count);
}

TEST_CASE("dyadic majorant") {
    const auto& t = small_table();
    for (const Rational& k : {Rational(1), Rational(2), Rational(4), Rational(3, 2)}) {
        for (i64 X : {100, 1000, 1999}) {
            const auto dm = dyadic_moment(t, 3, k, X);
            CHECK(dm.sandwich_holds());
            CHECK(dm.direct == doctest::Approx(static_cast<double>(dm.direct_above_one + dm.unit_mass)));
        }
    }
    const auto d4 = dyadic_moment(t, 3, Rational(4), 100);
    CHECK(d4.dyadic <= 16 * d4.direct_above_one);

    // k = 0: sum of N(2^j) counts, for each d, the dyadic H = 2^j below h
    const auto d0 = dyadic_moment(t, 3, Rational(0), 1000);
    i64 tele = 0;
    for (size_t r = t.lower_row(1000); r < t.size() && t.d[r] < 2000; ++r)
        for (i64 H = 1; H < t.value(r, 3, Column::torsion); H *= 2) ++tele;
    CHECK(d0.dyadic == doctest::Approx(static_cast<double>(tele)));
    i64 diff = 0;
    for (size_t j = 0; j < d0.tails.size(); ++j)
        diff += d0.tails[j].count - (j + 1 < d0.tails.size() ? d0.tails[j + 1].count : 0);
    CHECK(diff == tail_count(t, 3, Rational(1), 1000).count);

    // g = 5 on [10, 20): every 5-part is trivial
    const auto triv = dyadic_moment(t, 5, Rational(2), 10);
    CHECK(triv.dyadic == 0);
    CHECK(triv.tails.empty());
    CHECK(triv.unit_mass == triv.terms);
    CHECK(triv.direct == doctest::Approx(static_cast<double>(triv.terms)));
}

TEST_CASE("dyadic constant 2^k is too small, 4^k/(2^k-1) is attained in the limit") {
    // synthetic table where every torsion count is 9
    SweepTable t = sweep(1, 40, {3});
    for (auto& v : t.torsion[0]) v = 9;
    const auto dm = dyadic_moment(t, 3, Rational(1), 10);
    CHECK(dm.dyadic == doctest::Approx(30.0 * static_cast<double>(dm.terms)));
    CHECK(dm.dyadic > 2 * dm.direct_above_one);
    CHECK(dm.sandwich_holds());
}

TEST_CASE("theoretical exponents") {
    CHECK(theoretical_exponent(5, Rational(1)).sigma == Rational(5, 4));
    CHECK(theoretical_exponent(5, Rational(2)).sigma == Rational(3, 2));
    CHECK(theoretical_exponent(5, Rational(2)).sigma == Rational(2) - Rational(3, 6));
    CHECK(theoretical_exponent(7, Rational(1)).sigma == Rational(21, 16));
    CHECK(theoretical_exponent(3, Rational(4)).sigma == Rational(11, 6));
    CHECK(theoretical_exponent(3, Rational(2)).sigma == Rational(23, 18));
    CHECK(theoretical_exponent(3, Rational(6)).which == ExponentCase::pointwise);
    CHECK_THROWS_AS(theoretical_exponent(5, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_exponent(4, Rational(1)), std::invalid_argument);
    for (i64 g : {5, 7, 11, 13}) {
        // k = 1 reproduces 3/2 - 3/(2g + 2)
        CHECK(theoretical_exponent(g, Rational(1)).sigma == Rational(3, 2) - Rational(3, 2 * g + 2));
        const Rational b1(g * g - 1, 2 * g - 1), b2(g + 1);
        const auto e1 = theoretical_exponent(g, b1);
        CHECK(*e1.sigma1 == *e1.sigma2);
        CHECK(e1.which == ExponentCase::sigma1);
        const auto e2 = theoretical_exponent(g, b2);
        CHECK(*e2.sigma2 == *e2.sigma3);
        CHECK(e2.which == ExponentCase::sigma2);
        CHECK(theoretical_exponent(g, b2 + Rational(1, 1000)).which == ExponentCase::sigma3);
        const Rational eps(1, 1000000);
        for (const Rational& b : {b1, b2}) {
            const auto lo = theoretical_exponent(g, b - eps).sigma.value();
            const auto hi = theoretical_exponent(g, b + eps).sigma.value();
            CHECK(std::fabs(static_cast<double>(hi - lo)) < 1e-5);
        }
        // the case label agrees with the maximising sigma
        for (i64 kn = 4; kn <= 80; ++kn) {
            const auto e = theoretical_exponent(g, Rational(kn, 4));
            const Rational chosen = e.which == ExponentCase::sigma1 ? *e.sigma1
                                    : e.which == ExponentCase::sigma2 ? *e.sigma2
                                                                      : *e.sigma3;
            CHECK(chosen == e.sigma);
        }
    }
}

TEST_CASE("optimal Z") {
    CHECK(optimal_Z(4096, 5).Z == 8);
    CHECK(optimal_Z(256, 3).Z == 8);
    CHECK(optimal_Z(1000000, 7).Z == 13);
    for (i64 g : {3, 5, 7})
        for (i64 X = 2; X < 2000000; X = X * 3 + 1) {
            const auto z = optimal_Z(X, g);
            CHECK(z.ratio >= 1);
            if (z.Z >= 2) CHECK(z.within_audit);
        }
    CHECK_THROWS_AS(optimal_Z(1, 3), std::invalid_argument);
}

TEST_CASE("exponent fits") {
    const auto sq = fit_exponent({{10, 100}, {100, 1e4}, {1000, 1e6}});
    CHECK(std::fabs(sq.slope - 2.0) < 1e-12);
    CHECK(sq.r2 == doctest::Approx(1.0));
    const auto lin = fit_exponent({{1e3, 7e3}, {1e4, 7e4}, {1e6, 7e6}});
    CHECK(std::fabs(lin.slope - 1.0) < 1e-12);
    CHECK(lin.residuals.size() == 3);
    CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{5, 1}, {5, 2}, {5, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 0}, {3, 3}}), std::invalid_argument);
}

TEST_CASE("Davenport-Heilbronn average") {
    const auto& t = small_table();
    const auto a = dh_average(t, 4000);
    CHECK(a.value > 1.0);
    CHECK(a.value < 2.0);
    CHECK(a.count == moment_sum(t, 3, Rational(0), 4000, Column::torsion, Mode::fundamental).terms);
    CHECK_THROWS_AS(dh_average(t, 99), std::invalid_argument);
    CHECK_THROWS_AS(dh_average(t, 5000), CoverageGap);
}

TEST_CASE("moment report") {
    const auto& t = small_table();
    const auto rep = moment_report(t, 3, Rational(1), {1000, 2000, 4000});
    CHECK(rep.points.size() == 3);
    REQUIRE(rep.fit.has_value());
    CHECK(rep.fit->slope > 0.8);
    CHECK(rep.theory.sigma == Rational(1));
    CHECK(default_grid() == std::vector<i64>{1000, 10000, 100000, 1000000});
}

TEST_CASE("collision replay matches representation witnesses") {
    i64 collisions = 0, pairs = 0;
    for (i64 Z : {10, 20, 40})
        for (i64 d : sieve::squarefree_range(1000, 1300)) {
            const auto r = collision_replay(d, Z, 3);
            CHECK(r.mismatches == 0);
            CHECK(r.witnessed == r.collisions);
            collisions += r.collisions;
            pairs += r.pairs;
        }
    for (i64 d : sieve::squarefree_range(100000, 100100)) CHECK(collision_replay(d, 30, 5).mismatches == 0);
    MESSAGE("collision pairs " << collisions << " of " << pairs);
    CHECK(collisions > 0);
}

TEST_CASE("empirical ratios are reported") {
    const auto& t = small_table();
    const auto r = empirical_ratios(t, 1000, 10, 3);
    CHECK(r.samples >= 0);
    CHECK(std::isfinite(r.max));
    MESSAGE("ratio samples " << r.samples << ", max " << r.max << ", mean " << r.mean);
}
