#include "hgpart/moments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "hgpart/quadforms.hpp"
#include "hgpart/repcount.hpp"
#include "hgpart/sieve.hpp"

namespace hgpart::moments {

namespace {

i64 narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<i64>(v);
}

Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
}

}  // namespace

Rational::Rational(i64 n, i64 d) { *this = make(n, d); }

Rational Rational::parse(const std::string& text) {
    const auto [n, d] = parse_fraction(text);
    return Rational(n, d);
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den, static_cast<i128>(a.den) * b.den);
}
Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.den - static_cast<i128>(b.num) * a.den, static_cast<i128>(a.den) * b.den);
}
Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.num, static_cast<i128>(a.den) * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.den, static_cast<i128>(a.den) * b.num);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 l = static_cast<i128>(a.num) * b.den, r = static_cast<i128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
}

const char* to_string(Column c) { return c == Column::torsion ? "torsion" : "sylow"; }
const char* to_string(Mode m) { return m == Mode::squarefree ? "squarefree" : "fundamental"; }

const char* to_string(ExponentCase c) {
    switch (c) {
        case ExponentCase::sigma1: return "sigma1";
        case ExponentCase::sigma2: return "sigma2";
        case ExponentCase::sigma3: return "sigma3";
        case ExponentCase::holder: return "holder";
        case ExponentCase::pointwise: return "pointwise";
    }
    return "?";
}

size_t SweepTable::g_index(i64 g) const {
    for (size_t i = 0; i < g_list.size(); ++i)
        if (g_list[i] == g) return i;
    throw std::invalid_argument("sweep table has no column for g = " + std::to_string(g));
}

i64 SweepTable::value(size_t row, i64 g, Column column) const {
    const size_t gi = g_index(g);
    return column == Column::torsion ? torsion[gi][row] : sylow[gi][row];
}

size_t SweepTable::lower_row(i64 x) const {
    return static_cast<size_t>(std::lower_bound(d.begin(), d.end(), x) - d.begin());
}

std::string csv_header(const std::vector<i64>& g_list) {
    std::string out = "d,delta,h";
    for (i64 g : g_list) {
        const std::string s = std::to_string(g);
        out += ",h" + s + "_torsion,h" + s + "_sylow";
    }
    return out;
}

namespace {

SweepTable empty_table(i64 lo, i64 hi, const std::vector<i64>& g_list) {
    SweepTable t;
    t.lo = lo;
    t.hi = hi;
    t.g_list = g_list;
    t.torsion.assign(g_list.size(), {});
    t.sylow.assign(g_list.size(), {});
    return t;
}

void append(SweepTable& dst, const SweepTable& src) {
    dst.d.insert(dst.d.end(), src.d.begin(), src.d.end());
    dst.delta.insert(dst.delta.end(), src.delta.begin(), src.delta.end());
    dst.h.insert(dst.h.end(), src.h.begin(), src.h.end());
    for (size_t i = 0; i < dst.g_list.size(); ++i) {
        dst.torsion[i].insert(dst.torsion[i].end(), src.torsion[i].begin(), src.torsion[i].end());
        dst.sylow[i].insert(dst.sylow[i].end(), src.sylow[i].begin(), src.sylow[i].end());
    }
}

SweepTable compute_chunk(i64 lo, i64 hi, const std::vector<i64>& g_list) {
    SweepTable t = empty_table(lo, hi, g_list);
    std::vector<std::int32_t> odd(static_cast<size_t>(hi - lo));
    std::vector<std::int32_t> even(static_cast<size_t>(4 * (hi - lo)));
    quadforms::count_reduced_forms(lo, hi, odd);
    quadforms::count_reduced_forms(4 * lo, 4 * hi, even);
    const auto mask = sieve::squarefree_mask(lo, hi);
    for (i64 d = lo; d < hi; ++d) {
        if (!mask[static_cast<size_t>(d - lo)]) continue;
        const i64 delta = d % 4 == 3 ? -d : -4 * d;
        const i64 h = d % 4 == 3 ? odd[static_cast<size_t>(d - lo)] : even[static_cast<size_t>(4 * d - 4 * lo)];
        t.d.push_back(d);
        t.delta.push_back(delta);
        t.h.push_back(h);
        for (size_t i = 0; i < g_list.size(); ++i) {
            const auto part = quadforms::g_part_from_class_number(delta, h, g_list[i]);
            t.torsion[i].push_back(part.torsion_count);
            t.sylow[i].push_back(part.sylow_order);
        }
    }
    return t;
}

void write_rows(std::ostream& out, const SweepTable& t) {
    for (size_t r = 0; r < t.size(); ++r) {
        out << t.d[r] << ',' << t.delta[r] << ',' << t.h[r];
        for (size_t i = 0; i < t.g_list.size(); ++i) out << ',' << t.torsion[i][r] << ',' << t.sylow[i][r];
        out << '\n';
    }
}

// Rows of an existing sweep file restricted to [lo, hi); stops at the first
// incomplete line.
SweepTable load_rows(const std::string& path, i64 lo, i64 hi, const std::vector<i64>& g_list) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep file " + path);
    std::string line;
    if (!std::getline(in, line) || line != csv_header(g_list))
        throw std::invalid_argument("sweep file " + path + " does not start with header '" + csv_header(g_list) + "'");
    SweepTable t = empty_table(lo, hi, g_list);
    const size_t fields = 3 + 2 * g_list.size();
    while (std::getline(in, line)) {
        std::vector<i64> v;
        std::stringstream ss(line);
        std::string cell;
        bool ok = true;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t pos = 0;
                v.push_back(std::stoll(cell, &pos));
                ok = ok && pos == cell.size();
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok || v.size() != fields || in.eof()) break;
        if (v[0] < lo) continue;
        if (v[0] >= hi) break;
        if (!t.d.empty() && v[0] <= t.d.back())
            throw std::invalid_argument("sweep file " + path + " is not sorted by d at d = " + std::to_string(v[0]));
        t.d.push_back(v[0]);
        t.delta.push_back(v[1]);
        t.h.push_back(v[2]);
        for (size_t i = 0; i < g_list.size(); ++i) {
            t.torsion[i].push_back(v[3 + 2 * i]);
            t.sylow[i].push_back(v[4 + 2 * i]);
        }
    }
    return t;
}

}  // namespace

SweepTable sweep(i64 lo, i64 hi, const std::vector<i64>& g_list, const SweepOptions& options) {
    if (lo < 1 || hi <= lo) throw std::invalid_argument("sweep: need 1 <= lo < hi");
    if (g_list.empty()) throw std::invalid_argument("sweep: empty g list");
    for (i64 g : g_list) quadforms::require_odd_prime(g);
    if (options.jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");
    if (options.chunk < 1) throw std::invalid_argument("sweep: chunk must be >= 1");

    SweepTable table = empty_table(lo, hi, g_list);
    i64 start = lo;
    std::ofstream out;
    if (!options.csv_path.empty()) {
        const bool resume = std::filesystem::exists(options.csv_path) && std::filesystem::file_size(options.csv_path) > 0;
        if (resume) {
            table = load_rows(options.csv_path, lo, hi, g_list);
            if (!table.d.empty()) {
                require_coverage(table, lo, table.d.back() + 1);
                start = table.d.back() + 1;
            }
            // rewrite so that a torn trailing line is dropped
            std::ofstream rewrite(options.csv_path, std::ios::trunc);
            rewrite << csv_header(g_list) << '\n';
            write_rows(rewrite, table);
            if (!rewrite.flush()) throw SweepIOError("cannot rewrite " + options.csv_path, lo, lo);
        } else {
            std::ofstream fresh(options.csv_path, std::ios::trunc);
            fresh << csv_header(g_list) << '\n';
            if (!fresh.flush()) throw SweepIOError("cannot write " + options.csv_path, lo, lo);
        }
        out.open(options.csv_path, std::ios::app);
        if (!out) throw SweepIOError("cannot open " + options.csv_path + " for appending", lo, start);
    }

    std::vector<std::pair<i64, i64>> ranges;
    for (i64 a = start; a < hi; a += options.chunk) ranges.push_back({a, std::min(hi, a + options.chunk)});

    for (size_t wave = 0; wave < ranges.size(); wave += static_cast<size_t>(options.jobs)) {
        const size_t n = std::min(ranges.size() - wave, static_cast<size_t>(options.jobs));
        std::vector<SweepTable> results(n);
        std::vector<std::exception_ptr> errors(n);
        auto work = [&](size_t i) {
            try {
                results[i] = compute_chunk(ranges[wave + i].first, ranges[wave + i].second, g_list);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        };
        if (n == 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (size_t i = 0; i < n; ++i) threads.emplace_back(work, i);
            for (auto& t : threads) t.join();
        }
        for (size_t i = 0; i < n; ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            append(table, results[i]);
            if (out.is_open()) {
                write_rows(out, results[i]);
                if (!out.flush())
                    throw SweepIOError("write to " + options.csv_path + " failed", lo, ranges[wave + i].first);
            }
        }
    }
    return table;
}

void write_csv(std::ostream& out, const SweepTable& table) {
    out << csv_header(table.g_list) << '\n';
    write_rows(out, table);
}

SweepTable read_csv(const std::string& path, i64 lo, i64 hi) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep file " + path);
    std::string header;
    std::getline(in, header);
    std::vector<i64> g_list;
    std::stringstream ss(header);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const std::string suffix = "_torsion";
        if (cell.size() > 1 + suffix.size() && cell[0] == 'h' && cell.ends_with(suffix))
            g_list.push_back(std::stoll(cell.substr(1, cell.size() - 1 - suffix.size())));
    }
    if (g_list.empty()) throw std::invalid_argument("sweep file " + path + " has no g columns");
    return load_rows(path, lo, hi, g_list);
}

void require_coverage(const SweepTable& table, i64 lo, i64 hi) {
    if (hi <= lo) return;
    const auto mask = sieve::squarefree_mask(lo, hi);
    size_t row = table.lower_row(lo);
    for (i64 x = lo; x < hi; ++x) {
        const bool sf = mask[static_cast<size_t>(x - lo)] != 0;
        const bool present = row < table.size() && table.d[row] == x;
        if (sf && !present)
            throw CoverageGap("sweep table is missing square-free d = " + std::to_string(x), x);
        if (present) {
            if (!sf) throw CoverageGap("sweep table holds non-square-free d = " + std::to_string(x), x);
            ++row;
        }
    }
}

namespace {

i128 exact_power(i64 base, i64 k) {
    i128 r = 1;
    for (i64 i = 0; i < k; ++i) r = checked_mul(r, base);
    return r;
}

long double real_power(i64 base, const Rational& k) {
    return std::pow(static_cast<long double>(base), k.value());
}

}  // namespace

MomentSum moment_sum(const SweepTable& table, i64 g, Rational k, i64 X, Column column, Mode mode) {
    if (X < 2) throw std::invalid_argument("moment_sum: X must be >= 2");
    if (k < Rational(0)) throw std::invalid_argument("moment_sum: k must be >= 0");
    require_coverage(table, 1, X);
    MomentSum out;
    const bool integral = k.is_integer();
    if (integral) out.exact = 0;
    for (size_t r = 0; r < table.size() && table.d[r] < X; ++r) {
        if (mode == Mode::fundamental && -table.delta[r] >= X) continue;
        const i64 v = table.value(r, g, column);
        if (integral) {
            *out.exact = checked_add(*out.exact, exact_power(v, k.num));
        } else {
            out.value += real_power(v, k);
        }
        ++out.terms;
    }
    if (integral) out.value = static_cast<long double>(*out.exact);
    return out;
}

TailCount tail_count(const SweepTable& table, i64 g, Rational H, i64 X, Column column) {
    if (X < 1) throw std::invalid_argument("tail_count: X must be >= 1");
    require_coverage(table, X, 2 * X);
    TailCount out{g, H, X, 0};
    for (size_t r = table.lower_row(X); r < table.size() && table.d[r] < 2 * X; ++r)
        if (Rational(table.value(r, g, column)) > H) ++out.count;
    return out;
}

long double DyadicMoment::upper_constant() const {
    const long double two_k = std::pow(2.0L, k.value());
    return two_k * two_k / (two_k - 1);
}

bool DyadicMoment::sandwich_holds() const {
    if (!(k > Rational(0))) return false;
    const long double slack = 1e-15L * std::max<long double>(1, dyadic);
    return direct_above_one <= dyadic + slack && dyadic <= upper_constant() * direct_above_one + slack;
}

DyadicMoment dyadic_moment(const SweepTable& table, i64 g, Rational k, i64 X, Column column) {
    if (k < Rational(0)) throw std::invalid_argument("dyadic_moment: k must be >= 0");
    require_coverage(table, X, 2 * X);
    DyadicMoment out;
    out.g = g;
    out.k = k;
    out.X = X;
    i64 max_h = 0;
    for (size_t r = table.lower_row(X); r < table.size() && table.d[r] < 2 * X; ++r) {
        const i64 v = table.value(r, g, column);
        const long double p = real_power(v, k);
        out.direct += p;
        if (v > 1) out.direct_above_one += p;
        else ++out.unit_mass;
        max_h = std::max(max_h, v);
        ++out.terms;
    }
    for (i64 H = 1; H < max_h; H *= 2) {
        out.tails.push_back(tail_count(table, g, Rational(H), X, column));
        out.dyadic += static_cast<long double>(out.tails.back().count) * real_power(2 * H, k);
    }
    return out;
}

Exponent theoretical_exponent(i64 g, Rational k) {
    quadforms::require_odd_prime(g);
    if (k < Rational(1)) throw std::invalid_argument("theoretical_exponent: k = " + k.str() + " is below 1");
    Exponent e;
    e.g = g;
    e.k = k;
    if (g == 3) {
        if (k <= Rational(4)) {
            e.sigma = (Rational(5) * k + Rational(13)) / Rational(18);
            e.which = ExponentCase::holder;
        } else {
            e.sigma = (Rational(2) * k + Rational(3)) / Rational(6);
            e.which = ExponentCase::pointwise;
        }
        return e;
    }
    const Rational s1 = Rational(1) + k * Rational(g - 2, 2 * g + 2);
    const Rational s2 = Rational(1) + k * Rational(g - 1, 2 * g) - Rational(g - 1, 2 * g);
    const Rational s3 = k / Rational(2);
    e.sigma1 = s1;
    e.sigma2 = s2;
    e.sigma3 = s3;
    e.sigma = std::max({s1, s2, s3});
    if (k <= Rational(g * g - 1, 2 * g - 1)) e.which = ExponentCase::sigma1;
    else if (k <= Rational(g + 1)) e.which = ExponentCase::sigma2;
    else e.which = ExponentCase::sigma3;
    return e;
}

OptimalZ optimal_Z(i64 X, i64 g) {
    quadforms::require_odd_prime(g);
    if (X < 2) throw std::invalid_argument("optimal_Z: X must be >= 2");
    const u128 cap = static_cast<u128>(checked_pow(X, 3));
    const unsigned e = static_cast<unsigned>(2 * g + 2);
    i64 Z = static_cast<i64>(std::floor(std::pow(static_cast<long double>(X), 3.0L / e)));
    while (Z > 1 && pow_saturate(static_cast<u128>(Z), e, cap + 1) > cap) --Z;
    while (pow_saturate(static_cast<u128>(Z + 1), e, cap + 1) <= cap) ++Z;
    OptimalZ out;
    out.Z = std::max<i64>(Z, 1);
    out.ratio = std::pow(static_cast<long double>(X), 1.5L) / std::pow(static_cast<long double>(out.Z), g + 1);
    out.within_audit = out.ratio >= 1 && out.ratio <= std::pow(2.0L, g);
    return out;
}

Fit fit_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_exponent: need at least three points");
    std::set<double> xs;
    for (const auto& [x, s] : points) {
        if (!(x > 0) || !(s > 0)) throw std::invalid_argument("fit_exponent: X and S must be positive");
        xs.insert(x);
    }
    if (xs.size() != points.size()) throw std::invalid_argument("fit_exponent: X values must be distinct");
    const double n = static_cast<double>(points.size());
    double mx = 0, my = 0;
    for (const auto& [x, s] : points) {
        mx += std::log(x);
        my += std::log(s);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, s] : points) {
        const double lx = std::log(x) - mx, ly = std::log(s) - my;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    Fit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (const auto& [x, s] : points) {
        const double r = std::log(s) - (f.intercept + f.slope * std::log(x));
        f.residuals.push_back(r);
        sse += r * r;
    }
    f.r2 = syy == 0 ? 1.0 : 1.0 - sse / syy;
    return f;
}

DhAverage dh_average(const SweepTable& table, i64 X, Column column) {
    if (X < 100) throw std::invalid_argument("dh_average: X must be >= 100");
    require_coverage(table, 1, X);
    DhAverage out;
    out.X = X;
    for (size_t r = 0; r < table.size() && table.d[r] < X; ++r) {
        if (-table.delta[r] >= X) continue;
        out.sum += table.value(r, 3, column);
        ++out.count;
    }
    out.value = static_cast<double>(out.sum) / static_cast<double>(out.count);
    return out;
}

MomentReport moment_report(const SweepTable& table, i64 g, Rational k, const std::vector<i64>& grid, Column column,
                           Mode mode) {
    MomentReport rep;
    rep.g = g;
    rep.k = k;
    rep.column = column;
    rep.mode = mode;
    rep.theory = theoretical_exponent(g, k);
    std::vector<std::pair<double, double>> pts;
    for (i64 X : grid) {
        rep.points.push_back({X, moment_sum(table, g, k, X, column, mode)});
        pts.push_back({static_cast<double>(X), static_cast<double>(rep.points.back().sum.value)});
    }
    if (pts.size() >= 3) rep.fit = fit_exponent(pts);
    return rep;
}

std::vector<i64> default_grid(i64 cap) {
    std::vector<i64> out;
    for (i64 X = 1000; X <= cap; X *= 10) out.push_back(X);
    return out;
}

ReplayResult collision_replay(i64 d, i64 Z, i64 g) {
    quadforms::require_odd_prime(g);
    const auto disc = quadforms::fundamental_discriminant(d);
    const i64 delta = disc.delta;
    ReplayResult out;
    out.d = d;
    std::vector<std::pair<i64, quadforms::FormClass>> split;
    for (i64 p : sieve::split_primes(d, Z).primes)
        if (p != 2) split.push_back({p, *quadforms::prime_form(p, delta)});

    const auto sg = repcount::s_g_direct(d, Z, g);
    std::set<std::pair<i64, i64>> witnessed;
    for (const auto& w : sg.witnesses) witnessed.insert({w.p, w.p2});

    const auto id = quadforms::identity(delta);
    for (size_t i = 0; i < split.size(); ++i)
        for (size_t j = i + 1; j < split.size(); ++j) {
            const auto& [p, fp] = split[i];
            const auto& [q, fq] = split[j];
            const bool same = quadforms::power(quadforms::compose(fp, fq, delta), static_cast<u64>(g), delta) == id;
            const bool twisted =
                quadforms::power(quadforms::compose(fp, quadforms::inverse(fq), delta), static_cast<u64>(g), delta) == id;
            const bool collision = same || twisted;
            const bool rep = witnessed.count({p, q}) > 0;
            ++out.pairs;
            if (collision) ++out.collisions;
            if (rep) ++out.witnessed;
            if (collision != rep) ++out.mismatches;
        }
    return out;
}

RatioSummary empirical_ratios(const SweepTable& table, i64 X, i64 Z, i64 g, Column column) {
    require_coverage(table, X, 2 * X);
    const auto E = sieve::exceptional_set(Z, X);
    const auto window = sieve::prime_window(Z);
    RatioSummary out{X, Z, g, 0, 0, 0};
    double total = 0;
    for (size_t r = table.lower_row(X); r < table.size() && table.d[r] < 2 * X; ++r) {
        const i64 d = table.d[r];
        if (std::binary_search(E.members.begin(), E.members.end(), d)) continue;
        const auto sg = repcount::s_g_direct(d, window, g);
        if (sg.ordered_pairs == 0) continue;
        const double ratio = static_cast<double>(table.value(r, g, column)) * static_cast<double>(Z) *
                             static_cast<double>(Z) / (std::sqrt(static_cast<double>(d)) * sg.ordered_pairs);
        out.max = std::max(out.max, ratio);
        total += ratio;
        ++out.samples;
    }
    if (out.samples > 0) out.mean = total / static_cast<double>(out.samples);
    return out;
}

}  // namespace hgpart::moments
