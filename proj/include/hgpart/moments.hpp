#pragma once

// Sweeps of h_g(-d) over ranges of square-free d and the aggregates built on
// them: moment sums, tail counts N_g(H; X), dyadic majorants, exponent fits,
// the Davenport-Heilbronn average and the theoretical moment exponents.

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgpart/arith.hpp"

namespace hgpart::moments {

/// Exact rational with positive denominator, kept in lowest terms.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n, i64 d = 1);
    static Rational parse(const std::string& text);

    long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }
    bool is_integer() const { return den == 1; }
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

enum class Column { torsion, sylow };
enum class Mode { squarefree, fundamental };

const char* to_string(Column c);
const char* to_string(Mode m);

/// One row per square-free d in [lo, hi), sorted by d. For each g of g_list
/// the torsion count #Cl[g] and the Sylow order #H_g are stored.
struct SweepTable {
    i64 lo = 1;
    i64 hi = 1;
    std::vector<i64> g_list;
    std::vector<i64> d;
    std::vector<i64> delta;
    std::vector<i64> h;
    std::vector<std::vector<i64>> torsion;  // [g index][row]
    std::vector<std::vector<i64>> sylow;    // [g index][row]

    size_t size() const { return d.size(); }
    size_t g_index(i64 g) const;
    i64 value(size_t row, i64 g, Column column) const;
    /// First row with d >= x.
    size_t lower_row(i64 x) const;
};

/// Raised when a sweep cannot persist its rows. Rows for d in
/// [completed_lo, completed_hi) are complete on disk.
class SweepIOError : public std::runtime_error {
  public:
    SweepIOError(const std::string& what, i64 lo, i64 hi)
        : std::runtime_error(what), completed_lo(lo), completed_hi(hi) {}
    i64 completed_lo;
    i64 completed_hi;
};

/// Raised when a table does not hold every square-free d of a range.
class CoverageGap : public std::runtime_error {
  public:
    CoverageGap(const std::string& what, i64 missing) : std::runtime_error(what), missing_d(missing) {}
    i64 missing_d;
};

struct SweepOptions {
    int jobs = 1;
    i64 chunk = 1 << 16;   // d values per work unit
    std::string csv_path;  // persisted and resumed from when non-empty
};

std::string csv_header(const std::vector<i64>& g_list);

/// h(-d), #Cl[g] and #H_g for every square-free d in [lo, hi). Class numbers
/// come from block counts of reduced forms; g-parts from prime-form
/// projection. With a csv_path, existing rows are reused and new rows are
/// appended chunk by chunk in d order.
SweepTable sweep(i64 lo, i64 hi, const std::vector<i64>& g_list, const SweepOptions& options = {});

void write_csv(std::ostream& out, const SweepTable& table);
SweepTable read_csv(const std::string& path, i64 lo, i64 hi);

/// Throws CoverageGap unless every square-free d in [lo, hi) has a row.
void require_coverage(const SweepTable& table, i64 lo, i64 hi);

struct MomentSum {
    long double value = 0;
    std::optional<i128> exact;  // set for integer k
    i64 terms = 0;
};

/// Sum of h_g(-d)^k over square-free 0 < d < X (squarefree mode) or over the
/// fundamental discriminants with |delta| < X (fundamental mode).
MomentSum moment_sum(const SweepTable& table, i64 g, Rational k, i64 X, Column column = Column::torsion,
                     Mode mode = Mode::squarefree);

struct TailCount {
    i64 g = 0;
    Rational H;
    i64 X = 0;
    i64 count = 0;
};

/// #{square-free d in [X, 2X) : h_g(-d) > H}.
TailCount tail_count(const SweepTable& table, i64 g, Rational H, i64 X, Column column = Column::torsion);

struct DyadicMoment {
    i64 g = 0;
    Rational k;
    i64 X = 0;
    std::vector<TailCount> tails;  // H = 1, 2, 4, ... while N_g(H; X) > 0
    long double dyadic = 0;        // sum of N_g(H; X) (2H)^k
    long double direct = 0;        // sum of h^k over d in [X, 2X)
    long double direct_above_one = 0;  // same, restricted to h > 1
    i64 unit_mass = 0;             // d in [X, 2X) with h = 1
    i64 terms = 0;
    /// direct_above_one <= dyadic <= 4^k / (2^k - 1) * direct_above_one, k > 0.
    bool sandwich_holds() const;
    long double upper_constant() const;
};

DyadicMoment dyadic_moment(const SweepTable& table, i64 g, Rational k, i64 X, Column column = Column::torsion);

enum class ExponentCase { sigma1, sigma2, sigma3, holder, pointwise };
const char* to_string(ExponentCase c);

struct Exponent {
    i64 g = 0;
    Rational k;
    Rational sigma;
    ExponentCase which = ExponentCase::sigma1;
    std::optional<Rational> sigma1, sigma2, sigma3;  // g >= 5 only
};

/// Moment exponent sigma with sum h_g(-d)^k << X^(sigma + eps). For g >= 5 it
/// is max(sigma1, sigma2, sigma3); g = 3 uses (5k + 13)/18 on [1, 4] and
/// (2k + 3)/6 beyond. Throws std::invalid_argument for k < 1.
Exponent theoretical_exponent(i64 g, Rational k);

struct OptimalZ {
    i64 Z = 0;
    long double ratio = 0;  // X^(3/2) Z^-1 / Z^g
    bool within_audit = false;  // 1 <= ratio <= 2^g
};

/// Largest Z with Z^(2g+2) <= X^3. Requires X >= 2.
OptimalZ optimal_Z(i64 X, i64 g);

struct Fit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    std::vector<double> residuals;  // log S - (intercept + slope log X)
};

/// Least-squares slope of log S against log X. Needs at least three points,
/// distinct X and positive S.
Fit fit_exponent(const std::vector<std::pair<double, double>>& points);

struct DhAverage {
    i64 X = 0;
    i64 sum = 0;
    i64 count = 0;
    double value = 0;
};

/// Mean of #Cl[3] over fundamental discriminants with |delta| < X.
DhAverage dh_average(const SweepTable& table, i64 X, Column column = Column::torsion);

struct MomentPoint {
    i64 X = 0;
    MomentSum sum;
};

struct MomentReport {
    i64 g = 0;
    Rational k;
    Column column = Column::torsion;
    Mode mode = Mode::squarefree;
    std::vector<MomentPoint> points;
    std::optional<Fit> fit;  // three or more grid points
    Exponent theory;
};

MomentReport moment_report(const SweepTable& table, i64 g, Rational k, const std::vector<i64>& grid,
                           Column column = Column::torsion, Mode mode = Mode::squarefree);

/// Powers of ten from 10^3 up to cap.
std::vector<i64> default_grid(i64 cap = 1000000);

struct ReplayResult {
    i64 d = 0;
    i64 pairs = 0;        // unordered pairs of distinct odd split window primes
    i64 collisions = 0;   // (f_p f_p')^g = 1 or (f_p / f_p')^g = 1
    i64 witnessed = 0;    // pairs with a representation witness
    i64 mismatches = 0;
};

/// For every pair p < p' of odd split primes of [Z, 2Z), compares the
/// class-group condition on the prime forms with the existence of a
/// representation 4(pp')^g = u^2 + d v^2, gcd(v, pp') = 1.
ReplayResult collision_replay(i64 d, i64 Z, i64 g);

struct RatioSummary {
    i64 X = 0;
    i64 Z = 0;
    i64 g = 0;
    i64 samples = 0;  // non-exceptional d with S_g > 0
    double max = 0;
    double mean = 0;
};

/// h_g(-d) Z^2 / (d^(1/2) S_g(d; Z)) over non-exceptional square-free d in
/// [X, 2X) with S_g > 0 (ordered pairs). Reported, not thresholded.
RatioSummary empirical_ratios(const SweepTable& table, i64 X, i64 Z, i64 g, Column column = Column::torsion);

}  // namespace hgpart::moments
