#pragma once

// Class groups of imaginary quadratic fields via reduced binary quadratic
// forms (a, b, c) = ax^2 + bxy + cy^2 of negative fundamental discriminant.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgpart/arith.hpp"

namespace hgpart::quadforms {

/// A positive square-free d together with the fundamental discriminant of
/// Q(sqrt(-d)): delta = -d when d = 3 (mod 4), otherwise -4d.
struct Discriminant {
    i64 d = 0;
    i64 delta = 0;

    friend bool operator==(const Discriminant&, const Discriminant&) = default;
};

Discriminant fundamental_discriminant(i64 d);
/// Inverse of fundamental_discriminant; throws for non-fundamental or non-negative delta.
Discriminant discriminant_from_delta(i64 delta);
bool is_negative_fundamental(i64 delta);

struct FormClass {
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;

    i128 discriminant() const { return static_cast<i128>(b) * b - static_cast<i128>(4) * a * c; }
    bool is_reduced() const;

    friend auto operator<=>(const FormClass&, const FormClass&) = default;
};

std::string to_string(const FormClass& f);

/// Reduced form equivalent to (a, b, c). Throws std::invalid_argument when
/// b^2 - 4ac != delta or a <= 0.
FormClass reduce(i64 a, i64 b, i64 c, i64 delta);

/// Gauss composition followed by reduction. Throws on discriminant mismatch.
FormClass compose(const FormClass& f1, const FormClass& f2, i64 delta);
FormClass inverse(const FormClass& f);
FormClass identity(i64 delta);
FormClass power(const FormClass& f, u64 exponent, i64 delta);

/// The reduced form of a prime ideal of norm p, when p splits or ramifies.
std::optional<FormClass> prime_form(i64 p, i64 delta);

struct ClassGroup {
    Discriminant disc;
    std::vector<FormClass> forms;  // sorted, identity first
    i64 h = 0;
    std::vector<i64> divisors;     // elementary divisors, each dividing the next
};

/// Every reduced form of discriminant delta, sorted.
std::vector<FormClass> reduced_forms(i64 delta);

/// Full class group with elementary divisors. A composition table is built
/// when h <= kTableLimit; larger groups use power maps computed by composition.
ClassGroup enumerate_class_group(i64 delta);
inline constexpr i64 kTableLimit = 2000;

/// Order of the subgroup generated by the prime forms of norm at most
/// sqrt(|delta|/3). Independent of reduced_forms(): it never enumerates (a, b, c).
i64 class_number_by_generation(i64 delta);

struct GPart {
    i64 g = 0;
    i64 sylow_order = 1;    // #H_g
    i64 torsion_count = 1;  // #Cl[g]
};

/// Definitional route: counts forms f with f^g = 1 over the whole group.
GPart g_part(const ClassGroup& group, i64 g);

/// Sweep route: projects prime forms into the Sylow g-subgroup until it is
/// saturated, then counts its g-torsion. Needs only h.
GPart g_part_from_class_number(i64 delta, i64 h, i64 g);

/// Class numbers for every |delta| in [abs_lo, abs_hi): counts[k] receives the
/// number of reduced forms of discriminant -(abs_lo + k). Values for
/// |delta| = 1, 2 (mod 4) stay zero; non-fundamental discriminants include
/// imprimitive forms.
void count_reduced_forms(i64 abs_lo, i64 abs_hi, std::span<std::int32_t> counts);

/// CSV interface consumed by the moments module.
inline constexpr const char* kCsvHeader = "d,delta,h,torsion_count,sylow_order";
std::string csv_row(const ClassGroup& group, const GPart& part);

void require_odd_prime(i64 g);

}  // namespace hgpart::quadforms
