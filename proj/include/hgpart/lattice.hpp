#pragma once

// Rank-2 integer lattices: congruence lattices, Lagrange-Gauss reduction,
// successive minima, disc point counts, cube roots modulo square-free q and
// the coset systems attached to pairs (y1, y2, k).

#include <optional>
#include <vector>

#include "hgpart/arith.hpp"

namespace hgpart::lattice {

struct Vec2 {
    i64 x = 0;
    i64 y = 0;
    auto operator<=>(const Vec2&) const = default;
};

inline i128 dot(const Vec2& a, const Vec2& b) {
    return static_cast<i128>(a.x) * b.x + static_cast<i128>(a.y) * b.y;
}
inline i128 norm2(const Vec2& a) { return dot(a, a); }
inline i128 cross(const Vec2& a, const Vec2& b) {
    return static_cast<i128>(a.x) * b.y - static_cast<i128>(a.y) * b.x;
}

struct Lattice2D {
    Vec2 b1;
    Vec2 b2;
    i64 det = 0;    // |det(b1, b2)|
    Vec2 origin;    // coset shift, (0, 0) for the lattice itself
};

struct Minima {
    i128 norm1 = 0;  // lambda1^2
    i128 norm2 = 0;  // lambda2^2
    Vec2 v1;
    Vec2 v2;
    long double lambda1() const;
    long double lambda2() const;
};

/// Throws std::invalid_argument for a degenerate basis.
Lattice2D lattice_from_basis(Vec2 b1, Vec2 b2);

/// {(z1, z2) : z2 = b z1 (mod ell)} with basis (1, b), (0, ell).
Lattice2D lattice_from_congruence(i64 ell, i64 b);

bool contains(const Lattice2D& lat, Vec2 point);

/// Reduced basis (|b1| <= |b2|, 2|b1.b2| <= |b1|^2) and the successive
/// minima. Shortest vectors are sign-normalized (first nonzero coordinate
/// positive) and ties are broken lexicographically.
std::pair<Lattice2D, Minima> gauss_reduce(const Lattice2D& lat);

/// det <= lambda1 lambda2 <= (2/sqrt 3) det, checked on squares exactly.
bool minkowski_holds(const Minima& m, i64 det);

/// Lattice points (of the lattice, ignoring any origin shift) with
/// Euclidean norm <= radius, including 0. Enumerates the coefficient box of
/// the reduced basis; spends one budget unit per box row.
i64 count_points(const Lattice2D& lat, long double radius, WorkBudget* budget = nullptr);

/// All x mod q with x^3 = a (mod q), sorted; q odd and square-free.
std::vector<i64> cube_roots_mod(i64 a, i64 q);

struct Coset {
    Lattice2D lattice;  // origin holds the shift (c1, c2)
    i64 r1 = 0;         // w1 residue mod q1
    i64 r2 = 0;         // w2 residue mod q2
    i64 b = 0;          // w2 = b w1 (mod ell)
};

struct LatticeSystem {
    i64 y1 = 1, y2 = 1, k = 1;
    i64 q1 = 1, q2 = 1, ell = 1;
    i64 a1 = 0, a2 = 0;  // w1^3 = a1 (mod q1), w2^3 = a2 (mod q2)
    i64 a = 0;           // (w2 / w1)^3 = a (mod ell)
    std::vector<Coset> cosets;
    i64 det() const { return q1 * q2 * ell; }
};

/// Cosets (c1, c2) + Lambda, det Lambda = q1 q2 ell, covering every (w1, w2)
/// with w1^3 = a1 (mod q1), w2^3 = a2 (mod q2), y2^2 w1^3 = y1^2 w2^3 (mod ell),
/// where q_i, ell are the odd square-free kernels of y_i, k and
/// a1 = k^2 (4 y2^2)^-1 mod q1, a2 = k^2 (4 y1^2)^-1 mod q2. Throws
/// std::invalid_argument when gcd(y1, y2) != 1 or q1, q2, ell are not
/// pairwise coprime.
LatticeSystem lattice_system(i64 y1, i64 y2, i64 k);

/// True iff (w1, w2) satisfies the three congruences of the system.
bool satisfies_system(const LatticeSystem& sys, i64 w1, i64 w2);

/// Smallest point of the coset, in (w1, w2) order, lying in [W, 4W)^2.
std::optional<Vec2> shift_into_box(const Coset& coset, i64 W);

/// Minimum lambda1 over the cosets of a system (0 for an empty system).
i128 system_min_norm1(const LatticeSystem& sys);

}  // namespace hgpart::lattice
