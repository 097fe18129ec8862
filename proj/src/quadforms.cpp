#include "hgpart/quadforms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hgpart::quadforms {

Discriminant fundamental_discriminant(i64 d) {
    if (d < 1) throw std::invalid_argument("fundamental_discriminant: d must be >= 1");
    if (!is_squarefree(d))
        throw std::invalid_argument("fundamental_discriminant: d = " + std::to_string(d) +
                                    " is not square-free");
    return {d, d % 4 == 3 ? -d : -4 * d};
}

bool is_negative_fundamental(i64 delta) {
    if (delta >= 0) return false;
    i64 D = -delta;
    if (D % 4 == 3) return is_squarefree(D);
    if (D % 4 != 0) return false;
    i64 m = D / 4;
    return (m % 4 == 1 || m % 4 == 2) && is_squarefree(m);
}

Discriminant discriminant_from_delta(i64 delta) {
    if (!is_negative_fundamental(delta))
        throw std::invalid_argument("delta = " + std::to_string(delta) +
                                    " is not a negative fundamental discriminant");
    i64 D = -delta;
    return {D % 4 == 3 ? D : D / 4, delta};
}

bool FormClass::is_reduced() const {
    i64 ab = b < 0 ? -b : b;
    if (a < 1 || ab > a || a > c) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
}

std::string to_string(const FormClass& f) {
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

namespace {

i64 c_from(i64 a, i64 b, i64 delta) {
    i128 num = static_cast<i128>(b) * b - delta;
    return static_cast<i64>(num / (4 * static_cast<i128>(a)));
}

// Brings b into (-a, a] without changing the class.
void normalize(i64& a, i64& b, i64& c, i64 delta) {
    if (b > -a && b <= a) return;
    i64 two_a = 2 * a;
    i64 k = (a - b) >= 0 ? (a - b) / two_a : -((b - a + two_a - 1) / two_a);
    b += k * two_a;
    c = c_from(a, b, delta);
}

FormClass reduce_unchecked(i64 a, i64 b, i64 c, i64 delta) {
    normalize(a, b, c, delta);
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize(a, b, c, delta);
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
}

}  // namespace

FormClass reduce(i64 a, i64 b, i64 c, i64 delta) {
    if (a <= 0) throw std::invalid_argument("reduce: a must be positive");
    if (static_cast<i128>(b) * b - static_cast<i128>(4) * a * c != delta)
        throw std::invalid_argument("reduce: b^2 - 4ac != delta");
    return reduce_unchecked(a, b, c, delta);
}

FormClass compose(const FormClass& f1, const FormClass& f2, i64 delta) {
    if (f1.discriminant() != delta || f2.discriminant() != delta)
        throw std::invalid_argument("compose: discriminant mismatch");
    const FormClass* p = &f1;
    const FormClass* q = &f2;
    if (p->a > q->a) std::swap(p, q);
    const i64 a1 = p->a, b1 = p->b;
    const i64 a2 = q->a, b2 = q->b, c2 = q->c;

    const i64 s = (b1 + b2) / 2;
    const i64 n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        i64 u, v;
        d = ext_gcd(a2, a1, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        d1 = ext_gcd(s, d, x2, y2);
        y2 = -y2;
    }
    const i64 v1 = a1 / d1;
    const i64 v2 = a2 / d1;
    const i128 t = static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * c2;
    const i64 r = mod(t, v1);
    const i64 b3 = b2 + 2 * v2 * r;
    const i64 a3 = v1 * v2;
    return reduce_unchecked(a3, b3, c_from(a3, b3, delta), delta);
}

FormClass inverse(const FormClass& f) {
    if (f.b == 0 || f.b == f.a || f.a == f.c) return f;
    return {f.a, -f.b, f.c};
}

FormClass identity(i64 delta) {
    i64 b = (-delta) % 4 == 3 ? 1 : 0;
    return {1, b, c_from(1, b, delta)};
}

FormClass power(const FormClass& f, u64 exponent, i64 delta) {
    FormClass result = identity(delta);
    FormClass base = f;
    while (exponent > 0) {
        if (exponent & 1) result = compose(result, base, delta);
        exponent >>= 1;
        if (exponent > 0) base = compose(base, base, delta);
    }
    return result;
}

std::optional<FormClass> prime_form(i64 p, i64 delta) {
    const int parity = static_cast<int>(mod(delta, 2));
    i64 b = -1;
    if (p == 2) {
        for (i64 cand = 0; cand < 4; ++cand)
            if (mod(cand * cand - delta, 8) == 0) {
                b = cand;
                break;
            }
    } else {
        auto roots = sqrt_mod_prime(delta, p);
        if (roots.empty()) return std::nullopt;
        b = roots.front();
        if (b % 2 != parity) b = p - b;
    }
    if (b < 0 || mod(static_cast<i128>(b) * b - delta, 4 * p) != 0) return std::nullopt;
    return reduce_unchecked(p, b, c_from(p, b, delta), delta);
}

std::vector<FormClass> reduced_forms(i64 delta) {
    if (delta >= 0) throw std::invalid_argument("reduced_forms: delta must be negative");
    std::vector<FormClass> out;
    const i64 D = -delta;
    const int parity = static_cast<int>(D % 2);
    for (i64 a = 1; 3 * a * a <= D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b, 2) != parity) continue;
            i64 num = b * b + D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Index lookup into a sorted form list.
i64 index_of(const std::vector<FormClass>& forms, const FormClass& f) {
    auto it = std::lower_bound(forms.begin(), forms.end(), f);
    if (it == forms.end() || *it != f)
        throw std::logic_error("composition left the enumerated form set: " + to_string(f));
    return it - forms.begin();
}

std::vector<i64> elementary_divisors(const std::vector<FormClass>& forms, i64 delta) {
    const i64 h = static_cast<i64>(forms.size());
    if (h == 1) return {1};
    const i64 id = index_of(forms, identity(delta));

    std::vector<std::int32_t> table;
    if (h <= kTableLimit) {
        table.resize(static_cast<size_t>(h * h));
        for (i64 i = 0; i < h; ++i)
            for (i64 j = i; j < h; ++j) {
                auto k = static_cast<std::int32_t>(index_of(forms, compose(forms[i], forms[j], delta)));
                table[static_cast<size_t>(i * h + j)] = k;
                table[static_cast<size_t>(j * h + i)] = k;
            }
    }
    auto power_map = [&](i64 q) {
        std::vector<i64> pw(static_cast<size_t>(h));
        for (i64 x = 0; x < h; ++x) {
            if (!table.empty()) {
                i64 acc = x;
                for (i64 j = 1; j < q; ++j) acc = table[static_cast<size_t>(acc * h + x)];
                pw[static_cast<size_t>(x)] = acc;
            } else {
                pw[static_cast<size_t>(x)] = index_of(forms, power(forms[x], static_cast<u64>(q), delta));
            }
        }
        return pw;
    };

    // For each prime q | h: the q-ranks r_i = log_q #G[q^i] - log_q #G[q^(i-1)]
    // give the multiset of q-parts of the cyclic factors.
    std::vector<std::vector<i64>> parts_per_prime;
    for (const auto& [q, e] : factorize(h)) {
        auto pw = power_map(q);
        std::vector<i64> cur(static_cast<size_t>(h));
        for (i64 x = 0; x < h; ++x) cur[static_cast<size_t>(x)] = x;
        std::vector<int> rank;  // rank[i-1] = number of cyclic factors with q-part >= q^i
        int prev_exp = 0;
        for (int i = 1; i <= e; ++i) {
            i64 killed = 0;
            for (auto& x : cur) {
                x = pw[static_cast<size_t>(x)];
                if (x == id) ++killed;
            }
            int exp = 0;
            for (i64 t = killed; t > 1; t /= q) ++exp;
            rank.push_back(exp - prev_exp);
            prev_exp = exp;
            if (exp == e) break;
        }
        std::vector<i64> parts;
        for (size_t i = 0; i < rank.size(); ++i) {
            int exactly = rank[i] - (i + 1 < rank.size() ? rank[i + 1] : 0);
            i64 qi = 1;
            for (size_t k = 0; k <= i; ++k) qi *= q;
            for (int k = 0; k < exactly; ++k) parts.push_back(qi);
        }
        std::sort(parts.begin(), parts.end(), std::greater<>());
        parts_per_prime.push_back(std::move(parts));
    }
    size_t count = 0;
    for (const auto& parts : parts_per_prime) count = std::max(count, parts.size());
    std::vector<i64> divisors(count, 1);
    for (const auto& parts : parts_per_prime)
        for (size_t j = 0; j < parts.size(); ++j) divisors[j] *= parts[j];
    std::reverse(divisors.begin(), divisors.end());
    return divisors;
}

}  // namespace

ClassGroup enumerate_class_group(i64 delta) {
    ClassGroup g;
    g.disc = discriminant_from_delta(delta);
    g.forms = reduced_forms(delta);
    g.h = static_cast<i64>(g.forms.size());
    g.divisors = elementary_divisors(g.forms, delta);
    return g;
}

namespace {

// Smallest subgroup containing `group` and y, for a sorted subgroup list.
void adjoin(std::vector<FormClass>& group, const FormClass& y, i64 delta) {
    if (std::binary_search(group.begin(), group.end(), y)) return;
    std::vector<FormClass> next = group;
    FormClass yi = y;
    while (!std::binary_search(group.begin(), group.end(), yi)) {
        for (const auto& s : group) next.push_back(compose(s, yi, delta));
        yi = compose(yi, y, delta);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    group = std::move(next);
}

}  // namespace

i64 class_number_by_generation(i64 delta) {
    discriminant_from_delta(delta);
    std::vector<FormClass> group = {identity(delta)};
    const i64 bound = static_cast<i64>(isqrt(static_cast<u64>(-delta / 3)));
    for (i64 p : primes_in_range(2, bound + 1))
        if (auto f = prime_form(p, delta)) adjoin(group, *f, delta);
    return static_cast<i64>(group.size());
}

void require_odd_prime(i64 g) {
    if (g < 3 || !is_prime(g))
        throw std::invalid_argument("g = " + std::to_string(g) + " is not an odd prime");
}

GPart g_part(const ClassGroup& group, i64 g) {
    require_odd_prime(g);
    GPart out{g, 1, 0};
    for (i64 h = group.h; h % g == 0; h /= g) out.sylow_order *= g;
    const FormClass id = identity(group.disc.delta);
    for (const auto& f : group.forms)
        if (power(f, static_cast<u64>(g), group.disc.delta) == id) ++out.torsion_count;
    return out;
}

GPart g_part_from_class_number(i64 delta, i64 h, i64 g) {
    require_odd_prime(g);
    GPart out{g, 1, 1};
    i64 cofactor = h;
    while (cofactor % g == 0) {
        cofactor /= g;
        out.sylow_order *= g;
    }
    if (out.sylow_order == 1) return out;
    if (out.sylow_order == g) {
        out.torsion_count = g;
        return out;
    }

    const FormClass id = identity(delta);
    std::vector<FormClass> sylow = {id};
    const i64 bound = static_cast<i64>(isqrt(static_cast<u64>(-delta / 3)));
    for (i64 p = 2; p <= bound && static_cast<i64>(sylow.size()) < out.sylow_order; ++p) {
        if (!is_prime(p)) continue;
        auto f = prime_form(p, delta);
        if (!f) continue;
        adjoin(sylow, power(*f, static_cast<u64>(cofactor), delta), delta);
    }
    if (static_cast<i64>(sylow.size()) != out.sylow_order)
        throw std::logic_error("Sylow subgroup of delta = " + std::to_string(delta) +
                               " not saturated by prime forms");
    out.torsion_count = 0;
    for (const auto& x : sylow)
        if (power(x, static_cast<u64>(g), delta) == id) ++out.torsion_count;
    return out;
}

void count_reduced_forms(i64 abs_lo, i64 abs_hi, std::span<std::int32_t> counts) {
    if (abs_lo < 1 || abs_hi <= abs_lo || static_cast<i64>(counts.size()) < abs_hi - abs_lo)
        throw std::invalid_argument("count_reduced_forms: bad range");
    std::fill(counts.begin(), counts.begin() + (abs_hi - abs_lo), 0);
    for (i64 a = 1; 3 * a * a < abs_hi; ++a) {
        const i64 step = 4 * a;
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 b2 = b * b;
            i64 c = std::max(a, (abs_lo + b2 + step - 1) / step);
            if (c == a && b < 0) ++c;
            for (i64 D = step * c - b2; D < abs_hi; D += step) ++counts[static_cast<size_t>(D - abs_lo)];
        }
    }
}

std::string csv_row(const ClassGroup& group, const GPart& part) {
    return std::to_string(group.disc.d) + "," + std::to_string(group.disc.delta) + "," +
           std::to_string(group.h) + "," + std::to_string(part.torsion_count) + "," +
           std::to_string(part.sylow_order);
}

}  // namespace hgpart::quadforms
