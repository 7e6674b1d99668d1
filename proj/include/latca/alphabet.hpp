#pragma once

// Structured alphabets: plain finite sets, F_q vector spaces and free
// Z/p^e modules. Symbols are dense indexes into a canonical enumeration of
// the carrier; structured alphabets expose exact scalar arithmetic.

#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "checked.hpp"
#include "intmat.hpp"

namespace latca {

namespace detail {

inline bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over F_p, coefficients ascending by degree.
inline std::vector<i64> poly_mod_mul(const std::vector<i64>& a, const std::vector<i64>& b,
                                     const std::vector<i64>& f, i64 p) {
    std::vector<i64> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // reduce by the monic modulus f
    int e = (int)f.size() - 1;
    for (int d = (int)prod.size() - 1; d >= e; --d) {
        i64 c = prod[d];
        if (c == 0) continue;
        for (int i = 0; i <= e; ++i)
            prod[d - e + i] = pos_mod(prod[d - e + i] - c * f[i], p);
    }
    prod.resize(e);
    return prod;
}

inline bool poly_is_irreducible(const std::vector<i64>& f, i64 p) {
    int e = (int)f.size() - 1;
    if (e < 1 || f[e] != 1) return false;
    if (e == 1) return true;
    // trial division by every monic polynomial of degree 1..e/2
    for (int d = 1; 2 * d <= e; ++d) {
        i64 count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (i64 code = 0; code < count; ++code) {
            std::vector<i64> g(d + 1, 0);
            i64 c = code;
            for (int i = 0; i < d; ++i) { g[i] = c % p; c /= p; }
            g[d] = 1;
            // long division remainder f mod g
            std::vector<i64> r = f;
            for (int k = (int)r.size() - 1; k >= d; --k) {
                i64 q = r[k];
                if (q == 0) continue;
                for (int i = 0; i <= d; ++i) r[k - d + i] = pos_mod(r[k - d + i] - q * g[i], p);
            }
            bool zero = true;
            for (int i = 0; i < d; ++i) zero &= r[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

// Published irreducible polynomials (Conway) for the supported small fields;
// ascending coefficients, monic. Other (p,e) fall back to the least monic
// irreducible in base-p encoding order, which is just as deterministic.
inline const std::map<std::pair<i64, i64>, std::vector<i64>>& conway_table() {
    static const std::map<std::pair<i64, i64>, std::vector<i64>> t = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 1}, {4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 1}, {9, 1}},
        {{13, 1}, {11, 1}},
    };
    return t;
}

inline std::vector<i64> field_polynomial(i64 p, i64 e) {
    auto it = conway_table().find({p, e});
    if (it != conway_table().end()) {
        require(poly_is_irreducible(it->second, p), "embedded field polynomial not irreducible");
        return it->second;
    }
    i64 count = checked_pow(p, e);
    for (i64 code = 0; code < count; ++code) {
        std::vector<i64> f(e + 1, 0);
        i64 c = code;
        for (int i = 0; i < e; ++i) { f[i] = c % p; c /= p; }
        f[e] = 1;
        if (poly_is_irreducible(f, p)) return f;
    }
    throw std::invalid_argument("no irreducible polynomial found");
}

}  // namespace detail

// F_q arithmetic tables; elements are indexes whose base-p digits are the
// polynomial coefficients (ascending degree).
struct Gf {
    i64 p = 0, e = 0, q = 0;
    std::vector<i64> modulus;
    std::vector<Sym> mul_t, inv_t;

    Sym add(Sym a, Sym b) const {
        i64 r = 0, pw = 1, x = a, y = b;
        for (i64 i = 0; i < e; ++i) {
            r += ((x + y) % p) * pw;
            x /= p;
            y /= p;
            pw *= p;
        }
        return (Sym)r;
    }
    Sym neg(Sym a) const {
        i64 r = 0, pw = 1, x = a;
        for (i64 i = 0; i < e; ++i) {
            r += ((p - x % p) % p) * pw;
            x /= p;
            pw *= p;
        }
        return (Sym)r;
    }
    Sym sub(Sym a, Sym b) const { return add(a, neg(b)); }
    Sym mul(Sym a, Sym b) const { return mul_t[(size_t)a * (size_t)q + (size_t)b]; }
    Sym inv(Sym a) const {
        require(a != 0, "division by zero in field");
        return inv_t[(size_t)a];
    }
};

inline const Gf& field_cache(i64 p, i64 e) {
    static std::map<std::pair<i64, i64>, std::unique_ptr<Gf>> cache;
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    require(detail::is_prime(p), "field characteristic must be prime");
    require(e >= 1, "field extension degree must be positive");
    i64 q = checked_pow(p, e);
    require(q <= 1024, "field size exceeds the supported bound 1024");
    auto gf = std::make_unique<Gf>();
    gf->p = p;
    gf->e = e;
    gf->q = q;
    gf->modulus = detail::field_polynomial(p, e);
    gf->mul_t.resize((size_t)q * (size_t)q);
    auto digits = [&](i64 n) {
        std::vector<i64> d(e);
        for (i64 i = 0; i < e; ++i) { d[i] = n % p; n /= p; }
        return d;
    };
    for (i64 a = 0; a < q; ++a)
        for (i64 b = 0; b <= a; ++b) {
            auto prod = detail::poly_mod_mul(digits(a), digits(b), gf->modulus, p);
            i64 enc = 0, pw = 1;
            for (i64 i = 0; i < e; ++i) { enc += prod[i] * pw; pw *= p; }
            gf->mul_t[(size_t)a * q + b] = gf->mul_t[(size_t)b * q + a] = (Sym)enc;
        }
    gf->inv_t.assign((size_t)q, 0);
    for (i64 a = 1; a < q; ++a)
        for (i64 b = 1; b < q; ++b)
            if (gf->mul((Sym)a, (Sym)b) == 1) { gf->inv_t[(size_t)a] = (Sym)b; break; }
    const Gf& ref = *gf;
    cache[key] = std::move(gf);
    return ref;
}

// Scalar arithmetic shared by the structured backends: the field F_{p^e}
// for vector alphabets, the ring Z/p^e for module alphabets.
struct ScalarRing {
    bool field = true;
    i64 p = 0, e = 0, size = 0;
    const Gf* gf = nullptr;  // set when field with e > 1

    Sym add(Sym a, Sym b) const {
        if (gf) return gf->add(a, b);
        return (Sym)(((i64)a + b) % size);
    }
    Sym sub(Sym a, Sym b) const {
        if (gf) return gf->sub(a, b);
        return (Sym)pos_mod((i64)a - b, size);
    }
    Sym neg(Sym a) const {
        if (gf) return gf->neg(a);
        return (Sym)pos_mod(-(i64)a, size);
    }
    Sym mul(Sym a, Sym b) const {
        if (gf) return gf->mul(a, b);
        return (Sym)(((i64)a * b) % size);
    }
    bool is_unit(Sym a) const {
        if (gf) return a != 0;
        return std::gcd((i64)a, size) == 1;
    }
    Sym inv(Sym a) const {
        if (gf) return gf->inv(a);
        i64 x, y;
        i64 g = ext_gcd(pos_mod(a, size), size, x, y);
        require(g == 1, "scalar not invertible");
        return (Sym)pos_mod(x, size);
    }
    Sym from_int(i64 n) const { return (Sym)pos_mod(n, field && gf ? gf->p : size); }
};

enum class AlphabetKind { Finite, Vector, Module };

struct Alphabet {
    AlphabetKind kind = AlphabetKind::Finite;
    i64 n = 0;     // Finite: carrier size
    i64 p = 0;     // Vector/Module: characteristic
    i64 e = 0;     // Vector: extension degree; Module: exponent of p^e
    i64 rank = 0;  // Vector/Module: number of coordinates

    bool operator==(const Alphabet&) const = default;

    i64 scalar_size() const {
        return kind == AlphabetKind::Vector || kind == AlphabetKind::Module ? checked_pow(p, e)
                                                                            : 0;
    }
    i64 size() const {
        switch (kind) {
            case AlphabetKind::Finite: return n;
            case AlphabetKind::Vector:
            case AlphabetKind::Module: return checked_pow(scalar_size(), rank);
        }
        return 0;
    }
    bool structured() const { return kind != AlphabetKind::Finite; }

    ScalarRing scalars() const {
        require(structured(), "finite-set alphabet carries no scalar arithmetic");
        ScalarRing r;
        r.p = p;
        r.e = e;
        r.size = scalar_size();
        if (kind == AlphabetKind::Vector) {
            r.field = true;
            if (e > 1) r.gf = &field_cache(p, e);
        } else {
            r.field = false;  // Z/p^e with e >= 2 has zero divisors
        }
        return r;
    }

    // coordinate vectors use row-major encoding: coordinate 0 most significant
    std::vector<Sym> decode(Sym s) const {
        require(structured(), "decode needs a structured alphabet");
        std::vector<Sym> v((size_t)rank);
        i64 ss = scalar_size(), x = s;
        for (i64 i = rank - 1; i >= 0; --i) { v[(size_t)i] = (Sym)(x % ss); x /= ss; }
        return v;
    }
    Sym encode(const std::vector<Sym>& v) const {
        require(structured() && (i64)v.size() == rank, "encode arity mismatch");
        i64 ss = scalar_size(), s = 0;
        for (i64 i = 0; i < rank; ++i) s = s * ss + v[(size_t)i];
        return (Sym)s;
    }
    Sym zero() const { return 0; }
};

// componentwise carrier arithmetic on encoded symbols
inline Sym sym_add(const Alphabet& a, Sym x, Sym y) {
    ScalarRing r = a.scalars();
    auto vx = a.decode(x), vy = a.decode(y);
    for (size_t i = 0; i < vx.size(); ++i) vx[i] = r.add(vx[i], vy[i]);
    return a.encode(vx);
}

inline Sym sym_neg(const Alphabet& a, Sym x) {
    ScalarRing r = a.scalars();
    auto vx = a.decode(x);
    for (auto& c : vx) c = r.neg(c);
    return a.encode(vx);
}

inline Sym sym_scale(const Alphabet& a, Sym c, Sym x) {
    ScalarRing r = a.scalars();
    auto vx = a.decode(x);
    for (auto& v : vx) v = r.mul(c, v);
    return a.encode(vx);
}

inline Alphabet finite_alphabet(i64 n) {
    require(n >= 1, "alphabet must be nonempty");
    return Alphabet{AlphabetKind::Finite, n, 0, 0, 0};
}

inline Alphabet vector_alphabet(i64 p, i64 e, i64 rank) {
    require(detail::is_prime(p) && e >= 1 && rank >= 1, "bad vector alphabet parameters");
    field_cache(p, e);  // validates bounds and the polynomial up front
    return Alphabet{AlphabetKind::Vector, 0, p, e, rank};
}

inline Alphabet module_alphabet(i64 p, i64 e, i64 rank) {
    require(detail::is_prime(p) && e >= 1 && rank >= 1, "bad module alphabet parameters");
    require(checked_pow(p, e) <= kEnumBudget, "module scalar ring exceeds supported bound");
    return Alphabet{AlphabetKind::Module, 0, p, e, rank};
}

}  // namespace latca
