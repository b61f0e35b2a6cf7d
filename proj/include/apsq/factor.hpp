#pragma once

// Factorization of rational polynomials (Zassenhaus: mod-p factorization,
// Hensel lifting, factor recombination).

#include "rational_roots.hpp"

#include <functional>
#include <vector>

namespace apsq {

struct PolyFactorization {
    Rational unit;                                  // leading constant
    std::vector<std::pair<QPoly, unsigned>> factors; // primitive integer, positive lc

    QPoly expand() const {
        QPoly r(unit);
        for (auto& [f, e] : factors) r *= poly_pow(f, e);
        return r;
    }
    std::vector<int> degrees() const {
        std::vector<int> d;
        for (auto& [f, e] : factors)
            for (unsigned i = 0; i < e; ++i) d.push_back(f.degree());
        std::sort(d.begin(), d.end());
        return d;
    }
};

namespace detail {

using ZPoly = std::vector<Integer>;

inline void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& v : r) v = mod_floor(v, m);
    ztrim(r);
    return r;
}

inline ZPoly from_mpoly(const modp::MPoly& a) {
    ZPoly r;
    for (auto v : a) r.emplace_back(static_cast<unsigned long>(v));
    return r;
}

inline modp::MPoly to_mpoly(const ZPoly& a, modp::u64 p) { return modp::from_integers(a, p); }

// Lift f == lc * g * h (mod p), g and h monic and coprime, to modulus p^k.
inline std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, ZPoly g, ZPoly h, modp::u64 p, const Integer& target) {
    Integer lc = f.back();
    auto gp = to_mpoly(g, p), hp = to_mpoly(h, p);
    auto [one, s, t] = modp::xgcd(gp, hp, p);
    (void)one;
    modp::u64 lcinv = modp::invm(modp::reduce(lc, p), p);
    Integer P(static_cast<unsigned long>(p)), m = P;
    while (m < target) {
        Integer m1 = m * P;
        ZPoly prod = zmul_mod(g, h, m1);
        ZPoly e(f.size(), Integer(0));
        for (std::size_t i = 0; i < f.size(); ++i) {
            Integer v = f[i] - lc * (i < prod.size() ? prod[i] : Integer(0));
            v = mod_floor(v, m1);
            e[i] = v / m; // exact
        }
        ztrim(e);
        auto ep = modp::scale(to_mpoly(e, p), lcinv, p);
        auto dg = modp::mod(modp::mul(ep, t, p), gp, p);
        auto rest = modp::sub(ep, modp::mul(dg, hp, p), p);
        auto dh = modp::divmod(rest, gp, p).first;
        auto add_lift = [&](ZPoly& a, const modp::MPoly& d) {
            if (a.size() < d.size()) a.resize(d.size(), Integer(0));
            for (std::size_t i = 0; i < d.size(); ++i) a[i] = mod_floor(a[i] + m * Integer(static_cast<unsigned long>(d[i])), m1);
        };
        add_lift(g, dg);
        add_lift(h, dh);
        m = m1;
    }
    return {g, h};
}

// Lift all modular factors of f (monic, pairwise coprime mod p).
inline std::vector<ZPoly> hensel_multi(const ZPoly& f, const std::vector<modp::MPoly>& facs, modp::u64 p, const Integer& target) {
    if (facs.size() == 1) {
        // the single factor is f / lc
        Integer m = 1, P(static_cast<unsigned long>(p));
        while (m < target) m *= P;
        Integer inv = inverse_mod(f.back(), m);
        ZPoly g;
        for (auto& c : f) g.push_back(mod_floor(c * inv, m));
        return {g};
    }
    std::size_t half = facs.size() / 2;
    modp::MPoly gp{1}, hp{1};
    for (std::size_t i = 0; i < half; ++i) gp = modp::mul(gp, facs[i], p);
    for (std::size_t i = half; i < facs.size(); ++i) hp = modp::mul(hp, facs[i], p);
    auto [g, h] = hensel_pair(f, from_mpoly(gp), from_mpoly(hp), p, target);
    // g and h are monic modulo the final modulus; lift their own factors
    std::vector<modp::MPoly> left(facs.begin(), facs.begin() + half), right(facs.begin() + half, facs.end());
    auto a = hensel_multi(g, left, p, target);
    auto b = hensel_multi(h, right, p, target);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline bool zdivides(const ZPoly& g, const ZPoly& f, ZPoly* quotient) {
    auto [q, r] = QPoly::divmod(qpoly_from_integers(f), qpoly_from_integers(g));
    if (!r.is_zero()) return false;
    ZPoly out;
    for (auto& c : q.coeffs()) {
        if (c.get_den() != 1) return false;
        out.push_back(c.get_num());
    }
    if (quotient) *quotient = out;
    return true;
}

inline ZPoly primitive(ZPoly a) {
    Integer g = 0;
    for (auto& c : a) g = igcd(g, c);
    if (g == 0) return a;
    if (sgn(a.back()) < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

inline std::vector<ZPoly> zassenhaus(ZPoly f) {
    int n = int(f.size()) - 1;
    if (n <= 1) return {f};
    // choose the prime with the fewest modular factors among a few candidates
    modp::u64 best = 0;
    std::vector<modp::MPoly> best_facs;
    for (std::size_t k = 0; k < 6; ++k) {
        modp::u64 p = good_prime(f, k);
        auto facs = modp::factor_squarefree(modp::monic(modp::from_integers(f, p), p), p);
        if (best == 0 || facs.size() < best_facs.size()) {
            best = p;
            best_facs = facs;
        }
        if (facs.size() == 1) break;
    }
    if (best_facs.size() == 1) return {f};
    Integer norm2 = 0;
    for (auto& c : f) norm2 += c * c;
    Integer bound = abs(f.back()) * ipow(2, n) * (isqrt(norm2) + 1);
    Integer target = 2 * bound + 1;
    auto lifted = hensel_multi(f, best_facs, best, target);
    Integer M = 1, P(static_cast<unsigned long>(best));
    while (M < target) M *= P;

    std::vector<ZPoly> out;
    std::vector<ZPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) -> bool {
            if (depth == s) {
                ZPoly g{mod_floor(f.back(), M)};
                for (auto i : idx) g = zmul_mod(g, pool[i], M);
                for (auto& c : g)
                    if (c > M / 2) c -= M;
                g = primitive(g);
                ZPoly q;
                if (zdivides(g, f, &q)) {
                    out.push_back(g);
                    f = q;
                    std::vector<ZPoly> rest;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(pool[i]);
                    pool = rest;
                    return true;
                }
                return false;
            }
            for (std::size_t i = start; i < pool.size(); ++i) {
                idx[depth] = i;
                if (rec(i + 1, depth + 1)) return true;
            }
            return false;
        };
        found = rec(0, 0);
        if (!found) ++s;
    }
    out.push_back(primitive(f));
    return out;
}

} // namespace detail

// Complete factorization over Q into irreducible primitive integer factors.
inline PolyFactorization factor_rational_poly(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor of the zero polynomial");
    PolyFactorization out;
    auto z = primitive_integer_model(p);
    QPoly prim = qpoly_from_integers(z);
    out.unit = p.lc() / prim.lc();
    if (prim.degree() == 0) return out;
    // Yun's squarefree decomposition
    QPoly a = prim.monic();
    QPoly b = a.derivative();
    QPoly c = poly_gcd(a, b);
    QPoly w = a / c;
    QPoly y = b / c;
    unsigned i = 1;
    for (;;) {
        if (w.degree() <= 0) break;
        QPoly z1 = y - w.derivative();
        if (z1.is_zero()) {
            if (w.degree() > 0) {
                for (auto& f : detail::zassenhaus(primitive_integer_model(w))) out.factors.emplace_back(qpoly_from_integers(f), i);
            }
            break;
        }
        QPoly g = poly_gcd(w, z1);
        if (g.degree() > 0)
            for (auto& f : detail::zassenhaus(primitive_integer_model(g))) out.factors.emplace_back(qpoly_from_integers(f), i);
        w = w / g;
        y = z1 / g;
        ++i;
    }
    std::sort(out.factors.begin(), out.factors.end(), [](auto& x, auto& y2) {
        if (x.first.degree() != y2.first.degree()) return x.first.degree() < y2.first.degree();
        auto& a1 = x.first.coeffs();
        auto& b1 = y2.first.coeffs();
        for (int k = int(a1.size()) - 1; k >= 0; --k)
            if (a1[k] != b1[k]) return a1[k] < b1[k];
        return x.second < y2.second;
    });
    return out;
}

inline bool is_irreducible_rational(const QPoly& p) {
    if (p.degree() <= 0) return false;
    auto f = factor_rational_poly(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace apsq
