#pragma once

// Polynomials over F_p for word-sized primes p, used by the rational
// root finder and the Zassenhaus factorizer.

#include "arith.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <random>
#include <tuple>
#include <vector>

namespace apsq::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using MPoly = std::vector<u64>; // little-endian coefficients, trimmed

inline u64 mulm(u64 a, u64 b, u64 p) { return u64(u128(a) * b % p); }

inline u64 powm(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulm(r, b, p);
        b = mulm(b, b, p);
        e >>= 1;
    }
    return r;
}

inline u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

inline void trim(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const MPoly& a) { return int(a.size()) - 1; }

inline u64 reduce(const Integer& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

inline MPoly from_integers(const std::vector<Integer>& z, u64 p) {
    MPoly r;
    for (auto& c : z) r.push_back(reduce(c, p));
    trim(r);
    return r;
}

inline MPoly add(const MPoly& a, const MPoly& b, u64 p) {
    MPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + y) % p;
    }
    trim(r);
    return r;
}

inline MPoly sub(const MPoly& a, const MPoly& b, u64 p) {
    MPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

inline MPoly mul(const MPoly& a, const MPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

inline MPoly scale(const MPoly& a, u64 s, u64 p) {
    MPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], s, p);
    trim(r);
    return r;
}

inline std::pair<MPoly, MPoly> divmod(const MPoly& a, const MPoly& b, u64 p) {
    if (b.empty()) throw std::domain_error("mod-p division by zero");
    MPoly r = a;
    int db = deg(b);
    if (deg(a) < db) return {{}, a};
    MPoly q(deg(a) - db + 1, 0);
    u64 inv = invm(b.back(), p);
    for (int i = deg(a); i >= db; --i) {
        if (r[i] == 0) continue;
        u64 f = mulm(r[i], inv, p);
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - mulm(f, b[j], p)) % p;
    }
    r.resize(db);
    trim(r);
    trim(q);
    return {q, r};
}

inline MPoly mod(const MPoly& a, const MPoly& b, u64 p) { return divmod(a, b, p).second; }

inline MPoly monic(const MPoly& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, invm(a.back(), p), p);
}

inline MPoly gcd(MPoly a, MPoly b, u64 p) {
    while (!b.empty()) {
        MPoly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<MPoly, MPoly, MPoly> xgcd(MPoly a, MPoly b, u64 p) {
    MPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
        auto [q, r] = divmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
        MPoly s2 = sub(s0, mul(q, s1, p), p);
        MPoly t2 = sub(t0, mul(q, t1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 inv = invm(a.back(), p);
    return {scale(a, inv, p), scale(s0, inv, p), scale(t0, inv, p)};
}

inline MPoly derivative(const MPoly& a, u64 p) {
    if (a.size() <= 1) return {};
    MPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulm(a[i], i % p, p);
    trim(r);
    return r;
}

inline u64 eval(const MPoly& a, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (mulm(acc, x, p) + *it) % p;
    return acc;
}

// b^e mod f, with e given as a GMP integer
inline MPoly powmod(MPoly b, const Integer& e, const MPoly& f, u64 p) {
    MPoly r{1};
    b = mod(b, f, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mod(mul(r, r, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, b, p), f, p);
    }
    return r;
}

inline bool is_squarefree(const MPoly& f, u64 p) { return deg(gcd(f, derivative(f, p), p)) == 0; }

// Cantor-Zassenhaus factorization of a monic squarefree polynomial, p odd.
inline std::vector<MPoly> factor_squarefree(const MPoly& f0, u64 p) {
    std::vector<std::pair<MPoly, int>> ddf;
    MPoly f = f0, h{0, 1};
    const MPoly x{0, 1};
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
        MPoly g = gcd(sub(h, x, p), f, p);
        if (deg(g) > 0) {
            ddf.emplace_back(g, d);
            f = divmod(f, g, p).first;
            h = mod(h, f, p);
        }
    }
    if (deg(f) > 0) ddf.emplace_back(f, deg(f));

    std::vector<MPoly> out;
    std::mt19937_64 rng(0x5eedULL + p);
    std::function<void(const MPoly&, int)> edf = [&](const MPoly& g, int d) {
        if (deg(g) == d) {
            out.push_back(monic(g, p));
            return;
        }
        Integer e = (ipow(Integer(static_cast<unsigned long>(p)), d) - 1) / 2;
        for (;;) {
            MPoly a(deg(g));
            for (auto& v : a) v = rng() % p;
            trim(a);
            if (deg(a) <= 0) continue;
            MPoly b = sub(powmod(a, e, g, p), MPoly{1}, p);
            MPoly c = gcd(b, g, p);
            if (deg(c) > 0 && deg(c) < deg(g)) {
                edf(c, d);
                edf(divmod(g, c, p).first, d);
                return;
            }
        }
    };
    for (auto& [g, d] : ddf) edf(g, d);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<u64> roots(const MPoly& f, u64 p) {
    std::vector<u64> r;
    for (u64 x = 0; x < p; ++x)
        if (eval(f, x, p) == 0) r.push_back(x);
    return r;
}

} // namespace apsq::modp
