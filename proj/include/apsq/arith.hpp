#pragma once

// Exact integer and rational arithmetic on top of GMP.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apsq {

using Integer = mpz_class;
using Rational = mpq_class;

struct FactorError : std::runtime_error {
    Integer cofactor;
    FactorError(const std::string& what, Integer c) : std::runtime_error(what), cofactor(std::move(c)) {}
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Factorization = std::vector<std::pair<Integer, unsigned>>;

inline Rational make_rational(const Integer& n, const Integer& d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer ipow(Integer b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational rpow(const Rational& b, unsigned long e) {
    Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    r.canonicalize();
    return r;
}

inline Integer igcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer ilcm(const Integer& a, const Integer& b) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t limit = 1000000;
        std::vector<bool> comp(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) comp[j] = true;
        }
        return out;
    }();
    return primes;
}

inline bool miller_rabin_base(const Integer& n, const Integer& a) {
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

// Deterministic below 3.3e24 (first 13 prime bases); above that GMP's
// BPSW-based test is used.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (int b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    static const Integer det_limit("3317044064679887385961981");
    if (n < det_limit) {
        for (int b : bases)
            if (!detail::miller_rabin_base(n, b)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Pollard-Brent rho. Returns a nontrivial factor or nullopt when the
// iteration budget runs out.
inline std::optional<Integer> pollard_brent(const Integer& n, std::uint64_t budget, unsigned seed = 1) {
    if (mpz_even_p(n.get_mpz_t())) return Integer(2);
    for (unsigned c0 = seed; c0 < seed + 8; ++c0) {
        Integer c = c0, y = 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1, used = 0;
        const std::uint64_t m = 128;
        while (g == 1 && used < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Integer diff = x - y;
                    q = q * abs(diff) % n;
                }
                g = igcd(q, n);
                k += lim;
                used += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = igcd(abs(Integer(x - ys)), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        if (used >= budget) return std::nullopt;
    }
    return std::nullopt;
}

struct PartialFactorization {
    Factorization primes;                   // certified prime powers
    std::vector<std::pair<Integer, unsigned>> composites; // unfactored composite cofactors
    bool complete() const { return composites.empty(); }
};

namespace detail {

inline void push_factor(Factorization& f, const Integer& p, unsigned e) {
    for (auto& [q, k] : f)
        if (q == p) {
            k += e;
            return;
        }
    f.emplace_back(p, e);
}

inline void split_cofactor(const Integer& n, unsigned mult, std::uint64_t budget, PartialFactorization& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        push_factor(out.primes, n, mult);
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned k = 2;; ++k) {
            Integer r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
                // smallest k gives the largest root; recurse with multiplicity
                split_cofactor(r, mult * k, budget, out);
                return;
            }
        }
    }
    auto d = pollard_brent(n, budget);
    if (!d) {
        out.composites.emplace_back(n, mult);
        return;
    }
    Integer a = *d, b = n / *d;
    split_cofactor(a, mult, budget, out);
    split_cofactor(b, mult, budget, out);
}

} // namespace detail

// Trial division to 1e6, then Pollard-Brent with the given budget.
inline PartialFactorization factor_partial(const Integer& n0, std::uint64_t rho_budget = std::uint64_t(1) << 22) {
    if (n0 == 0) throw std::invalid_argument("factor of zero");
    PartialFactorization out;
    Integer n = abs(n0);
    for (std::uint32_t p : detail::small_primes()) {
        if (Integer(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out.primes.emplace_back(Integer(p), e);
        }
    }
    detail::split_cofactor(n, 1, rho_budget, out);
    std::sort(out.primes.begin(), out.primes.end(), [](auto& a, auto& b) { return a.first < b.first; });
    // merge duplicates that may arise from separate cofactors
    Factorization merged;
    for (auto& [p, e] : out.primes) detail::push_factor(merged, p, e);
    out.primes = std::move(merged);
    return out;
}

// Prime powers of |n| in increasing order, with the sign of n kept aside.
struct PrimeFactorization : Factorization {
    int sign = 1;
    Integer value() const {
        Integer r = sign;
        for (auto& [p, e] : *this) r *= ipow(p, e);
        return r;
    }
};

// Complete factorization; throws FactorError when a composite cofactor
// resists the rho budget.
inline PrimeFactorization factor_integer(const Integer& n, std::uint64_t rho_budget = std::uint64_t(1) << 24) {
    if (n == 0) throw std::domain_error("factor_integer of zero");
    auto pf = factor_partial(n, rho_budget);
    if (!pf.complete())
        throw FactorError("composite cofactor resisted factorization", pf.composites.front().first);
    PrimeFactorization out;
    static_cast<Factorization&>(out) = std::move(pf.primes);
    out.sign = sgn(n) < 0 ? -1 : 1;
    return out;
}

// q = s * r^2 with s a squarefree integer (carrying the sign) and r > 0.
inline std::pair<Integer, Rational> squarefree_part_rational(const Rational& q) {
    if (q == 0) throw std::invalid_argument("squarefree part of zero");
    // q = a/b = a*b / b^2
    Integer m = q.get_num() * q.get_den();
    Integer s = sgn(m) < 0 ? -1 : 1, root = 1;
    for (auto& [p, e] : factor_integer(m)) {
        if (e % 2) s *= p;
        root *= ipow(p, e / 2);
    }
    return {s, make_rational(root, q.get_den())};
}

inline std::optional<Rational> is_square_rational(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den())) return std::nullopt;
    return make_rational(isqrt(q.get_num()), isqrt(q.get_den()));
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace apsq
