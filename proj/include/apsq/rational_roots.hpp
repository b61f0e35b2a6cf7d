#pragma once

#include "modp.hpp"
#include "poly.hpp"

#include <algorithm>
#include <vector>

namespace apsq {

namespace detail {

inline Integer eval_int(const std::vector<Integer>& z, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = mod_floor(acc * x + *it, m);
    return acc;
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) throw std::domain_error("not invertible");
    return r;
}

inline std::vector<Integer> derivative_int(const std::vector<Integer>& z) {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < z.size(); ++i) d.push_back(z[i] * Integer(static_cast<unsigned long>(i)));
    return d;
}

// A prime not dividing the leading coefficient for which z stays squarefree.
inline modp::u64 good_prime(const std::vector<Integer>& z, std::size_t skip = 0) {
    for (std::uint32_t p : small_primes()) {
        if (p < 3) continue;
        if (mpz_divisible_ui_p(z.back().get_mpz_t(), p)) continue;
        auto f = modp::from_integers(z, p);
        if (!modp::is_squarefree(f, p)) continue;
        if (skip-- == 0) return p;
    }
    throw std::runtime_error("no suitable prime");
}

} // namespace detail

// Rational roots of p via the rational-root bound |lc * root| <= |lc * c0|:
// simple roots modulo a good prime are lifted p-adically past that bound
// and each candidate is checked exactly.
inline std::vector<Rational> rational_roots(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
    std::vector<Rational> out;
    QPoly q = p;
    if (q.degree() >= 1 && q.coeff(0) == 0) {
        out.emplace_back(0);
        while (q.degree() >= 1 && q.coeff(0) == 0) q = q / QPoly::x();
    }
    if (q.degree() >= 1) {
        q = squarefree_part(q);
        auto z = primitive_integer_model(q);
        if (z.size() == 2) {
            out.push_back(make_rational(-z[0], z[1]));
        } else {
            Integer lc = z.back(), c0 = z.front();
            modp::u64 l = detail::good_prime(z);
            Integer bound = 2 * abs(lc) * abs(c0) + 1;
            Integer L(static_cast<unsigned long>(l)), M = L;
            std::vector<Integer> dz = detail::derivative_int(z);
            auto fl = modp::from_integers(z, l);
            for (modp::u64 r0 : modp::roots(fl, l)) {
                Integer r(static_cast<unsigned long>(r0)), m = L;
                while (m <= bound) {
                    Integer m2 = m * m;
                    Integer fv = detail::eval_int(z, r, m2), dv = detail::eval_int(dz, r, m2);
                    r = mod_floor(r - fv * detail::inverse_mod(dv, m2), m2);
                    m = m2;
                }
                M = m;
                Integer c = mod_floor(lc * r, M);
                if (c > M / 2) c -= M;
                Rational cand = make_rational(c, lc);
                if (q.eval(cand) == 0) out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace apsq
