#pragma once

// Roots and factors of polynomials over Q(sqrt D).

#include "factor.hpp"
#include "quadfield.hpp"

#include <algorithm>
#include <vector>

namespace apsq {

using KPoly = Poly<QuadElem>;

struct DegenerateEliminant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline KPoly to_kpoly(const QPoly& p, long D) {
    return p.map<QuadElem>([D](const Rational& c) { return QuadElem(D, c, 0); });
}

inline bool has_rational_coeffs(const KPoly& p) {
    for (auto& c : p.coeffs())
        if (!c.is_rational()) return false;
    return true;
}

inline QPoly to_qpoly(const KPoly& p) {
    return p.map<Rational>([](const QuadElem& c) {
        if (!c.is_rational()) throw std::invalid_argument("polynomial has irrational coefficients");
        return c.u();
    });
}

inline KPoly conj_poly(const KPoly& p) {
    return p.map<QuadElem>([](const QuadElem& c) { return c.conj(); });
}

inline long field_of(const KPoly& p, long D = 0) {
    for (auto& c : p.coeffs())
        if (c.D() != 0) {
            if (D != 0 && D != c.D()) throw FieldMismatch("mixed fields in polynomial");
            D = c.D();
        }
    return D;
}

// p(x) * conj(p)(x), a rational polynomial.
inline QPoly norm_poly(const KPoly& p) { return to_qpoly(p * conj_poly(p)); }

namespace detail {

// Newton interpolation through (xs[i], ys[i]).
inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    std::size_t n = xs.size();
    std::vector<Rational> c = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    QPoly r(c[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) r = r * QPoly({-xs[k], Rational(1)}) + QPoly(c[k]);
    return r;
}

// Split p(u0 + v sqrt D) = A(v) + B(v) sqrt D for a fixed rational u0.
inline std::pair<QPoly, QPoly> split_at(const KPoly& p, long D, const Rational& u0) {
    KPoly sub({QuadElem(D, u0, 0), QuadElem(D, 0, 1)});
    KPoly q = p.compose(sub);
    std::vector<Rational> a, b;
    for (auto& c : q.coeffs()) {
        a.push_back(c.u());
        b.push_back(c.v());
    }
    return {QPoly(a), QPoly(b)};
}

// Rational input: roots in Q(sqrt D) come from linear factors and from
// quadratic factors whose discriminant is D times a square.
inline std::vector<QuadElem> roots_via_rational_factors(const QPoly& p, long D) {
    std::vector<QuadElem> out;
    for (auto& [f, e] : factor_rational_poly(p).factors) {
        (void)e;
        if (f.degree() == 1) out.emplace_back(D, -f.coeff(0) / f.coeff(1), 0);
        if (f.degree() != 2) continue;
        Rational a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        Rational disc = b * b - 4 * a * c;
        auto w = is_square_rational(disc / Rational(D));
        if (!w) continue;
        out.emplace_back(D, -b / (2 * a), *w / (2 * a));
        out.emplace_back(D, -b / (2 * a), -*w / (2 * a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Substitute x = u + v sqrt D, eliminate v from the two rational equations
// by a resultant, take rational roots in u, back-substitute for v, verify.
inline std::vector<QuadElem> roots_by_elimination(const KPoly& p, long D) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    D = field_of(p, D);
    if (D == 0) throw std::invalid_argument("elimination needs a quadratic field");
    std::vector<QuadElem> out;
    int n = p.degree();
    if (n <= 0) return out;
    KPoly pin = p.map<QuadElem>([D](const QuadElem& c) { return c.in_field(D); });
    if (n == 1) {
        out.push_back(-pin.coeff(0) / pin.coeff(1));
        return out;
    }
    KPoly sf = squarefree_part(pin);
    n = sf.degree();
    std::size_t npts = std::size_t(n) * n + 1;
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i < npts; ++i) {
        Rational u0 = Rational(long(i)) - Rational(long(npts / 2));
        auto [A, B] = detail::split_at(sf, D, u0);
        xs.push_back(u0);
        ys.push_back(resultant(A, B));
    }
    QPoly R = detail::interpolate(xs, ys);
    if (R.is_zero()) throw DegenerateEliminant("resultant vanishes identically");
    for (auto& u0 : rational_roots(R)) {
        auto [A, B] = detail::split_at(sf, D, u0);
        QPoly g = B.is_zero() ? A : (A.is_zero() ? B : poly_gcd(A, B));
        if (g.degree() < 1) continue;
        for (auto& v0 : rational_roots(g)) {
            QuadElem cand(D, u0, v0);
            if (sf.eval(cand).is_zero()) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All roots of p lying in Q(sqrt D). Rational input of degree > 2 goes
// through the rational factorization, everything else through elimination.
inline std::vector<QuadElem> roots_in_quadfield(const KPoly& p, long D) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    D = field_of(p, D);
    std::vector<QuadElem> out;
    if (p.degree() <= 0) return out;
    if (D == 0) {
        for (auto& r : rational_roots(to_qpoly(p))) out.emplace_back(r);
        return out;
    }
    if (p.degree() > 2 && has_rational_coeffs(p)) return detail::roots_via_rational_factors(to_qpoly(p), D);
    return roots_by_elimination(p, D);
}

struct KFactor {
    KPoly factor; // monic, irreducible over Q(sqrt D)
    unsigned multiplicity;
};

// Trager's norm method.
inline std::vector<KFactor> factor_over_quadfield(const KPoly& p, long D) {
    if (p.is_zero()) throw std::invalid_argument("factor of the zero polynomial");
    D = field_of(p, D);
    std::vector<KFactor> out;
    if (p.degree() <= 0) return out;
    if (D == 0) {
        for (auto& [f, e] : factor_rational_poly(to_qpoly(p)).factors) out.push_back({to_kpoly(f, 0).monic(), e});
        return out;
    }
    KPoly pin = p.map<QuadElem>([D](const QuadElem& c) { return c.in_field(D); }).monic();
    // squarefree decomposition (Yun)
    std::vector<std::pair<KPoly, unsigned>> parts;
    {
        KPoly b = pin.derivative();
        KPoly c = poly_gcd(pin, b);
        KPoly w = pin / c, y = b / c;
        unsigned i = 1;
        while (w.degree() > 0) {
            KPoly z = y - w.derivative();
            KPoly g = z.is_zero() ? w.monic() : poly_gcd(w, z);
            if (g.degree() > 0) parts.emplace_back(g, i);
            w = w / g;
            y = z.is_zero() ? KPoly() : z / g;
            ++i;
        }
    }
    for (auto& [s, mult] : parts) {
        if (s.degree() == 1) {
            out.push_back({s.monic(), mult});
            continue;
        }
        for (long k : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L, 7L}) {
            KPoly shift({QuadElem(D, 0, -k), QuadElem(D, 1, 0)});
            KPoly g = s.compose(shift);
            QPoly N = norm_poly(g);
            if (poly_gcd(N, N.derivative()).degree() > 0) continue;
            KPoly rest = s;
            KPoly back({QuadElem(D, 0, k), QuadElem(D, 1, 0)});
            for (auto& [Ni, e] : factor_rational_poly(N).factors) {
                (void)e;
                KPoly h = poly_gcd(rest, to_kpoly(Ni, D).compose(back));
                if (h.degree() > 0) {
                    out.push_back({h.monic(), mult});
                    rest = rest / h;
                }
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const KFactor& a, const KFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        auto& x = a.factor.coeffs();
        auto& y = b.factor.coeffs();
        for (int i = int(x.size()) - 1; i >= 0; --i)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    });
    return out;
}

inline bool is_irreducible_over_quadfield(const KPoly& p, long D) {
    if (p.degree() <= 0) return false;
    auto f = factor_over_quadfield(p, D);
    return f.size() == 1 && f[0].multiplicity == 1;
}

// Degree over Q of a root of an irreducible factor over Q(sqrt D).
inline int rational_degree_of_root(const KPoly& irreducible) {
    if (has_rational_coeffs(irreducible)) return irreducible.degree();
    return 2 * irreducible.degree();
}

// Minimal polynomial over Q of a root of an irreducible factor.
inline QPoly rational_minpoly_of_root(const KPoly& irreducible) {
    if (has_rational_coeffs(irreducible)) return to_qpoly(irreducible).monic();
    return norm_poly(irreducible).monic();
}

} // namespace apsq
