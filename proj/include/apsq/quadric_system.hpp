#pragma once

// The pair of quadrics in (beta1, beta2) attached to points P1 on
// C1 : y^2 = (x+4)(x^2+4x+16) and P2 on C2 : y^2 = x(x^2+4x+16):
//   x1 (b1^2 + x1 + 8) - 2 b1 y1 - x2 (b2^2 + x2 + 4) + 2 b2 y2 + 16 = 0
//   b1^2 - b2^2 - x1 + x2 - 4 = 0

#include "quadroots.hpp"

#include <set>

namespace apsq {

// Minimal polynomial over K of the class of g in K[x]/(h), h irreducible.
inline KPoly minpoly_mod(const KPoly& g, const KPoly& h) {
    int d = h.degree();
    if (d < 1) throw std::invalid_argument("minpoly_mod needs a non-constant modulus");
    KPoly hm = h.monic();
    auto vec = [&](const KPoly& p) {
        std::vector<QuadElem> v(d, QuadElem(0));
        for (int k = 0; k <= p.degree(); ++k) v[k] = p.coeff(k);
        return v;
    };
    std::vector<std::vector<QuadElem>> powers;
    KPoly cur({QuadElem(1)});
    KPoly gr = g % hm;
    for (int k = 0; k <= d; ++k) {
        powers.push_back(vec(cur));
        // solve sum c_j powers[j] = 0 with c_k = 1 when dependent
        std::size_t n = powers.size();
        std::vector<std::vector<QuadElem>> M(d, std::vector<QuadElem>(n, QuadElem(0)));
        for (int r = 0; r < d; ++r)
            for (std::size_t c = 0; c < n; ++c) M[r][c] = powers[c][r];
        // row reduce the first n-1 columns, with column n-1 as right-hand side
        std::vector<int> pivcol;
        int row = 0;
        for (std::size_t c = 0; c + 1 < n && row < d; ++c) {
            int p = -1;
            for (int r = row; r < d; ++r)
                if (!M[r][c].is_zero()) {
                    p = r;
                    break;
                }
            if (p < 0) continue;
            std::swap(M[p], M[row]);
            QuadElem inv = M[row][c].inverse();
            for (auto& x : M[row]) x = x * inv;
            for (int r = 0; r < d; ++r)
                if (r != row && !M[r][c].is_zero()) {
                    QuadElem f = M[r][c];
                    for (std::size_t cc = 0; cc < n; ++cc) M[r][cc] = M[r][cc] - f * M[row][cc];
                }
            pivcol.push_back(int(c));
            ++row;
        }
        bool consistent = true;
        for (int r = row; r < d; ++r)
            if (!M[r][n - 1].is_zero()) consistent = false;
        if (consistent && pivcol.size() == n - 1) {
            // x^(n-1) = sum coef_j x^j with coef from the reduced system
            std::vector<QuadElem> c(n, QuadElem(0));
            c[n - 1] = QuadElem(1);
            for (std::size_t i = 0; i < pivcol.size(); ++i) c[pivcol[i]] = -M[i][n - 1];
            return KPoly(c);
        }
        cur = (cur * gr) % hm;
    }
    throw std::logic_error("minpoly_mod: no relation found");
}

struct QuadricOrbit {
    KPoly m1, m2; // minimal polynomials of beta1, beta2 over Q(sqrt D)
    int deg1 = 0, deg2 = 0; // degrees over Q
    bool in_field() const { return m1.degree() == 1 && m2.degree() == 1; }
    QuadElem beta1() const { return -m1.coeff(0); }
    QuadElem beta2() const { return -m2.coeff(0); }
};

struct QuadricSystemResult {
    long D = 0;
    std::vector<QuadricOrbit> orbits;
    std::vector<std::pair<QuadElem, QuadElem>> in_field() const {
        std::vector<std::pair<QuadElem, QuadElem>> out;
        for (auto& o : orbits)
            if (o.in_field()) out.emplace_back(o.beta1(), o.beta2());
        return out;
    }
    std::multiset<std::pair<int, int>> degrees() const {
        std::multiset<std::pair<int, int>> s;
        for (auto& o : orbits) s.insert({o.deg1, o.deg2});
        return s;
    }
};

struct DegenerateSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool kpoly_less(const KPoly& a, const KPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

} // namespace detail

// Solutions grouped into conjugacy classes over Q(sqrt D). beta1 is
// eliminated first: it enters linearly once b1^2 is replaced from the second
// equation, unless y1 = 0.
inline QuadricSystemResult solve_two_quadric_system(const QuadElem& x1, const QuadElem& y1, const QuadElem& x2, const QuadElem& y2, long D) {
    auto K = [D](const QuadElem& z) { return D != 0 ? z.in_field(D) : z; };
    QuadElem X1 = K(x1), Y1 = K(y1), X2 = K(x2), Y2 = K(y2);
    QuadricSystemResult res;
    res.D = D;
    // eq1 after b1^2 = b2^2 + x1 - x2 + 4:  c(b2) - 2 y1 b1 = 0
    // c(b2) = (x1 - x2) b2^2 + 2 y2 b2 + x1 (2 x1 - x2 + 12) - x2 (x2 + 4) + 16
    KPoly c({K(X1 * (QuadElem(2) * X1 - X2 + QuadElem(12)) - X2 * (X2 + QuadElem(4)) + QuadElem(16)), K(QuadElem(2) * Y2), K(X1 - X2)});
    KPoly g({K(X1 - X2 + QuadElem(4)), K(QuadElem(0)), K(QuadElem(1))}); // b1^2 = g(b2)
    auto add = [&](KPoly m1, KPoly m2) {
        QuadricOrbit o;
        o.m1 = m1.monic();
        o.m2 = m2.monic();
        o.deg1 = rational_degree_of_root(o.m1);
        o.deg2 = rational_degree_of_root(o.m2);
        for (auto& e : res.orbits)
            if (e.m1 == o.m1 && e.m2 == o.m2) return;
        res.orbits.push_back(o);
    };
    if (!Y1.is_zero()) {
        KPoly L = c * KPoly({K((QuadElem(2) * Y1).inverse())}); // b1 = L(b2)
        KPoly f = L * L - g;
        if (f.is_zero()) throw DegenerateSystem("eliminant vanishes identically");
        if (f.degree() < 1) return res;
        for (auto& [h, e] : factor_over_quadfield(f, D)) {
            (void)e;
            add(minpoly_mod(L, h), h);
        }
    } else {
        if (c.is_zero()) throw DegenerateSystem("eliminant vanishes identically");
        if (c.degree() < 1) return res;
        for (auto& [h, e] : factor_over_quadfield(c, D)) {
            (void)e;
            KPoly p = minpoly_mod(g, h);
            // beta1 is a root of p(X^2)
            std::vector<QuadElem> q(2 * p.degree() + 1, K(QuadElem(0)));
            for (int k = 0; k <= p.degree(); ++k) q[2 * k] = p.coeff(k);
            for (auto& [m, e2] : factor_over_quadfield(KPoly(q), D)) {
                (void)e2;
                // keep factors compatible with h: m(b1) = 0 and b1^2 = g(b2)
                add(m, h);
            }
        }
    }
    std::sort(res.orbits.begin(), res.orbits.end(), [](const QuadricOrbit& a, const QuadricOrbit& b) {
        if (a.m2 != b.m2) return detail::kpoly_less(a.m2, b.m2);
        return detail::kpoly_less(a.m1, b.m1);
    });
    return res;
}

// Q(x) from the first and from the second division identity. Needs beta^2
// and beta * y in the base field.
inline std::optional<KPoly> quadric_Q_first(const QuadElem& x1, const QuadElem& y1, const KPoly& m1) {
    std::optional<QuadElem> b2, by;
    if (m1.degree() == 1) {
        QuadElem b = -m1.coeff(0) / m1.coeff(1);
        b2 = b * b;
        by = b * y1;
    } else if (m1.degree() == 2 && m1.coeff(1).is_zero() && y1.is_zero()) {
        b2 = -m1.coeff(0) / m1.coeff(2);
        by = QuadElem(0);
    }
    if (!b2) return std::nullopt;
    return KPoly({QuadElem(32) + QuadElem(8) * x1 + *b2 * x1 + x1 * x1 - QuadElem(2) * *by, QuadElem(8) - *b2 + x1, QuadElem(1)});
}

inline std::optional<KPoly> quadric_Q_second(const QuadElem& x2, const QuadElem& y2, const KPoly& m2) {
    std::optional<QuadElem> b2, by;
    if (m2.degree() == 1) {
        QuadElem b = -m2.coeff(0) / m2.coeff(1);
        b2 = b * b;
        by = b * y2;
    } else if (m2.degree() == 2 && m2.coeff(1).is_zero() && y2.is_zero()) {
        b2 = -m2.coeff(0) / m2.coeff(2);
        by = QuadElem(0);
    }
    if (!b2) return std::nullopt;
    return KPoly({QuadElem(16) + QuadElem(4) * x2 + *b2 * x2 + x2 * x2 - QuadElem(2) * *by, QuadElem(4) - *b2 + x2, QuadElem(1)});
}

} // namespace apsq
