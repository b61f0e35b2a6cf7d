#pragma once

// Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over Q(sqrt D).

#include "quadroots.hpp"

#include <map>
#include <set>

namespace apsq {

struct CurvePoint {
    bool inf = true;
    QuadElem x{0}, y{0};

    static CurvePoint O() { return {}; }
    static CurvePoint affine(QuadElem x, QuadElem y) { return {false, std::move(x), std::move(y)}; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
        if (a.inf != b.inf) return a.inf;
        if (a.inf) return false;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    std::string str() const { return inf ? "O" : "(" + x.str() + ", " + y.str() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const CurvePoint& P) { return os << P.str(); }

struct BadReduction : std::domain_error {
    using std::domain_error::domain_error;
};

class WeierstrassCurve {
public:
    QuadElem a2{0}, a4{0}, a6{0};
    std::string label;

    WeierstrassCurve() = default;
    WeierstrassCurve(QuadElem a2_, QuadElem a4_, QuadElem a6_, std::string label_ = {})
        : a2(std::move(a2_)), a4(std::move(a4_)), a6(std::move(a6_)), label(std::move(label_)) {
        if (discriminant().is_zero()) throw std::invalid_argument("singular curve " + label);
    }

    long field() const {
        long D = 0;
        for (auto* c : {&a2, &a4, &a6})
            if (c->D() != 0) D = c->D();
        return D;
    }
    bool is_rational() const { return a2.is_rational() && a4.is_rational() && a6.is_rational(); }

    QuadElem b2() const { return QuadElem(4) * a2; }
    QuadElem b4() const { return QuadElem(2) * a4; }
    QuadElem b6() const { return QuadElem(4) * a6; }
    QuadElem b8() const { return QuadElem(4) * a2 * a6 - a4 * a4; }
    QuadElem c4() const { return b2() * b2() - QuadElem(24) * b4(); }
    QuadElem c6() const { return -b2() * b2() * b2() + QuadElem(36) * b2() * b4() - QuadElem(216) * b6(); }
    QuadElem discriminant() const {
        QuadElem B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - QuadElem(8) * B4 * B4 * B4 - QuadElem(27) * B6 * B6 + QuadElem(9) * B2 * B4 * B6;
    }
    QuadElem j_invariant() const {
        QuadElem c = c4();
        return c * c * c / discriminant();
    }

    QuadElem rhs(const QuadElem& x) const { return ((x + a2) * x + a4) * x + a6; }
    KPoly rhs_poly() const { return KPoly({a6, a4, a2, QuadElem(1)}); }
    bool contains(const CurvePoint& P) const { return P.inf || P.y * P.y == rhs(P.x); }

    CurvePoint neg(const CurvePoint& P) const { return P.inf ? P : CurvePoint::affine(P.x, -P.y); }

    CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        QuadElem lambda;
        if (P.x == Q.x) {
            if ((P.y + Q.y).is_zero()) return CurvePoint::O();
            lambda = (QuadElem(3) * P.x * P.x + QuadElem(2) * a2 * P.x + a4) / (QuadElem(2) * P.y);
        } else {
            lambda = (Q.y - P.y) / (Q.x - P.x);
        }
        QuadElem x3 = lambda * lambda - a2 - P.x - Q.x;
        QuadElem y3 = lambda * (P.x - x3) - P.y;
        return CurvePoint::affine(x3, y3);
    }
    CurvePoint sub(const CurvePoint& P, const CurvePoint& Q) const { return add(P, neg(Q)); }
    CurvePoint dbl(const CurvePoint& P) const { return add(P, P); }

    CurvePoint mul(long long n, CurvePoint P) const {
        if (n < 0) {
            P = neg(P);
            n = -n;
        }
        CurvePoint R = CurvePoint::O();
        while (n) {
            if (n & 1) R = add(R, P);
            n >>= 1;
            if (n) P = dbl(P);
        }
        return R;
    }

    // Exact order when <= bound.
    std::optional<long> point_order(const CurvePoint& P, long bound = 18) const {
        CurvePoint R = P;
        for (long n = 1; n <= bound; ++n) {
            if (R.inf) return n;
            R = add(R, P);
        }
        return std::nullopt;
    }

    std::string str() const {
        KPoly f = rhs_poly();
        return "y^2 = " + f.str("x");
    }
};

inline WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, long d) {
    QuadElem dd(d);
    std::string lbl = E.label.empty() ? "" : E.label + "^" + std::to_string(d);
    return WeierstrassCurve(dd * E.a2, dd * dd * E.a4, dd * dd * dd * E.a6, lbl);
}

// Change of variables x = u^2 x' + r, y = u^3 y'.
struct CurveIsomorphism {
    QuadElem u, r;

    CurvePoint to_target(const CurvePoint& P) const {
        if (P.inf) return P;
        QuadElem u2 = u * u;
        return CurvePoint::affine((P.x - r) / u2, P.y / (u2 * u));
    }
    CurvePoint to_source(const CurvePoint& P) const {
        if (P.inf) return P;
        QuadElem u2 = u * u;
        return CurvePoint::affine(u2 * P.x + r, u2 * u * P.y);
    }
};

inline WeierstrassCurve apply_isomorphism(const WeierstrassCurve& E, const CurveIsomorphism& m) {
    const QuadElem &r = m.r, u2 = m.u * m.u;
    QuadElem a2 = (QuadElem(3) * r + E.a2) / u2;
    QuadElem a4 = (QuadElem(3) * r * r + QuadElem(2) * E.a2 * r + E.a4) / (u2 * u2);
    QuadElem a6 = E.rhs(r) / (u2 * u2 * u2);
    return WeierstrassCurve(a2, a4, a6);
}

namespace detail {

inline std::optional<Rational> rational_cube_root(const Rational& q) {
    auto root = [](Integer n) -> std::optional<Integer> {
        bool neg = n < 0;
        if (neg) n = -n;
        Integer r;
        if (!mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3)) return std::nullopt;
        return neg ? Integer(-r) : r;
    };
    auto a = root(q.get_num()), b = root(q.get_den());
    if (!a || !b) return std::nullopt;
    return Rational(*a, *b);
}

} // namespace detail

// An admissible change of variables from E to E2 over Q(sqrt D) (D = 0 for Q).
inline std::optional<CurveIsomorphism> find_isomorphism(const WeierstrassCurve& E, const WeierstrassCurve& E2, long D = 0) {
    QuadElem c4 = E.c4(), c6 = E.c6(), d4 = E2.c4(), d6 = E2.c6();
    if (c4.is_zero() != d4.is_zero() || c6.is_zero() != d6.is_zero()) return std::nullopt;
    std::vector<QuadElem> u2cands;
    if (!c4.is_zero() && !c6.is_zero()) {
        u2cands.push_back((c6 * d4) / (d6 * c4));
    } else if (c6.is_zero()) {
        // u^4 = c4 / d4
        QuadElem q = c4 / d4;
        if (D != 0) q = q.in_field(D);
        if (auto s = is_square_quad(q)) {
            u2cands.push_back(*s);
            u2cands.push_back(-*s);
        }
    } else {
        // u^6 = c6 / d6
        QuadElem q = c6 / d6;
        if (!q.is_rational()) return std::nullopt;
        if (auto c = detail::rational_cube_root(q.u())) u2cands.emplace_back(*c);
    }
    for (auto& u2 : u2cands) {
        QuadElem t = (D != 0) ? u2.in_field(D) : u2;
        auto u = is_square_quad(t);
        if (!u) continue;
        for (const QuadElem& uu : {*u, -*u}) {
            QuadElem r = (u2 * E2.a2 - E.a2) / QuadElem(3);
            CurveIsomorphism m{uu, r};
            WeierstrassCurve img = apply_isomorphism(E, m);
            if (img.a2 == E2.a2 && img.a4 == E2.a4 && img.a6 == E2.a6) return m;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reduction mod p

namespace detail {

inline std::optional<modp::u64> reduce_rational(const Rational& q, modp::u64 p) {
    modp::u64 den = modp::reduce(q.get_den(), p);
    if (den == 0) return std::nullopt;
    return modp::mulm(modp::reduce(q.get_num(), p), modp::invm(den, p), p);
}

// u + v sqrt D at sqrt D -> s (mod p).
inline std::optional<modp::u64> reduce_quad(const QuadElem& z, modp::u64 p, modp::u64 s) {
    auto u = reduce_rational(z.u(), p), v = reduce_rational(z.v(), p);
    if (!u || !v) return std::nullopt;
    return (*u + modp::mulm(*v, s, p)) % p;
}

inline int legendre(modp::u64 a, modp::u64 p) {
    if (a % p == 0) return 0;
    return modp::powm(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// #E(F_p) for y^2 = x^3 + a x^2 + b x + c.
inline long count_points(modp::u64 a, modp::u64 b, modp::u64 c, modp::u64 p) {
    long n = 1;
    for (modp::u64 x = 0; x < p; ++x) {
        modp::u64 f = (modp::mulm(modp::mulm(x, x, p), x, p) + modp::mulm(a, modp::mulm(x, x, p), p) + modp::mulm(b, x, p) + c) % p;
        n += 1 + legendre(f, p);
    }
    return n;
}

inline modp::u64 sqrt_mod_small(modp::u64 a, modp::u64 p) {
    for (modp::u64 s = 0; s < p; ++s)
        if (modp::mulm(s, s, p) == a % p) return s;
    return p;
}

inline bool is_prime_small(modp::u64 n) {
    if (n < 2) return false;
    for (modp::u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

// a_p = p + 1 - #E(F_p) for a curve over Q.
inline long trace_of_frobenius(const WeierstrassCurve& E, unsigned long p) {
    if (!E.is_rational()) throw std::invalid_argument("trace of Frobenius needs a curve over Q");
    if (p < 3 || !detail::is_prime_small(p)) throw std::invalid_argument("p must be an odd prime");
    auto a = detail::reduce_rational(E.a2.u(), p), b = detail::reduce_rational(E.a4.u(), p), c = detail::reduce_rational(E.a6.u(), p);
    auto disc = detail::reduce_rational(E.discriminant().u(), p);
    if (!a || !b || !c || !disc || *disc == 0) throw BadReduction("bad reduction at " + std::to_string(p));
    return long(p) + 1 - detail::count_points(*a, *b, *c, p);
}

// Multiple of the torsion order over Q(sqrt D): gcd of #E(F_P) over split
// primes P of good reduction above p >= 5 (torsion injects there).
inline long torsion_order_bound(const WeierstrassCurve& E, long D, int nprimes = 16) {
    long g = 0;
    int used = 0;
    for (modp::u64 p = 5; used < nprimes && p < 100000; p += 2) {
        if (!detail::is_prime_small(p)) continue;
        std::vector<modp::u64> roots;
        if (D == 0) {
            roots.push_back(0);
        } else {
            if (Integer(D) % Integer(static_cast<unsigned long>(p)) == 0) continue;
            modp::u64 d = modp::reduce(Integer(D), p);
            if (detail::legendre(d, p) != 1) continue;
            modp::u64 s = detail::sqrt_mod_small(d, p);
            roots = {s, p - s};
        }
        for (auto s : roots) {
            auto a = detail::reduce_quad(E.a2, p, s), b = detail::reduce_quad(E.a4, p, s), c = detail::reduce_quad(E.a6, p, s);
            auto disc = detail::reduce_quad(E.discriminant(), p, s);
            if (!a || !b || !c || !disc || *disc == 0) continue;
            long n = detail::count_points(*a, *b, *c, p);
            g = std::gcd(g, n);
            ++used;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Division polynomials

// f_n with psi_n = f_n (n odd) and psi_n = 2y f_n (n even).
class DivisionPolynomials {
public:
    explicit DivisionPolynomials(const WeierstrassCurve& E) : E_(E) {
        QuadElem b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
        F_ = KPoly({b6, QuadElem(2) * b4, b2, QuadElem(4)});
        F2_ = F_ * F_;
        f_ = {KPoly(), KPoly({QuadElem(1)}), KPoly({QuadElem(1)}),
              KPoly({b8, QuadElem(3) * b6, QuadElem(3) * b4, b2, QuadElem(3)}),
              KPoly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, QuadElem(10) * b8, QuadElem(10) * b6, QuadElem(5) * b4, b2, QuadElem(2)})};
    }

    const KPoly& f(std::size_t n) {
        while (f_.size() <= n) {
            std::size_t k = f_.size();
            std::size_t m = k / 2;
            KPoly next;
            if (k % 2 == 1) {
                KPoly t1 = f_[m + 2] * poly_pow(f_[m], 3), t2 = f_[m - 1] * poly_pow(f_[m + 1], 3);
                next = (m % 2 == 0) ? F2_ * t1 - t2 : t1 - F2_ * t2;
            } else {
                next = f_[m] * (f_[m + 2] * f_[m - 1] * f_[m - 1] - f_[m - 2] * f_[m + 1] * f_[m + 1]);
            }
            f_.push_back(next);
        }
        return f_[n];
    }
    // psi_n^2 as a polynomial in x
    KPoly psi_squared(std::size_t n) {
        const KPoly& g = f(n);
        return (n % 2 == 0) ? F_ * g * g : g * g;
    }
    // phi_n = x psi_n^2 - psi_{n+1} psi_{n-1}
    KPoly phi(std::size_t n) {
        KPoly x = KPoly::x();
        const KPoly &a = f(n + 1), &b = f(n - 1);
        if (n % 2 == 1) return x * f(n) * f(n) - F_ * a * b;
        return x * F_ * f(n) * f(n) - a * b;
    }
    const KPoly& F() const { return F_; }

private:
    WeierstrassCurve E_;
    KPoly F_, F2_;
    std::vector<KPoly> f_;
};

namespace detail {

inline std::optional<QuadElem> sqrt_in(const QuadElem& z, long D) { return is_square_quad(D != 0 ? z.in_field(D) : z); }

// Points over Q(sqrt D) with x among the roots of p and n R = Q.
inline std::vector<CurvePoint> points_over_roots(const WeierstrassCurve& E, const KPoly& p, long D, long n, const CurvePoint& Q) {
    std::vector<CurvePoint> out;
    if (p.degree() <= 0) return out;
    for (auto& x0 : roots_in_quadfield(p, D)) {
        auto y = sqrt_in(E.rhs(x0), D);
        if (!y) continue;
        for (const QuadElem& yy : {*y, -*y}) {
            CurvePoint R = CurvePoint::affine(x0, yy);
            if (E.mul(n, R) == Q && std::find(out.begin(), out.end(), R) == out.end()) out.push_back(R);
            if (yy.is_zero()) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// x-coordinates of the R with 2R = Q (Q affine) are the roots of
// x^4 - b4 x^2 - 2 b6 x - b8 - x_Q (4x^3 + b2 x^2 + 2 b4 x + b6).
inline KPoly halving_polynomial(const WeierstrassCurve& E, const CurvePoint& Q) {
    if (Q.inf) throw std::invalid_argument("halving polynomial needs an affine point");
    KPoly num({-E.b8(), QuadElem(-2) * E.b6(), -E.b4(), QuadElem(0), QuadElem(1)});
    KPoly den({E.b6(), QuadElem(2) * E.b4(), E.b2(), QuadElem(4)});
    return num - KPoly({Q.x}) * den;
}

// All R over Q(sqrt D) with 2R = Q.
inline std::vector<CurvePoint> halve_point(const WeierstrassCurve& E, const CurvePoint& Q, long D) {
    if (!E.contains(Q)) throw std::invalid_argument("point not on curve");
    std::vector<CurvePoint> out;
    if (Q.inf) {
        out.push_back(CurvePoint::O());
        auto two = detail::points_over_roots(E, E.rhs_poly(), D, 2, Q);
        out.insert(out.end(), two.begin(), two.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    return detail::points_over_roots(E, halving_polynomial(E, Q), D, 2, Q);
}

// All R over Q(sqrt D) with n R = Q (n >= 2).
inline std::vector<CurvePoint> divide_point(const WeierstrassCurve& E, const CurvePoint& Q, long n, long D) {
    if (n == 2) return halve_point(E, Q, D);
    DivisionPolynomials dp(E);
    std::vector<CurvePoint> out;
    if (Q.inf) {
        out.push_back(CurvePoint::O());
        // points of exact order dividing n: roots of f_n (n odd), or of F f_n
        KPoly g = (n % 2 == 0) ? dp.F() * dp.f(n) : dp.f(n);
        auto pts = detail::points_over_roots(E, g, D, n, Q);
        out.insert(out.end(), pts.begin(), pts.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    KPoly g = dp.phi(n) - KPoly({Q.x}) * dp.psi_squared(n);
    return detail::points_over_roots(E, g, D, n, Q);
}

struct TorsionSubgroup {
    std::vector<CurvePoint> points; // sorted, includes O
    std::vector<long> invariants;   // Z/n1 x Z/n2 with n1 | n2
    long bound = 0;                 // multiple of the order from reductions

    std::string structure() const {
        if (invariants.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < invariants.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(invariants[i]);
        return s;
    }
};

// Full torsion subgroup over Q(sqrt D): bound by reduction, then build each
// primary part by repeated division, starting from the identity.
inline TorsionSubgroup compute_torsion(const WeierstrassCurve& E, long D) {
    TorsionSubgroup T;
    T.bound = torsion_order_bound(E, D);
    std::map<long, int> primes;
    {
        long b = T.bound;
        for (long q = 2; q * q <= b; ++q)
            while (b % q == 0) {
                primes[q]++;
                b /= q;
            }
        if (b > 1) primes[b]++;
    }
    std::set<CurvePoint> group{CurvePoint::O()};
    for (auto [ell, k] : primes) {
        long ellk = 1;
        for (int i = 0; i < k; ++i) ellk *= ell;
        std::set<CurvePoint> part{CurvePoint::O()};
        std::vector<CurvePoint> frontier{CurvePoint::O()};
        while (!frontier.empty()) {
            std::vector<CurvePoint> next;
            for (auto& Q : frontier) {
                long ord = *E.point_order(Q, ellk);
                if (ord * ell > ellk) continue;
                for (auto& R : divide_point(E, Q, ell, D))
                    if (part.insert(R).second) next.push_back(R);
            }
            frontier = next;
        }
        std::set<CurvePoint> sum;
        for (auto& a : group)
            for (auto& b : part) sum.insert(E.add(a, b));
        group = sum;
    }
    T.points.assign(group.begin(), group.end());
    long N = long(T.points.size()), e = 1;
    for (auto& P : T.points) e = std::lcm(e, *E.point_order(P, N));
    if (N > 1) {
        if (N / e > 1) T.invariants.push_back(N / e);
        T.invariants.push_back(e);
    }
    return T;
}

} // namespace apsq
