#pragma once

// Dense univariate polynomials over an exact field.

#include "arith.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace apsq {

template <class F>
class Poly {
public:
    using value_type = F;

    Poly() = default;
    Poly(const F& c) : c_{c} { trim(); }
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

    static Poly x() { return Poly(std::vector<F>{F(0), F(1)}); }
    static Poly monomial(const F& a, std::size_t k) {
        std::vector<F> v(k + 1, F(0));
        v[k] = a;
        return Poly(std::move(v));
    }

    int degree() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(std::size_t k) const { return k < c_.size() ? c_[k] : F(0); }
    F lc() const { return c_.empty() ? F(0) : c_.back(); }

    F operator()(const F& x) const { return eval(x); }

    template <class T>
    T eval(const T& x) const {
        T acc = T(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == F(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const F& s, const Poly& p) {
        Poly r = p;
        for (auto& v : r.c_) v = s * v;
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    // Euclidean division; requires a nonzero divisor.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<F> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Poly(), a};
        std::vector<F> q(a.degree() - db + 1, F(0));
        F inv = F(1) / b.lc();
        for (int i = a.degree(); i >= db; --i) {
            if (r[i] == F(0)) continue;
            F f = r[i] * inv;
            q[i - db] = f;
            for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - f * b.c_[j];
        }
        r.resize(db);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return (F(1) / lc()) * *this;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<F> r(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F(int(i)) * c_[i];
        return Poly(std::move(r));
    }

    // p(q(x))
    Poly compose(const Poly& q) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Poly(*it);
        return acc;
    }

    template <class G, class Fn>
    Poly<G> map(Fn fn) const {
        std::vector<G> r;
        r.reserve(c_.size());
        for (auto& v : c_) r.push_back(fn(v));
        return Poly<G>(std::move(r));
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class F>
Poly<F> poly_pow(Poly<F> b, unsigned e) {
    Poly<F> r(F(1));
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Squarefree part: p / gcd(p, p') (characteristic zero).
template <class F>
Poly<F> squarefree_part(const Poly<F>& p) {
    if (p.degree() <= 0) return p;
    auto g = poly_gcd(p, p.derivative());
    return (p / g).monic();
}

// Resultant over a field by the Euclidean remainder sequence.
template <class F>
F resultant(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return F(0);
    int da = a.degree(), db = b.degree();
    if (db == 0) {
        F r(1);
        for (int i = 0; i < da; ++i) r = r * b.lc();
        return r;
    }
    if (da == 0) {
        F r(1);
        for (int i = 0; i < db; ++i) r = r * a.lc();
        return r;
    }
    auto r = a % b;
    if (r.is_zero()) return F(0);
    int dr = r.degree();
    F s = resultant(b, r);
    for (int i = 0; i < da - dr; ++i) s = s * b.lc();
    if ((da * db) % 2) s = -s;
    return s;
}

template <class F>
F discriminant(const Poly<F>& p) {
    int n = p.degree();
    F r = resultant(p, p.derivative()) / p.lc();
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r;
}

namespace detail {

inline std::string coeff_str(const Rational& q) { return q.get_str(); }

template <class F>
std::string coeff_str(const F& v) {
    return to_string(v);
}

template <class F>
bool coeff_is_simple(const F& v) {
    std::string s = coeff_str(v);
    return s.find_first_of("+-", 1) == std::string::npos;
}

} // namespace detail

template <class F>
std::string Poly<F>::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const F& v = c_[i];
        if (v == F(0)) continue;
        std::string s = detail::coeff_str(v);
        bool simple = detail::coeff_is_simple(v);
        bool neg = simple && !s.empty() && s[0] == '-';
        if (neg) s = s.substr(1);
        if (!simple) s = "(" + s + ")";
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << s;
            continue;
        }
        if (s != "1") os << s << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

using QPoly = Poly<Rational>;

// Primitive integer model: the integer polynomial with content 1 and
// positive leading coefficient proportional to p.
inline std::vector<Integer> primitive_integer_model(const QPoly& p) {
    Integer L = 1;
    for (auto& c : p.coeffs()) L = ilcm(L, c.get_den());
    std::vector<Integer> z;
    Integer g = 0;
    for (auto& c : p.coeffs()) {
        Integer v = c.get_num() * (L / c.get_den());
        z.push_back(v);
        g = igcd(g, v);
    }
    if (g == 0) return z;
    if (sgn(z.back()) < 0) g = -g;
    for (auto& v : z) v /= g;
    return z;
}

inline QPoly qpoly_from_integers(const std::vector<Integer>& z) {
    std::vector<Rational> v;
    for (auto& c : z) v.emplace_back(c);
    return QPoly(std::move(v));
}

} // namespace apsq
