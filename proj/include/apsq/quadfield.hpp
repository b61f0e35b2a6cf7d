#pragma once

// Quadratic fields Q(sqrt D) and their elements u + v*sqrt(D).

#include "arith.hpp"
#include "poly.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace apsq {

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An element u + v*sqrt(D). D == 0 marks a rational constant that adopts
// the field of whatever it is combined with.
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(int n) : u_(n) {}
    QuadElem(long n) : u_(n) {}
    QuadElem(const Integer& n) : u_(n) {}
    QuadElem(const Rational& q) : u_(q) { u_.canonicalize(); }
    QuadElem(long D, Rational u, Rational v = 0) : D_(D), u_(std::move(u)), v_(std::move(v)) {
        u_.canonicalize();
        v_.canonicalize();
        if (D_ == 1) {
            u_ += v_;
            v_ = 0;
            D_ = 0;
        }
        if (D_ == 0 && v_ != 0) throw std::invalid_argument("sqrt part without a field");
    }

    static QuadElem sqrt_of(long D) { return QuadElem(D, 0, 1); }

    long D() const { return D_; }
    const Rational& u() const { return u_; }
    const Rational& v() const { return v_; }
    bool is_rational() const { return v_ == 0; }
    bool is_zero() const { return u_ == 0 && v_ == 0; }

    QuadElem in_field(long D) const {
        if (D_ != 0 && D_ != D && v_ != 0) throw FieldMismatch("element not in Q(sqrt " + std::to_string(D) + ")");
        QuadElem r = *this;
        r.D_ = (D == 1) ? 0 : D;
        return r;
    }

    QuadElem conj() const {
        QuadElem r = *this;
        r.v_ = -v_;
        return r;
    }
    Rational norm() const { return u_ * u_ - Rational(D_) * v_ * v_; }
    Rational trace() const { return 2 * u_; }

    friend long merge_field(const QuadElem& a, const QuadElem& b) {
        if (a.D_ == 0) return b.D_;
        if (b.D_ == 0 || a.D_ == b.D_) return a.D_;
        throw FieldMismatch("mixing Q(sqrt " + std::to_string(a.D_) + ") and Q(sqrt " + std::to_string(b.D_) + ")");
    }

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
        return QuadElem(merge_field(a, b), a.u_ + b.u_, a.v_ + b.v_, raw_tag{});
    }
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
        return QuadElem(merge_field(a, b), a.u_ - b.u_, a.v_ - b.v_, raw_tag{});
    }
    QuadElem operator-() const { return QuadElem(D_, -u_, -v_, raw_tag{}); }
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
        long D = merge_field(a, b);
        if (a.v_ == 0) return QuadElem(D, a.u_ * b.u_, a.u_ * b.v_, raw_tag{});
        if (b.v_ == 0) return QuadElem(D, a.u_ * b.u_, a.v_ * b.u_, raw_tag{});
        return QuadElem(D, a.u_ * b.u_ + Rational(D) * a.v_ * b.v_, a.u_ * b.v_ + a.v_ * b.u_, raw_tag{});
    }
    QuadElem inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in Q(sqrt D)");
        if (v_ == 0) return QuadElem(D_, 1 / u_, 0, raw_tag{});
        Rational n = norm();
        return QuadElem(D_, u_ / n, -v_ / n, raw_tag{});
    }
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inverse(); }
    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
    QuadElem& operator/=(const QuadElem& o) { return *this = *this / o; }

    friend bool operator==(const QuadElem& a, const QuadElem& b) { return a.u_ == b.u_ && a.v_ == b.v_ && (a.v_ == 0 || a.D_ == b.D_ || a.D_ == 0 || b.D_ == 0); }
    friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }
    // Documented total order: lexicographic on (u, v).
    friend bool operator<(const QuadElem& a, const QuadElem& b) {
        if (a.u_ != b.u_) return a.u_ < b.u_;
        return a.v_ < b.v_;
    }

    QuadElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QuadElem r(D_, 1, 0), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Algebraic integer test: trace and norm integral.
    bool is_integral() const {
        Rational t = trace(), n = norm();
        return t.get_den() == 1 && n.get_den() == 1;
    }

    std::string str() const;

private:
    struct raw_tag {};
    QuadElem(long D, Rational u, Rational v, raw_tag) : D_(D), u_(std::move(u)), v_(std::move(v)) {}

    long D_ = 0;
    Rational u_ = 0, v_ = 0;
};

inline std::string to_string(const QuadElem& z) { return z.str(); }

inline std::ostream& operator<<(std::ostream& os, const QuadElem& z) { return os << z.str(); }

inline std::string QuadElem::str() const {
    if (v_ == 0) return u_.get_str();
    std::string root = "sqrt(" + std::to_string(D_) + ")";
    std::string vs;
    Rational av = abs(v_);
    if (av == 1)
        vs = root;
    else
        vs = av.get_str() + "*" + root;
    if (u_ == 0) return (sgn(v_) < 0 ? "-" : "") + vs;
    return u_.get_str() + (sgn(v_) < 0 ? "-" : "+") + vs;
}

// Grammar: sum of terms, each a rational "a" or "a/b", optionally times
// "sqrt(D)" (either order), or the shorthand "i" for sqrt(-1).
inline QuadElem parse_quad(const std::string& text, long default_D = 0) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty element literal");
    std::size_t pos = 0;
    long D = default_D == 1 ? 0 : default_D;
    Rational u = 0, v = 0;
    auto parse_int = [&](std::size_t& p) {
        std::size_t start = p;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start || (p == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) throw ParseError("expected integer in: " + text);
        return s.substr(start, p - start);
    };
    auto parse_root = [&](std::size_t& p) -> long {
        if (s.compare(p, 5, "sqrt(") == 0) {
            p += 5;
            std::string n = parse_int(p);
            if (p >= s.size() || s[p] != ')') throw ParseError("unclosed sqrt in: " + text);
            ++p;
            return std::stol(n);
        }
        if (p < s.size() && s[p] == 'i') {
            ++p;
            return -1;
        }
        return 0;
    };
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw ParseError("expected + or - in: " + text);
        }
        first = false;
        Rational coef = 1;
        bool have_coef = false;
        long root = parse_root(pos);
        if (root == 0) {
            std::string num = parse_int(pos);
            std::string den = "1";
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                den = parse_int(pos);
            }
            if (den == "0") throw ParseError("zero denominator in: " + text);
            coef = make_rational(Integer(num), Integer(den));
            have_coef = true;
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                root = parse_root(pos);
                if (root == 0) throw ParseError("expected sqrt after * in: " + text);
            } else if (pos < s.size() && s[pos] == 'i') {
                ++pos;
                root = -1;
            }
        } else if (pos < s.size() && s[pos] == '*') {
            ++pos;
            std::string num = parse_int(pos);
            std::string den = "1";
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                den = parse_int(pos);
            }
            coef = make_rational(Integer(num), Integer(den));
            have_coef = true;
        }
        (void)have_coef;
        coef *= sign;
        if (root == 0) {
            u += coef;
        } else if (root == 1) {
            u += coef;
        } else {
            if (D != 0 && D != root) throw ParseError("mixed square roots in: " + text);
            D = root;
            v += coef;
        }
    }
    return QuadElem(v == 0 ? (default_D == 1 ? 0 : default_D) : D, u, v);
}

// ---------------------------------------------------------------------------
// Field data

struct QuadField {
    long D = 0;
    Integer disc;       // field discriminant
    bool imaginary = false;
    long class_number = 0;
    QuadElem fundamental_unit; // real fields: > 1; imaginary: generator of roots of unity
    int unit_norm = 1;         // norm of the fundamental unit (real fields)

    // the ring of integers is Z[omega]
    QuadElem omega() const {
        if (((D % 4) + 4) % 4 == 1) return QuadElem(D, Rational(1, 2), Rational(1, 2));
        return QuadElem(D, 0, 1);
    }
    bool class_number_one() const { return class_number == 1; }
};

inline bool is_squarefree_long(long d) {
    if (d == 0) return false;
    long a = d < 0 ? -d : d;
    for (long p = 2; p * p <= a; ++p)
        if (a % (p * p) == 0) return false;
    return true;
}

namespace detail {

inline long class_number_imaginary(const Integer& disc) {
    // reduced forms (a,b,c), b^2-4ac = disc, |b| <= a <= c
    Integer absd = -disc;
    long count = 0;
    Integer amax = isqrt(absd / 3) + 1;
    for (Integer a = 1; a <= amax; ++a) {
        for (Integer b = -a + 1; b <= a; ++b) {
            Integer num = b * b - disc;
            if (mod_floor(num, 4 * a) != 0) continue;
            Integer c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (igcd(igcd(a, b), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

// Fundamental unit via the continued fraction of omega.
inline QuadElem fundamental_unit_real(long D) {
    bool one_mod_four = ((D % 4) + 4) % 4 == 1;
    // omega = (P + sqrt(D)) / Q
    Integer P = one_mod_four ? 1 : 0, Q = one_mod_four ? 2 : 1;
    Integer Dz = D, sD = isqrt(Dz);
    QuadElem wbar = one_mod_four ? QuadElem(D, Rational(1, 2), Rational(-1, 2)) : QuadElem(D, 0, -1);
    Integer p0 = 1, q0 = 0, p1, q1;
    // first partial quotient
    Integer a;
    for (int iter = 0; iter < 100000; ++iter) {
        Integer num = P + sD;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        if (iter == 0) {
            p1 = a;
            q1 = 1;
        } else {
            Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
        }
        QuadElem eta = QuadElem(D, Rational(p1), 0) - QuadElem(D, Rational(q1), 0) * wbar;
        Rational n = eta.norm();
        if ((n == 1 || n == -1) && !(eta == QuadElem(D, 1, 0))) return eta;
        P = a * Q - P;
        Q = (Dz - P * P) / Q;
    }
    throw std::runtime_error("fundamental unit search did not terminate");
}

inline long class_number_real(long D, const Integer& disc, int unit_norm) {
    Integer s = isqrt(disc);
    struct Form {
        Integer a, b, c;
        bool operator<(const Form& o) const {
            if (a != o.a) return a < o.a;
            if (b != o.b) return b < o.b;
            return c < o.c;
        }
    };
    auto reduced = [&](const Integer& a, const Integer& b) {
        // 0 < b < sqrt(disc), sqrt(disc) - b < 2|a| < sqrt(disc) + b
        if (b <= 0 || b > s) return false;
        Integer A = 2 * abs(a);
        Integer lo = A + b;
        if (lo * lo <= disc) return false;
        Integer hi = A - b;
        if (hi >= 0 && hi * hi >= disc) return false;
        return true;
    };
    std::map<Form, bool> forms;
    for (Integer b = 1; b <= s; ++b) {
        if (mod_floor(b - disc, 2) != 0) continue;
        Integer n = (b * b - disc) / 4; // = a*c, negative
        Integer an = abs(n);
        for (Integer a = 1; a <= an; ++a) {
            if (an % a != 0) continue;
            for (int sg : {1, -1}) {
                Integer aa = a * sg;
                if (!reduced(aa, b)) continue;
                Integer c = n / aa;
                if (igcd(igcd(aa, b), c) != 1) continue;
                forms[{aa, b, c}] = false;
            }
        }
    }
    auto rho = [&](const Form& f) {
        Integer c2 = 2 * abs(f.c);
        Integer b2 = s - mod_floor(s + f.b, c2);
        Integer a2 = (b2 * b2 - disc) / (4 * f.c);
        return Form{f.c, b2, a2};
    };
    long cycles = 0;
    for (auto& [f, seen] : forms) {
        if (seen) continue;
        ++cycles;
        Form g = f;
        for (;;) {
            auto it = forms.find(g);
            if (it == forms.end() || it->second) break;
            it->second = true;
            g = rho(g);
        }
    }
    (void)D;
    return unit_norm == -1 ? cycles : cycles / 2;
}

} // namespace detail

inline const QuadField& quad_field(long D) {
    static std::mutex mu;
    static std::map<long, QuadField> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    if (D == 0 || D == 1 || !is_squarefree_long(D)) throw std::invalid_argument("D must be a squarefree integer other than 0, 1");
    QuadField F;
    F.D = D;
    F.imaginary = D < 0;
    F.disc = (((D % 4) + 4) % 4 == 1) ? Integer(D) : Integer(4 * D);
    if (F.imaginary) {
        F.class_number = detail::class_number_imaginary(F.disc);
        if (D == -1)
            F.fundamental_unit = QuadElem(D, 0, 1);
        else if (D == -3)
            F.fundamental_unit = QuadElem(D, Rational(1, 2), Rational(1, 2));
        else
            F.fundamental_unit = QuadElem(D, -1, 0);
    } else {
        F.fundamental_unit = detail::fundamental_unit_real(D);
        F.unit_norm = F.fundamental_unit.norm() == 1 ? 1 : -1;
        F.class_number = detail::class_number_real(D, F.disc, F.unit_norm);
    }
    return cache.emplace(D, F).first->second;
}

// Units of the field up to multiplication by squares of units.
inline std::vector<QuadElem> unit_square_classes(long D) {
    const auto& F = quad_field(D);
    if (F.imaginary) {
        if (D == -1) return {QuadElem(D, 1, 0), QuadElem(D, 0, 1)};
        if (D == -3) return {QuadElem(D, 1, 0), QuadElem(D, -1, 0)};
        return {QuadElem(D, 1, 0), QuadElem(D, -1, 0)};
    }
    return {QuadElem(D, 1, 0), QuadElem(D, -1, 0), F.fundamental_unit, -F.fundamental_unit};
}

// ---------------------------------------------------------------------------
// Squares

// sqrt of z in Q(sqrt D) if it exists. Norm test: z = w^2 forces
// N(z) = n^2 and one of (u +- n)/2 is a rational square.
inline std::optional<QuadElem> is_square_quad(const QuadElem& z) {
    if (z.is_zero()) return z;
    long D = z.D();
    if (z.v() == 0) {
        if (auto r = is_square_rational(z.u())) return QuadElem(D, *r, 0);
        if (D != 0) {
            // u = D * b^2
            if (auto r = is_square_rational(z.u() / Rational(D))) return QuadElem(D, 0, *r);
        }
        return std::nullopt;
    }
    auto n = is_square_rational(z.norm());
    if (!n) return std::nullopt;
    for (const Rational& nn : {*n, Rational(-*n)}) {
        Rational h = (z.u() + nn) / 2;
        if (h == 0) continue;
        if (auto a = is_square_rational(h)) {
            Rational b = z.v() / (2 * *a);
            QuadElem w(D, *a, b);
            if (w * w == z) return w;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Squarefree decomposition z = alpha * delta^2

struct SquarefreeDecomposition {
    QuadElem alpha, delta;
};

namespace detail {

inline double log_abs(const mpf_class& x) {
    long e;
    double m = mpf_get_d_2exp(&e, x.get_mpf_t());
    return std::log(std::fabs(m)) + double(e) * std::log(2.0);
}

// (log|sigma1 z|, log|sigma2 z|) for a real field
inline std::pair<double, double> log_embeddings(const QuadElem& z) {
    mpf_class sd(0, 512), u(z.u(), 512), v(z.v(), 512);
    mpf_class d(z.D(), 512);
    mpf_sqrt(sd.get_mpf_t(), d.get_mpf_t());
    mpf_class big(0, 512);
    big = abs(u) + abs(v) * sd;
    double lbig = log_abs(big);
    double lnorm = std::log(std::fabs(mpq_get_d(z.norm().get_mpq_t())));
    if (!std::isfinite(lnorm)) {
        mpf_class nf(z.norm(), 512);
        lnorm = log_abs(nf);
    }
    double lsmall = lnorm - lbig;
    // sigma1 = u + v sqrt(D): it is the big one iff u and v have the same sign
    bool first_big = sgn(z.u()) * sgn(z.v()) >= 0;
    return first_big ? std::make_pair(lbig, lsmall) : std::make_pair(lsmall, lbig);
}

} // namespace detail

// Prime elements of O_K above a rational prime p (class number one).
inline std::vector<QuadElem> prime_elements_above(long D, const Integer& p) {
    const auto& F = quad_field(D);
    if (!F.class_number_one()) throw std::domain_error("class number of Q(sqrt " + std::to_string(D) + ") is not one");
    int k = mpz_kronecker(F.disc.get_mpz_t(), p.get_mpz_t());
    if (k == -1) return {QuadElem(D, Rational(p), 0)};
    bool one_mod_four = ((D % 4) + 4) % 4 == 1;
    // search a + b*omega with norm +-p
    double bound;
    if (F.imaginary) {
        bound = std::sqrt(4.0 * p.get_d() / double(-D)) + 2;
    } else {
        auto [l1, l2] = detail::log_embeddings(F.fundamental_unit);
        double eps = std::exp(std::max(l1, l2));
        bound = 2.0 * std::sqrt(p.get_d() * eps) / std::sqrt(double(D)) + 2;
    }
    if (bound > 5e7) throw std::runtime_error("prime element search too large");
    Integer Dz = D;
    QuadElem pi;
    bool found = false;
    for (long b = 1; b <= long(bound) && !found; ++b) {
        Integer B = b;
        for (int sg : {1, -1}) {
            if (one_mod_four) {
                // (2a + b)^2 - D b^2 = 4 N
                Integer t = 4 * p * sg + Dz * B * B;
                if (!is_perfect_square(t)) continue;
                Integer r = isqrt(t);
                if (mod_floor(r - B, 2) != 0) continue;
                pi = QuadElem(D, make_rational(r - B, 2), 0) + QuadElem(D, Rational(B), 0) * F.omega();
            } else {
                Integer t = p * sg + Dz * B * B;
                if (!is_perfect_square(t)) continue;
                pi = QuadElem(D, Rational(isqrt(t)), Rational(B));
            }
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("no prime element found above " + p.get_str());
    if (k == 0) return {pi};
    return {pi, pi.conj()};
}

// Number of times pi divides z in O_K (z integral, nonzero).
inline unsigned valuation(QuadElem z, const QuadElem& pi) {
    unsigned e = 0;
    for (;;) {
        QuadElem q = z / pi;
        if (!q.is_integral()) return e;
        z = q;
        ++e;
    }
}

inline SquarefreeDecomposition squarefree_decompose(const QuadElem& z0) {
    if (z0.is_zero()) throw std::invalid_argument("squarefree_decompose of zero");
    long D = z0.D();
    if (D == 0) {
        auto [s, r] = squarefree_part_rational(z0.u());
        return {QuadElem(s), QuadElem(r)};
    }
    // clear denominators with a square
    Integer L = ilcm(z0.u().get_den(), z0.v().get_den());
    QuadElem z = z0 * QuadElem(D, Rational(L * L), 0);
    QuadElem delta(D, make_rational(1, L), 0);
    Integer N = abs(z.norm().get_num());
    if (N != 1) {
        for (auto& [p, e] : factor_integer(N)) {
            (void)e;
            for (const auto& pi : prime_elements_above(D, p)) {
                unsigned k = valuation(z, pi);
                if (k >= 2) {
                    QuadElem pk = pi.pow(k / 2);
                    z = z / (pk * pk);
                    delta *= pk;
                }
            }
        }
    }
    // z is now a unit times a squarefree product; choose the representative
    // of z * (unit squares): rational if possible, else balanced, then
    // positive trace.
    std::vector<QuadElem> cands;
    const auto& F = quad_field(D);
    std::vector<QuadElem> muls;
    if (F.imaginary) {
        muls.push_back(QuadElem(D, 1, 0));
        if (D == -1) muls.push_back(QuadElem(D, -1, 0));
        if (D == -3) {
            QuadElem w = F.fundamental_unit; // primitive 6th root
            muls.push_back(w * w);
            muls.push_back(w * w * w * w);
        }
    } else {
        auto [l1, l2] = detail::log_embeddings(z);
        auto [e1, e2] = detail::log_embeddings(F.fundamental_unit);
        double k = std::round(-(l1 - l2) / (2.0 * (e1 - e2)));
        for (long j = long(k) - 1; j <= long(k) + 1; ++j) muls.push_back(F.fundamental_unit.pow(2 * j));
    }
    QuadElem best;
    QuadElem best_mul;
    bool have = false;
    auto better = [&](const QuadElem& a, const QuadElem& b) {
        bool ra = a.is_rational(), rb = b.is_rational();
        if (ra != rb) return ra;
        Rational ta = abs(a.trace()), tb = abs(b.trace());
        if (ta != tb) return ta < tb;
        if (sgn(a.trace()) != sgn(b.trace())) return sgn(a.trace()) > sgn(b.trace());
        return b < a;
    };
    for (auto& m : muls) {
        QuadElem c = z * m;
        if (!have || better(c, best)) {
            best = c;
            best_mul = m;
            have = true;
        }
    }
    // z * m = alpha with m = w^2, so delta absorbs 1/w
    QuadElem w = F.imaginary ? QuadElem(D, 1, 0) : QuadElem(D, 1, 0);
    if (!(best_mul == QuadElem(D, 1, 0))) {
        auto r = is_square_quad(best_mul);
        w = *r;
    }
    delta = delta / w;
    SquarefreeDecomposition out{best, delta};
    if (!(out.alpha * out.delta * out.delta == z0)) throw std::logic_error("squarefree_decompose: reconstruction failed");
    return out;
}

} // namespace apsq
