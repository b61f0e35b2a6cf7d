#pragma once

// Genus one quartics y^2 = q4 x^4 + q3 x^3 + q2 x^2 + q1 x + q0 with a
// known point, and their Weierstrass models.

#include "ellcurve.hpp"

namespace apsq {

// Affine point, or one of the two points at infinity (y / x^2 -> sign*sqrt(q4)).
struct QuarticPoint {
    int at_infinity = 0; // 0 affine, +1 or -1 branch at infinity
    QuadElem x{0}, y{0};

    static QuarticPoint affine(QuadElem x, QuadElem y) { return {0, std::move(x), std::move(y)}; }
    static QuarticPoint infinity(int sign) { return {sign, QuadElem(0), QuadElem(0)}; }

    friend bool operator==(const QuarticPoint& a, const QuarticPoint& b) {
        if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
        return a.x == b.x && a.y == b.y;
    }
    std::string str() const {
        if (at_infinity) return at_infinity > 0 ? "inf+" : "inf-";
        return "(" + x.str() + ", " + y.str() + ")";
    }
};

struct UndefinedAtPoint : std::domain_error {
    using std::domain_error::domain_error;
};

class QuarticCurve {
public:
    std::array<QuadElem, 5> q; // q[k] is the coefficient of x^k
    QuadElem base_x{0}, base_y{0};
    std::string label;

    QuarticCurve(std::array<QuadElem, 5> coeffs, QuadElem bx, QuadElem by, std::string label_ = {})
        : q(std::move(coeffs)), base_x(std::move(bx)), base_y(std::move(by)), label(std::move(label_)) {
        KPoly f = poly();
        if (f.degree() != 4) throw std::invalid_argument("quartic must have degree 4");
        if (discriminant(f).is_zero()) throw std::invalid_argument("quartic has a repeated root");
        if (base_y * base_y != f.eval(base_x)) throw std::invalid_argument("base point not on the quartic");
    }

    KPoly poly() const { return KPoly(std::vector<QuadElem>(q.begin(), q.end())); }
    QuadElem rhs(const QuadElem& x) const { return poly().eval(x); }
    bool contains(const QuarticPoint& P) const {
        if (P.at_infinity) return is_square_quad(q[4]).has_value();
        return P.y * P.y == rhs(P.x);
    }

    // j-invariant of the Jacobian from the classical invariants I, J.
    QuadElem j_invariant() const {
        const QuadElem &a = q[4], &b = q[3], &c = q[2], &d = q[1], &e = q[0];
        QuadElem I = QuadElem(12) * a * e - QuadElem(3) * b * d + c * c;
        QuadElem J = QuadElem(72) * a * c * e + QuadElem(9) * b * c * d - QuadElem(27) * a * d * d - QuadElem(27) * e * b * b - QuadElem(2) * c * c * c;
        QuadElem I3 = I * I * I;
        return QuadElem(6912) * I3 / (QuadElem(4) * I3 - J * J);
    }
};

// Birational map between a quartic and y^2 = x^3 + a2 x^2 + a4 x + a6,
// sending the base point to O.
class QuarticMap {
public:
    explicit QuarticMap(QuarticCurve C) : C_(std::move(C)) {
        // translate the base point to x = 0
        KPoly shifted = C_.poly().compose(KPoly({C_.base_x, QuadElem(1)}));
        for (int k = 0; k <= 4; ++k) s_[k] = shifted.coeff(k);
        root_base_ = C_.base_y.is_zero();
        if (root_base_) {
            // x = 1/u, y = v/u^2 gives v^2 = s1 u^3 + s2 u^2 + s3 u + s4;
            // X = s1 u, Y = s1 v.
            A_ = s_[1];
            E_ = WeierstrassCurve(s_[2], A_ * s_[3], A_ * A_ * s_[4], C_.label);
        } else {
            const QuadElem &a = s_[4], &b = s_[3], &c = s_[2], &d = s_[1];
            qq_ = C_.base_y;
            a1_ = d / qq_;
            la2_ = c - d * d / (QuadElem(4) * qq_ * qq_);
            a3_ = QuadElem(2) * qq_ * b;
            QuadElem a4 = QuadElem(-4) * qq_ * qq_ * a;
            QuadElem a6 = la2_ * a4;
            // complete the square: y' = Y + (a1 X + a3) / 2
            E_ = WeierstrassCurve(la2_ + a1_ * a1_ / QuadElem(4), a4 + a1_ * a3_ / QuadElem(2), a6 + a3_ * a3_ / QuadElem(4), C_.label);
        }
        if (auto s = is_square_quad(s_[4])) sqrt_lead_ = *s;
    }

    const QuarticCurve& quartic() const { return C_; }
    const WeierstrassCurve& curve() const { return E_; }

    CurvePoint to_weierstrass(const QuarticPoint& P) const {
        if (!C_.contains(P)) throw std::invalid_argument("point not on the quartic");
        if (root_base_) {
            if (P.at_infinity) {
                QuadElem s = need_sqrt_lead();
                return CurvePoint::affine(QuadElem(0), A_ * s * QuadElem(P.at_infinity));
            }
            QuadElem x = P.x - C_.base_x;
            if (x.is_zero()) return CurvePoint::O();
            return CurvePoint::affine(A_ / x, A_ * P.y / (x * x));
        }
        QuadElem X, Y;
        if (P.at_infinity) {
            QuadElem s = need_sqrt_lead();
            X = QuadElem(2) * qq_ * s * QuadElem(P.at_infinity);
            Y = QuadElem(0);
        } else {
            QuadElem x = P.x - C_.base_x;
            const QuadElem &c = s_[2], &d = s_[1];
            if (x.is_zero()) {
                if (P.y == qq_) return CurvePoint::O();
                // (0, -q): the second point above X = -a2
                X = -la2_;
                Y = -(a1_ * X + a3_);
            } else {
                QuadElem yq = P.y + qq_;
                X = (QuadElem(2) * qq_ * yq + d * x) / (x * x);
                Y = (QuadElem(4) * qq_ * qq_ * yq + QuadElem(2) * qq_ * (d * x + c * x * x) - d * d * x * x / (QuadElem(2) * qq_)) / (x * x * x);
            }
        }
        return CurvePoint::affine(X, Y + (a1_ * X + a3_) / QuadElem(2));
    }

    QuarticPoint to_quartic(const CurvePoint& R) const {
        if (!E_.contains(R)) throw std::invalid_argument("point not on the curve");
        if (R.inf) return QuarticPoint::affine(C_.base_x, C_.base_y);
        if (root_base_) {
            if (R.x.is_zero()) {
                QuadElem s = need_sqrt_lead();
                return QuarticPoint::infinity((R.y / (A_ * s)) == QuadElem(1) ? 1 : -1);
            }
            return QuarticPoint::affine(C_.base_x + A_ / R.x, R.y * A_ / (R.x * R.x));
        }
        const QuadElem &c = s_[2], &d = s_[1];
        QuadElem X = R.x, Y = R.y - (a1_ * X + a3_) / QuadElem(2);
        QuadElem num = QuadElem(2) * qq_ * (X + c) - d * d / (QuadElem(2) * qq_);
        QuadElem x;
        if (!Y.is_zero()) {
            x = num / Y;
        } else {
            // Y (Y + a1 X + a3) = h(X) and num = 2q (X + a2); cancel X + a2.
            QuadElem h1 = cancelled_cubic(X);
            if (h1.is_zero()) {
                if (num.is_zero()) throw UndefinedAtPoint("inverse map undefined at " + R.str());
                QuadElem s = need_sqrt_lead();
                return QuarticPoint::infinity(X == QuadElem(2) * qq_ * s ? 1 : -1);
            }
            x = QuadElem(2) * qq_ * (Y + a1_ * X + a3_) / h1;
        }
        QuadElem y = -qq_ + x * (x * X - d) / (QuadElem(2) * qq_);
        return QuarticPoint::affine(x + C_.base_x, y);
    }

private:
    QuadElem need_sqrt_lead() const {
        if (!sqrt_lead_) throw UndefinedAtPoint("leading coefficient is not a square");
        return *sqrt_lead_;
    }
    // h(X) / (X + a2) for h(X) = X^3 + a2 X^2 + a4 X + a6 of the intermediate model
    QuadElem cancelled_cubic(const QuadElem& X) const {
        QuadElem a4 = QuadElem(-4) * qq_ * qq_ * s_[4];
        // h(X) = (X + a2)(X^2 + a4) since a6 = a2 a4
        return X * X + a4;
    }

    QuarticCurve C_;
    std::array<QuadElem, 5> s_;
    bool root_base_ = false;
    QuadElem A_{0}, qq_{0}, a1_{0}, la2_{0}, a3_{0};
    std::optional<QuadElem> sqrt_lead_;
    WeierstrassCurve E_;
};

inline QuarticMap quartic_to_weierstrass(const QuarticCurve& C) { return QuarticMap(C); }

} // namespace apsq
