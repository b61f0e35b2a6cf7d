#pragma once

// Quadratic extensions K = Q(sqrt D)(sqrt rho) with rho a non-square of
// the base field. Elements are x + y*sqrt(rho), x, y in Q(sqrt D).

#include "quadfield.hpp"

namespace apsq {

class TowerElem {
public:
    TowerElem() = default;
    TowerElem(QuadElem rho, QuadElem x, QuadElem y = QuadElem(0)) : rho_(std::move(rho)), x_(std::move(x)), y_(std::move(y)) {}

    static TowerElem sqrt_of(const QuadElem& rho) { return TowerElem(rho, QuadElem(0), QuadElem(1)); }

    const QuadElem& radicand() const { return rho_; }
    const QuadElem& x() const { return x_; }
    const QuadElem& y() const { return y_; }
    bool in_base() const { return y_.is_zero(); }
    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    TowerElem conj() const { return TowerElem(rho_, x_, -y_); }
    QuadElem rel_norm() const { return x_ * x_ - rho_ * y_ * y_; }
    QuadElem rel_trace() const { return x_ + x_; }

    friend TowerElem operator+(const TowerElem& a, const TowerElem& b) { return TowerElem(pick(a, b), a.x_ + b.x_, a.y_ + b.y_); }
    friend TowerElem operator-(const TowerElem& a, const TowerElem& b) { return TowerElem(pick(a, b), a.x_ - b.x_, a.y_ - b.y_); }
    TowerElem operator-() const { return TowerElem(rho_, -x_, -y_); }
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b) {
        QuadElem r = pick(a, b);
        return TowerElem(r, a.x_ * b.x_ + r * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_);
    }
    TowerElem inverse() const {
        QuadElem n = rel_norm();
        if (n.is_zero()) throw std::domain_error("division by zero in tower");
        return TowerElem(rho_, x_ / n, -y_ / n);
    }
    friend TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a * b.inverse(); }
    friend bool operator==(const TowerElem& a, const TowerElem& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
    friend bool operator!=(const TowerElem& a, const TowerElem& b) { return !(a == b); }

    TowerElem pow(unsigned e) const {
        TowerElem r(rho_, QuadElem(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        if (y_.is_zero()) return x_.str();
        std::string ys = y_.is_rational() ? y_.str() : "(" + y_.str() + ")";
        std::string root = "sqrt(" + rho_.str() + ")";
        std::string term = (y_ == QuadElem(1)) ? root : ys + "*" + root;
        if (x_.is_zero()) return term;
        return x_.str() + " + " + term;
    }

private:
    static QuadElem pick(const TowerElem& a, const TowerElem& b) {
        if (a.rho_.is_zero()) return b.rho_;
        if (b.rho_.is_zero()) return a.rho_;
        if (a.rho_ != b.rho_ && !(a.in_base() || b.in_base())) throw FieldMismatch("different tower radicands");
        return a.in_base() ? b.rho_ : a.rho_;
    }

    QuadElem rho_{0}, x_{0}, y_{0};
};

// z in Q(sqrt D) is a square in Q(sqrt D)(sqrt rho) iff z or z*rho is a
// square in the base. Returns a square root when it exists.
inline std::optional<TowerElem> tower_square_test(const QuadElem& z, const QuadElem& rho) {
    if (auto w = is_square_quad(z)) return TowerElem(rho, *w);
    if (auto w = is_square_quad(z / rho)) return TowerElem(rho, QuadElem(0), *w);
    return std::nullopt;
}

// General square test in the tower, by the relative norm.
inline std::optional<TowerElem> is_square_tower(const TowerElem& z) {
    const QuadElem& rho = z.radicand();
    if (z.in_base()) return tower_square_test(z.x(), rho);
    auto n = is_square_quad(z.rel_norm());
    if (!n) return std::nullopt;
    for (const QuadElem& nn : {*n, -*n}) {
        QuadElem h = (z.x() + nn) / QuadElem(2);
        if (h.is_zero()) continue;
        if (auto a = is_square_quad(h)) {
            TowerElem w(rho, *a, z.y() / (QuadElem(2) * *a));
            if (w * w == z) return w;
        }
    }
    return std::nullopt;
}

} // namespace apsq
