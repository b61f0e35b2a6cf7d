#pragma once

// From points of E0 to progressions: the quartic C0 : y^2 = G(t), its
// Weierstrass model and the generator orbits over Q, Q(sqrt -2), Q(sqrt 2).

#include "progression.hpp"
#include "quartic.hpp"

namespace apsq {

inline WeierstrassCurve curve_E0() { return WeierstrassCurve(QuadElem(-1), QuadElem(-9), QuadElem(9), "E0"); }

inline QuarticCurve quartic_C0() {
    return QuarticCurve({QuadElem(1), QuadElem(2), QuadElem(2), QuadElem(-2), QuadElem(1)}, QuadElem(0), QuadElem(-1), "C0");
}

struct ExceptionalPoint : std::domain_error {
    using std::domain_error::domain_error;
};

// C0 -> W -> E0 where W is the model produced by the quartic map.
class C0Correspondence {
public:
    C0Correspondence() : map_(quartic_C0()), E0_(curve_E0()) {
        auto iso = find_isomorphism(map_.curve(), E0_);
        if (!iso) throw std::logic_error("C0 model is not isomorphic to E0");
        iso_ = *iso;
    }
    const WeierstrassCurve& E0() const { return E0_; }
    const QuarticMap& map() const { return map_; }

    QuarticPoint to_quartic(const CurvePoint& R) const { return map_.to_quartic(iso_.to_source(R)); }
    CurvePoint to_curve(const QuarticPoint& P) const { return iso_.to_target(map_.to_weierstrass(P)); }

private:
    QuarticMap map_;
    WeierstrassCurve E0_;
    CurveIsomorphism iso_;
};

inline const C0Correspondence& c0_correspondence() {
    static const C0Correspondence c;
    return c;
}

struct PointProgression {
    FiveTermAP ap;
    QuadElem t{0}, y{0};
    Classification t_class;
};

// R on E0 over Q(sqrt D) -> (t, y) on C0 -> ap_from_t(t) with b = y.
inline PointProgression ap_from_point(const CurvePoint& R, long D = 0) {
    const auto& cc = c0_correspondence();
    if (!cc.E0().contains(R)) throw std::invalid_argument("point not on E0");
    QuarticPoint q = cc.to_quartic(R);
    if (q.at_infinity) throw ExceptionalPoint("point maps to infinity on C0: " + R.str());
    PointProgression out;
    out.t = detail::in_base(q.x, D);
    out.y = detail::in_base(q.y, D);
    out.ap = ap_from_t(out.t, D);
    out.ap.witnesses[1] = TowerElem(QuadElem(0), out.y);
    out.t_class = classify_t(out.t);
    const QuadElem& d2 = out.ap.terms[3];
    if (!out.ap.alpha && !out.ap.witnesses[3] && !d2.is_rational() && D != 0 && quad_field(D).class_number_one()) {
        Rational N = d2.norm();
        if (mpz_sizeinbase(N.get_num().get_mpz_t(), 10) + mpz_sizeinbase(N.get_den().get_mpz_t(), 10) < 40) {
            auto dec = squarefree_decompose(d2);
            set_twist(out.ap, dec.alpha, dec.delta);
        }
    }
    return out;
}

enum class OrbitSetting { rational, minus_two, plus_two };

inline long setting_D(OrbitSetting s) {
    switch (s) {
    case OrbitSetting::minus_two: return -2;
    case OrbitSetting::plus_two: return 2;
    default: return 0;
    }
}

inline OrbitSetting setting_from_D(long D) {
    if (D == -2) return OrbitSetting::minus_two;
    if (D == 2) return OrbitSetting::plus_two;
    if (D == 0 || D == 1) return OrbitSetting::rational;
    throw std::invalid_argument("orbit settings exist for D in {1, -2, 2}");
}

struct ParityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Generators {
    CurvePoint T1, T2, P;
    std::array<long, 2> n2_range;
    long m_shift; // m in {n, -n - m_shift}
};

// T2' = (1 - 2 sqrt-2, 4 + 4 sqrt-2) has 2 T2' = T2; P' = (1 + 2 sqrt2, 4) has 2 P' + T1 = +-P.
inline Generators generators(OrbitSetting s) {
    CurvePoint T1 = CurvePoint::affine(-3, 0), T2 = CurvePoint::affine(1, 0), P = CurvePoint::affine(0, 3);
    switch (s) {
    case OrbitSetting::minus_two:
        return {T1, CurvePoint::affine(QuadElem(-2, 1, -2), QuadElem(-2, 4, 4)), P, {1, 3}, 1};
    case OrbitSetting::plus_two:
        return {T1, T2, CurvePoint::affine(QuadElem(2, 1, 2), QuadElem(4)), {0, 1}, 2};
    default:
        return {T1, T2, P, {0, 1}, 1};
    }
}

struct OrbitMember {
    long n1, n2, m;
    CurvePoint R;
    std::optional<PointProgression> prog; // empty for exceptional points
    std::optional<APClass> cls;
};

struct OrbitReport {
    long n = 0;
    OrbitSetting setting = OrbitSetting::rational;
    std::vector<OrbitMember> members;
    std::optional<APClass> cls; // common class when consistent
    bool consistent = false;
    std::size_t exceptional = 0;
};

inline OrbitReport enumerate_orbit(long n, OrbitSetting s) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    if (s == OrbitSetting::plus_two && n % 2 == 0) throw ParityError("the Q(sqrt 2) orbits need odd n");
    const auto& E = c0_correspondence().E0();
    long D = setting_D(s);
    Generators g = generators(s);
    OrbitReport rep;
    rep.n = n;
    rep.setting = s;
    for (long n1 : {0L, 1L})
        for (long n2 : g.n2_range)
            for (long m : {n, -n - g.m_shift}) {
                OrbitMember mem{n1, n2, m, E.add(E.add(E.mul(n1, g.T1), E.mul(n2, g.T2)), E.mul(m, g.P)), {}, {}};
                try {
                    mem.prog = ap_from_point(mem.R, D);
                    mem.cls = normalize_ap(mem.prog->ap);
                } catch (const ExceptionalPoint&) {
                    ++rep.exceptional;
                }
                rep.members.push_back(std::move(mem));
            }
    rep.consistent = true;
    for (auto& mem : rep.members) {
        if (!mem.cls) continue;
        if (!rep.cls) rep.cls = mem.cls;
        else if (mem.cls->canonical.terms != rep.cls->canonical.terms) rep.consistent = false;
    }
    if (!rep.cls) rep.consistent = false;
    return rep;
}

struct GenerationRow {
    long n = 0;
    long D = 0;
    OrbitReport orbit;
    std::optional<ConjectureShape> shape;
    std::string field; // K
};

inline GenerationRow generation_row(long n, long D) {
    GenerationRow row;
    row.n = n;
    row.D = D;
    row.orbit = enumerate_orbit(n, setting_from_D(D));
    if (!row.orbit.cls) return row;
    if (D == 2 || D == -2) {
        row.shape = check_conjecture_shape(*row.orbit.cls, D);
        if (row.shape->holds) {
            Integer m = D == -2 ? Integer(-row.shape->m) : row.shape->m;
            row.field = "Q(sqrt(" + std::to_string(D) + "), sqrt(" + m.get_str() + "))";
        }
    }
    if (row.field.empty()) row.field = proper_field_of_definition(row.orbit.cls->canonical).str();
    return row;
}

// Slot as c * w^2 with c in {1, 2, -2} when possible.
inline std::string render_slot(const QuadElem& z) {
    if (!z.is_rational() || z.u().get_den() != 1 || z.is_zero()) return z.str();
    Integer v = z.u().get_num();
    for (long c : {1L, 2L, -2L, -1L}) {
        if (v % c != 0) continue;
        Integer q = v / c;
        if (sgn(q) <= 0 || !is_perfect_square(q)) continue;
        Integer w = isqrt(q);
        std::string ws = w.get_str() + "^2";
        if (c == 1) return ws;
        return std::to_string(c) + "*" + ws;
    }
    return v.get_str();
}

inline std::string render_row(const FiveTermAP& ap) {
    std::string s = "(";
    for (int k = 0; k < 5; ++k) s += (k ? ", " : "") + render_slot(ap.terms[k]);
    return s + ")";
}

} // namespace apsq
