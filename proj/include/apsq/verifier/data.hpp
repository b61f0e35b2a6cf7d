#pragma once

// The data store: curves, point tables, case tables and printed rows, read
// from a line-oriented text file. Every point is checked against its curve
// at load; points that fail are kept and reported, not dropped.

#include "../orbit.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#if __has_include(<apsq/generated/tables.inc>)
#include <apsq/generated/tables.inc>
#define APSQ_HAVE_EMBEDDED_DATA 1
#endif

namespace apsq::verify {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Pt = std::pair<QuadElem, QuadElem>;

inline std::string pt_str(const Pt& p) { return "(" + p.first.str() + ", " + p.second.str() + ")"; }

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        auto k = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, k == std::string::npos ? std::string::npos : k - pos)));
        if (k == std::string::npos) break;
        pos = k + sep.size();
    }
    return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
    if (trim(s).empty()) return {};
    return split(s, ";");
}

inline Pt parse_point(const std::string& s) {
    auto xy = split(s, ",");
    if (xy.size() != 2) throw DataError("bad point: " + s);
    return {parse_quad(xy[0]), parse_quad(xy[1])};
}

inline std::vector<Pt> parse_points(const std::string& s) {
    std::vector<Pt> out;
    for (auto& p : split_list(s)) out.push_back(parse_point(p));
    return out;
}

inline std::vector<QuadElem> parse_elems(const std::string& s) {
    std::vector<QuadElem> out;
    for (auto& p : split_list(s)) out.push_back(parse_quad(p));
    return out;
}

// coefficients from the top degree down
inline KPoly parse_kpoly(const std::string& s, const std::string& sep = ",") {
    auto parts = split(s, sep);
    std::vector<QuadElem> c;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) c.push_back(parse_quad(*it));
    return KPoly(c);
}

inline long parse_long(const std::string& s) {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw DataError("bad integer: " + s);
    return v;
}

} // namespace detail

// Integer expressions as printed in the tables: products of n or n^k with an
// optional leading minus, e.g. "-2*7^2", "3*5*659".
inline Integer eval_int_expr(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DataError("empty integer expression");
    bool neg = false;
    if (s[0] == '-') {
        neg = true;
        s = s.substr(1);
    }
    Integer v = 1;
    for (auto& f : detail::split(s, "*")) {
        auto pw = detail::split(f, "^");
        if (pw.size() > 2 || pw[0].empty()) throw DataError("bad integer expression: " + text);
        for (auto& p : pw)
            if (p.find_first_not_of("0123456789") != std::string::npos || p.empty()) throw DataError("bad integer expression: " + text);
        Integer b(pw[0]);
        unsigned long e = pw.size() == 2 ? std::stoul(pw[1]) : 1;
        v *= ipow(b, e);
    }
    return neg ? Integer(-v) : v;
}

struct CurveRow {
    std::string name, kind, lmfdb, model;
    std::vector<QuadElem> coeffs; // quartic: x^4..x^0; weierstrass: a2 a4 a6
    std::optional<Pt> base;
};

// A curve from the store with a uniform point test and a Weierstrass side.
class StoredCurve {
public:
    StoredCurve() = default;
    explicit StoredCurve(const CurveRow& r) : name_(r.name) {
        if (r.kind == "quartic") {
            if (r.coeffs.size() != 5 || !r.base) throw DataError("quartic row needs 5 coefficients and a base point: " + r.name);
            std::array<QuadElem, 5> q;
            for (int k = 0; k < 5; ++k) q[k] = r.coeffs[4 - k];
            map_ = std::make_shared<QuarticMap>(QuarticCurve(q, r.base->first, r.base->second, r.name));
            W_ = map_->curve();
        } else if (r.kind == "weierstrass") {
            if (r.coeffs.size() != 3) throw DataError("weierstrass row needs a2 a4 a6: " + r.name);
            W_ = WeierstrassCurve(r.coeffs[0], r.coeffs[1], r.coeffs[2], r.name);
        } else {
            throw DataError("unknown curve kind: " + r.kind);
        }
    }
    const std::string& name() const { return name_; }
    bool quartic() const { return bool(map_); }
    const WeierstrassCurve& weierstrass() const { return W_; }
    const QuarticMap& map() const { return *map_; }
    bool contains(const Pt& p) const {
        if (map_) return map_->quartic().contains(QuarticPoint::affine(p.first, p.second));
        return W_.contains(CurvePoint::affine(p.first, p.second));
    }
    std::string equation() const {
        if (!map_) return W_.str();
        return "y^2 = " + map_->quartic().poly().str("x");
    }
    // affine points of the curve model coming from a set of Weierstrass points
    std::set<Pt> affine_points(const std::vector<CurvePoint>& pts) const {
        std::set<Pt> out;
        for (auto& P : pts) {
            if (!map_) {
                if (!P.inf) out.insert({P.x, P.y});
                continue;
            }
            QuarticPoint q = map_->to_quartic(P);
            if (!q.at_infinity) out.insert({q.x, q.y});
        }
        return out;
    }

private:
    std::string name_;
    WeierstrassCurve W_;
    std::shared_ptr<QuarticMap> map_;
};

struct PointColumn {
    std::string curve;
    std::optional<long> D; // empty: generic column
    bool none = false;     // printed "-"
    std::vector<Pt> points;
    std::string cell;
};

struct Table5Row {
    std::string t_text;
    std::vector<QuadElem> t; // explicit values, empty for root rows
    int root_sign = 0;       // +1: roots of G(t), -1: roots of G(-t)
    std::vector<QuadElem> s, r;
    bool s_none = false;
    std::string kind;
    std::vector<std::string> ap;
    std::string cell;
};

struct S3Entry {
    enum Kind { sol, deg, empty } kind = empty;
    QuadElem b1{0}, b2{0};
    bool pm1 = false, pm2 = false;
    KPoly Q;
    int d1 = 0, d2 = 0;
};

struct S3Cell {
    long D = 0;
    Pt P1, P2;
    std::vector<S3Entry> entries;
    std::string cell;
};

struct S4Claim {
    std::string curve;
    long D = 0;
    QuadElem r{0}, value{0};
    std::string cell;
};

struct S5Beta {
    long D = 0;
    Pt P;
    QuadElem x{0}, y{0}; // beta = x +- y*i
    std::string cell;
};

struct SixRow {
    std::vector<std::string> ap;
    long D = 0;
    QuadElem rho{0}, prepend{0}, append{0};
    std::string cell;
};

struct PrintedRow {
    long n = 0;
    std::vector<std::string> slots;
    std::string cell;
};

struct LoadIssue {
    std::string anchor, cell, message;
};

class PaperDataStore {
public:
    std::vector<CurveRow> curve_rows;
    std::map<std::string, StoredCurve> curves;  // C0..C6
    std::map<std::string, WeierstrassCurve> models; // E0, E1, E4, E6
    std::vector<std::pair<std::string, std::vector<long>>> growth;
    std::vector<PointColumn> point_columns;
    long generic_D = 7;
    std::vector<Table5Row> table5;
    std::vector<QuadElem> table5_field;
    int table5_field_degree = 0;
    std::vector<S3Cell> s3;
    KPoly s3_roots_poly;
    std::vector<QuadElem> s3_roots;
    long s3_irred_D = 0;
    KPoly s3_irred_poly;
    long s3_tmin_D = 0;
    std::vector<QPoly> s3_tmin;
    long s3_tmin_other = 0;
    std::vector<std::tuple<std::string, std::optional<long>, std::vector<QuadElem>, std::string>> s4r;
    std::vector<S4Claim> s4ns;
    std::vector<QuadElem> s4elem;
    std::vector<QuadElem> s5s;
    std::vector<std::tuple<Pt, QuadElem, QPoly, std::string>> s5one;
    std::vector<S5Beta> s5beta;
    std::vector<QuadElem> s6c6;
    QuadElem s6minus2{0};
    std::vector<long> rank0, cn1;
    std::map<std::string, Pt> gens;
    std::vector<std::string> relations;
    std::vector<std::string> s1;
    std::vector<SixRow> six;
    std::vector<PrintedRow> table6, table7;
    struct Checked {
        long D, from, to, step;
    };
    std::vector<Checked> checked;
    std::vector<LoadIssue> issues;
    std::string source;

    static PaperDataStore parse(const std::string& text, std::string source = "embedded") {
        PaperDataStore st;
        st.source = std::move(source);
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        try {
            while (std::getline(in, line)) {
                ++lineno;
                auto t = detail::trim(line);
                if (t.empty() || t[0] == '#') continue;
                st.parse_line(detail::split(t, "|"));
            }
            st.finish();
        } catch (const std::exception& e) {
            throw DataError(st.source + ":" + std::to_string(lineno) + ": " + e.what());
        }
        return st;
    }

    static PaperDataStore load_file(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw DataError("cannot open data file " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str(), path);
    }

    // APSQ_DATA overrides the embedded copy
    static PaperDataStore load_default() {
        if (const char* p = std::getenv("APSQ_DATA"); p && *p) return load_file(p);
#ifdef APSQ_HAVE_EMBEDDED_DATA
        return parse(apsq_generated::tables, "embedded");
#elif defined(APSQ_DATA_FILE)
        return load_file(APSQ_DATA_FILE);
#else
        throw DataError("no data store: set APSQ_DATA");
#endif
    }

    const StoredCurve& curve(const std::string& name) const {
        auto it = curves.find(name);
        if (it == curves.end()) throw DataError("unknown curve " + name);
        return it->second;
    }
    CurvePoint gen(const std::string& name) const {
        auto it = gens.find(name);
        if (it == gens.end()) throw DataError("unknown generator " + name);
        return CurvePoint::affine(it->second.first, it->second.second);
    }
    // Weierstrass model by name, twists written E^-1
    WeierstrassCurve model(const std::string& name) const {
        auto k = name.find("^");
        if (k != std::string::npos) return quadratic_twist(model(name.substr(0, k)), detail::parse_long(name.substr(k + 1)));
        auto it = models.find(name);
        if (it == models.end()) throw DataError("unknown model " + name);
        return it->second;
    }

    // every cell id of the store, in file order
    std::vector<std::string> census() const { return census_; }

    static const std::set<std::string>& anchors() {
        static const std::set<std::string> a{"table:1", "table:2", "table:3", "table:4", "table:5", "table:6", "table:7", "section:3", "section:4", "section:5", "section:6", "lemma", "section:8", "remark:rank-zero", "remark:six-term", "theorem:six", "note:isogeny", "controls", "data"};
        return a;
    }

private:
    std::vector<std::string> census_;

    std::string add_cell(std::string id) {
        census_.push_back(id);
        return id;
    }

    void check_on(const std::string& anchor, const std::string& cell, const std::string& cname, const Pt& p) {
        if (!curve(cname).contains(p)) issues.push_back({anchor, cell, pt_str(p) + " is not on " + cname + " : " + curve(cname).equation()});
    }

    static std::optional<long> column_D(const std::string& s) {
        if (s == "generic") return std::nullopt;
        return detail::parse_long(s);
    }

    void parse_line(const std::vector<std::string>& f) {
        const std::string& k = f[0];
        auto need = [&](std::size_t n) {
            if (f.size() < n) throw DataError("record '" + k + "' needs " + std::to_string(n - 1) + " fields");
        };
        if (k == "version") {
            need(2);
            if (f[1] != "1") throw DataError("unsupported data version " + f[1]);
        } else if (k == "curve") {
            need(7);
            CurveRow r;
            r.name = f[1];
            r.kind = f[2];
            r.coeffs = detail::parse_elems(f[3]);
            if (!f[4].empty()) r.base = detail::parse_point(f[4]);
            r.lmfdb = f[5];
            r.model = f[6];
            curve_rows.push_back(r);
            curves[r.name] = StoredCurve(r);
            add_cell("table:1/" + r.name);
        } else if (k == "model") {
            need(3);
            if (f[2].size() && f[2][0] == '@') models[f[1]] = curve(f[2].substr(1)).weierstrass();
            else {
                auto a = detail::parse_elems(f[2]);
                if (a.size() != 3) throw DataError("model needs a2 a4 a6");
                models[f[1]] = WeierstrassCurve(a[0], a[1], a[2], f[1]);
            }
        } else if (k == "growth") {
            need(3);
            std::vector<long> ds;
            for (auto& s : detail::split_list(f[2])) ds.push_back(detail::parse_long(s));
            growth.emplace_back(f[1], ds);
            add_cell("table:2/" + f[1]);
        } else if (k == "points") {
            need(4);
            PointColumn c;
            c.curve = f[1];
            c.D = column_D(f[2]);
            c.none = f[3] == "-";
            if (!c.none) c.points = detail::parse_points(f[3]);
            std::string anchor = c.curve == "C4" ? "table:4" : "table:3";
            c.cell = add_cell(anchor + "/" + c.curve + "/" + f[2]);
            for (auto& p : c.points) check_on(anchor, c.cell, c.curve, p);
            point_columns.push_back(c);
        } else if (k == "generic") {
            need(2);
            generic_D = detail::parse_long(f[1]);
        } else if (k == "table5") {
            need(6);
            Table5Row r;
            r.t_text = f[1];
            if (f[1] == "G(t)=0") r.root_sign = 1;
            else if (f[1] == "G(-t)=0") r.root_sign = -1;
            else r.t = detail::parse_elems(f[1]);
            r.s_none = f[2] == "-";
            if (!r.s_none) {
                r.s = detail::parse_elems(f[2]);
                r.r = detail::parse_elems(f[3]);
            }
            r.kind = f[4];
            r.ap = detail::split_list(f[5]);
            if (r.ap.size() != 5) throw DataError("table5 progression needs 5 terms");
            r.cell = add_cell("table:5/t=" + f[1]);
            table5.push_back(r);
        } else if (k == "table5field") {
            need(3);
            table5_field = detail::parse_elems(f[1]);
            table5_field_degree = int(detail::parse_long(f[2]));
            add_cell("table:5/field");
        } else if (k == "s3") {
            need(5);
            S3Cell c;
            c.D = detail::parse_long(f[1]);
            c.P1 = detail::parse_point(f[2]);
            c.P2 = detail::parse_point(f[3]);
            for (auto& e : detail::split(f[4], "&")) c.entries.push_back(parse_s3_entry(e));
            c.cell = add_cell("section:3/D=" + f[1] + "/" + pt_str(c.P1) + "x" + pt_str(c.P2));
            check_on("section:3", c.cell, "C1", c.P1);
            check_on("section:3", c.cell, "C2", c.P2);
            s3.push_back(c);
        } else if (k == "s3roots") {
            need(3);
            s3_roots_poly = detail::parse_kpoly(f[1]);
            s3_roots = detail::parse_elems(f[2]);
            add_cell("section:3/roots");
        } else if (k == "s3irred") {
            need(3);
            s3_irred_D = detail::parse_long(f[1]);
            s3_irred_poly = detail::parse_kpoly(f[2]);
            add_cell("section:3/irreducible");
        } else if (k == "s3tmin") {
            need(4);
            s3_tmin_D = detail::parse_long(f[1]);
            for (auto& p : detail::split_list(f[2])) s3_tmin.push_back(to_qpoly(detail::parse_kpoly(p)));
            s3_tmin_other = detail::parse_long(f[3]);
            add_cell("section:3/t-minpoly");
        } else if (k == "s4r") {
            need(4);
            std::string cell = add_cell("section:4/" + f[1] + "/" + f[2]);
            s4r.emplace_back(f[1], column_D(f[2]), detail::parse_elems(f[3]), cell);
        } else if (k == "s4ns") {
            need(5);
            S4Claim c{f[1], detail::parse_long(f[2]), parse_quad(f[3]), parse_quad(f[4]), {}};
            c.cell = add_cell("section:4/" + f[1] + "/" + f[2] + "/r=" + f[3]);
            s4ns.push_back(c);
        } else if (k == "s4elem") {
            need(2);
            s4elem = detail::parse_elems(f[1]);
            add_cell("section:4/elementary");
        } else if (k == "s5s") {
            need(2);
            s5s = detail::parse_elems(f[1]);
            add_cell("section:5/s-set");
        } else if (k == "s5one") {
            need(4);
            Pt P = detail::parse_point(f[1]);
            std::string cell = add_cell("section:5/" + pt_str(P) + "/beta=" + f[2]);
            check_on("section:5", cell, "C4", P);
            s5one.emplace_back(P, parse_quad(f[2]), to_qpoly(detail::parse_kpoly(f[3])), cell);
        } else if (k == "s5beta") {
            need(5);
            S5Beta b{detail::parse_long(f[1]), detail::parse_point(f[2]), parse_quad(f[3]), parse_quad(f[4]), {}};
            b.cell = add_cell("section:5/beta/" + pt_str(b.P));
            check_on("section:5", b.cell, "C4", b.P);
            s5beta.push_back(b);
        } else if (k == "s6c6") {
            need(2);
            s6c6 = detail::parse_elems(f[1]);
            add_cell("section:6/C6");
        } else if (k == "s6minus2") {
            need(2);
            s6minus2 = parse_quad(f[1]);
            add_cell("section:6/s^2=-2");
        } else if (k == "rank0") {
            need(2);
            for (auto& s : detail::split_list(f[1])) rank0.push_back(detail::parse_long(s));
            add_cell("remark:rank-zero/list");
        } else if (k == "cn1") {
            need(2);
            for (auto& s : detail::split_list(f[1])) cn1.push_back(detail::parse_long(s));
            add_cell("remark:rank-zero/class-number-one");
        } else if (k == "gen") {
            need(3);
            gens[f[1]] = detail::parse_point(f[2]);
            std::string cell = add_cell("section:8/gen/" + f[1]);
            if (!model("E0").contains(CurvePoint::affine(gens[f[1]].first, gens[f[1]].second)))
                issues.push_back({"section:8", cell, pt_str(gens[f[1]]) + " is not on E0"});
        } else if (k == "relation") {
            need(2);
            relations.push_back(f[1]);
            add_cell("section:8/" + f[1]);
        } else if (k == "s1") {
            need(2);
            s1 = detail::split_list(f[1]);
            add_cell("section:8/S1");
        } else if (k == "six") {
            need(6);
            SixRow r{detail::split_list(f[1]), detail::parse_long(f[2]), parse_quad(f[3]), parse_quad(f[4]), parse_quad(f[5]), {}};
            r.cell = add_cell("theorem:six/" + f[1]);
            six.push_back(r);
        } else if (k == "table6" || k == "table7") {
            need(3);
            PrintedRow r{detail::parse_long(f[1]), detail::split_list(f[2]), {}};
            if (r.slots.size() != 5) throw DataError(k + " row needs 5 slots");
            for (auto& s : r.slots) (void)eval_int_expr(s);
            r.cell = add_cell("table:" + k.substr(5) + "/n=" + f[1]);
            (k == "table6" ? table6 : table7).push_back(r);
        } else if (k == "checked") {
            need(5);
            checked.push_back({detail::parse_long(f[1]), detail::parse_long(f[2]), detail::parse_long(f[3]), detail::parse_long(f[4])});
            add_cell("section:8/checked/D=" + f[1]);
        } else {
            throw DataError("unknown record kind '" + k + "'");
        }
    }

    static S3Entry parse_s3_entry(const std::string& e) {
        S3Entry out;
        if (e == "empty") return out;
        if (e.rfind("deg ", 0) == 0) {
            std::istringstream is(e.substr(4));
            out.kind = S3Entry::deg;
            if (!(is >> out.d1 >> out.d2)) throw DataError("bad degree entry: " + e);
            return out;
        }
        if (e.rfind("sol ", 0) == 0) {
            auto parts = detail::split(e.substr(4), ";");
            if (parts.size() != 3) throw DataError("bad solution entry: " + e);
            auto pm = [](std::string s, bool& flag) {
                if (s.rfind("+-", 0) == 0) {
                    flag = true;
                    s = s.substr(2);
                }
                return parse_quad(s);
            };
            out.kind = S3Entry::sol;
            out.b1 = pm(parts[0], out.pm1);
            out.b2 = pm(parts[1], out.pm2);
            out.Q = detail::parse_kpoly(parts[2]);
            return out;
        }
        throw DataError("bad case-table entry: " + e);
    }

    void finish() {
        for (const char* c : {"C0", "C1", "C2", "C3", "C4", "C5", "C6"})
            if (!curves.count(c)) throw DataError(std::string("missing curve ") + c);
        for (const char* m : {"E0", "E1", "E4", "E6"})
            if (!models.count(m)) throw DataError(std::string("missing model ") + m);
    }
};

} // namespace apsq::verify
