// apsq: command-line driver for the library and the verifier.

#include <CLI11.hpp>
#include <apsq/verifier.hpp>

#include <fstream>
#include <iostream>

using namespace apsq;
namespace av = apsq::verify;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            long n = std::stol(s);
            return {n, n};
        }
        return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw UsageError("bad n-range '" + s + "', expected a..b");
    }
}

av::PaperDataStore load_store(const std::string& path) {
    return path.empty() ? av::PaperDataStore::load_default() : av::PaperDataStore::load_file(path);
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    f << text;
    if (!f) throw std::ios_base::failure("cannot write " + out);
}

// d slot as in the printed tables: -m*w^2 over Q(sqrt -2), m factored over Q(sqrt 2)
std::string render_d(const GenerationRow& g) {
    const QuadElem& z = g.orbit.cls->canonical.terms[3];
    if (!g.shape || !g.shape->holds) return render_slot(z);
    if (g.D == -2) {
        std::string s = "-" + g.shape->m.get_str();
        if (g.shape->d != 1) s += "*" + g.shape->d.get_str() + "^2";
        return s;
    }
    if (!g.shape->m_certified) return g.shape->m.get_str();
    std::string s;
    for (auto& [p, e] : factor_integer(g.shape->m))
        for (long k = 0; k < e; ++k) s += (s.empty() ? "" : "*") + p.get_str();
    return s;
}

int cmd_verify(const std::string& sel, std::optional<long> D, std::optional<long> generic, std::optional<long> nmax, unsigned jobs, const std::string& data, const std::string& format, const std::string& out) {
    auto st = load_store(data);
    if (generic) {
        if (!is_squarefree_long(*generic) || *generic == 1) throw UsageError("--generic-D must be squarefree and != 0, 1");
        st.generic_D = *generic;
    }
    av::Report rep = av::run_selector(st, sel, {D, nmax, jobs});
    std::ostringstream os;
    rep.write(os, format);
    emit(os.str(), out);
    return rep.overall() == av::Status::pass ? 0 : 1;
}

int cmd_ap(const std::string& lit, std::optional<long> D, const std::string& format) {
    QuadElem t = parse_quad(lit, D.value_or(0));
    FiveTermAP ap = ap_from_t(t, t.is_rational() ? D.value_or(0) : t.D());
    Classification c = classify_t(t);
    APClass cls = normalize_ap(ap);
    FieldOfDefinition F = proper_field_of_definition(ap);
    std::optional<DerivedInvariants> inv;
    if (!t.is_zero()) inv = derived_invariants(t);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["t"] = t.str();
        auto terms = nlohmann::ordered_json::array(), wit = nlohmann::ordered_json::array();
        for (int k = 0; k < 5; ++k) {
            terms.push_back(ap.terms[k].str());
            wit.push_back(ap.witnesses[k] ? ap.witnesses[k]->str() : "sqrt(" + ap.terms[k].str() + ")");
        }
        j["terms"] = terms;
        j["witnesses"] = wit;
        j["class"] = cls.canonical.str();
        if (inv) {
            j["s"] = inv->s.str();
            j["r"] = inv->r.str();
        }
        j["classification"] = c.str();
        j["field"] = F.str();
        j["degree"] = F.degree;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "t = " << t.str() << "\n";
    std::cout << "terms: " << ap.str() << "\n";
    std::cout << "witnesses:";
    for (int k = 0; k < 5; ++k) std::cout << " " << (ap.witnesses[k] ? ap.witnesses[k]->str() : "sqrt(" + ap.terms[k].str() + ")");
    std::cout << "\nclass: " << render_row(cls.canonical) << "\n";
    if (inv) std::cout << "s = " << inv->s.str() << ", r = " << inv->r.str() << "\n";
    else std::cout << "s undefined (t = 0)\n";
    std::cout << "classification: " << c.str() << "\n";
    std::cout << "field: " << F.str() << " (degree " << F.degree << ")\n";
    return 0;
}

int cmd_generate(long D, const std::string& range, unsigned jobs, const std::string& format) {
    if (D != -2 && D != 2 && D != 1) throw UsageError("--D must be -2, 2 or 1");
    auto [a, b] = parse_range(range);
    if (a < 0 || b < a) throw UsageError("n-range must be non-negative and increasing");
    long step = 1;
    if (D == 2) {
        if (a % 2 == 0) ++a; // odd n only
        step = 2;
        if (a > b) throw ParityError("no odd n in the range");
    }
    auto rows = av::generation_rows(D == 1 ? 0 : D, a, b, step, jobs);
    bool all_ok = true;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& g : rows) {
        bool ok = g.orbit.cls && g.orbit.consistent && (D == 1 || (g.shape && g.shape->holds));
        all_ok = all_ok && ok;
        if (format == "json") {
            nlohmann::ordered_json j;
            j["n"] = g.n;
            if (g.orbit.cls) {
                auto terms = nlohmann::ordered_json::array();
                for (auto& z : g.orbit.cls->canonical.terms) terms.push_back(z.str());
                j["terms"] = terms;
            }
            if (g.shape) {
                j["m"] = g.shape->m.get_str();
                j["m_certified"] = g.shape->m_certified;
            }
            j["field"] = g.field;
            j["consistent"] = g.orbit.consistent;
            j["verdict"] = ok;
            if (g.shape && !g.shape->holds) j["reason"] = g.shape->reason;
            arr.push_back(j);
            continue;
        }
        std::cout << "n = " << g.n << ": ";
        if (!g.orbit.cls) {
            std::cout << "no progression\n";
            continue;
        }
        const auto& t = g.orbit.cls->canonical.terms;
        std::cout << "(" << render_slot(t[0]) << ", " << render_slot(t[1]) << ", " << render_slot(t[2]) << ", " << render_d(g) << ", " << render_slot(t[4]) << ")";
        std::cout << "  K = " << g.field;
        if (g.shape) std::cout << "  verdict: " << (g.shape->holds ? "true" : "false (" + g.shape->reason + ")") << (g.shape->holds && !g.shape->m_certified ? " [m squarefree by partial factoring]" : "");
        if (!g.orbit.consistent) std::cout << "  [orbit members disagree]";
        std::cout << "\n";
    }
    if (format == "json") std::cout << arr.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int cmd_extend(const std::string& lit, std::optional<long> D, const std::string& rho_text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : lit) {
        if (c == '(' || c == ')') continue;
        if (c == ',' || c == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 5) throw ParseError("expected five comma-separated terms");
    std::array<QuadElem, 5> z;
    for (int k = 0; k < 5; ++k) {
        std::string p = parts[k];
        // allow n^2 and k*n^2 for readability
        try {
            z[k] = QuadElem(Rational(av::eval_int_expr(p)));
        } catch (const std::exception&) {
            z[k] = parse_quad(p, D.value_or(0));
        }
    }
    FiveTermAP ap = make_ap(z, D.value_or(0));
    SixTermResult r;
    std::string K;
    if (!rho_text.empty()) {
        long base = D.value_or(ap.D);
        QuadElem rho = parse_quad(rho_text, base);
        r = six_term_extension_check(ap, base, rho);
        K = "Q(sqrt " + std::to_string(base) + ", sqrt " + rho.str() + ")";
    } else {
        FieldOfDefinition F = proper_field_of_definition(ap);
        r = six_term_extension_check(ap);
        K = F.str();
    }
    std::cout << "progression: " << ap.str() << " over " << K << "\n";
    auto show = [](const char* side, const ExtensionVerdict& v) {
        std::cout << side << ": " << v.term.str() << " ";
        if (v.square) std::cout << "is a square, witness " << v.witness->str() << "\n";
        else std::cout << "is not a square (needs sqrt(" << v.required_radicand.str() << "))\n";
    };
    show("prepend", r.prepend);
    show("append", r.append);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic progressions of five squares over quadratic fields"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    std::string data, format = "text", out;
    app.add_option("--data", data, "data store file (default: APSQ_DATA or the embedded copy)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    unsigned jobs = 0;
    app.add_option("-j,--jobs", jobs, "worker threads for the generation ranges (0: all cores)");

    auto* v = app.add_subcommand("verify", "check the stored tables and claims");
    std::string sel;
    std::optional<long> vD, generic, nmax;
    v->add_option("selector", sel, "all | table:N | section:N | lemma | isogeny | generation | relations | six | rank | controls")->required();
    v->add_option("--D", vD, "restrict to one field where the selector supports it");
    v->add_option("--generic-D", generic, "representative for the generic columns (default 7)");
    v->add_option("--n-max", nmax, "cap the checked n ranges");
    v->add_option("-o,--output", out, "write the report to a file");

    auto* a = app.add_subcommand("ap", "progression attached to t");
    std::string t;
    std::optional<long> aD;
    a->add_option("--t", t, "field element, e.g. 1+sqrt(2)")->required();
    a->add_option("--D", aD, "base field for rational t");

    auto* g = app.add_subcommand("generate", "progressions from the generator orbits");
    long gD = -2;
    std::string range = "0..3";
    g->add_option("--D", gD, "-2, 2 or 1 (rational)")->required();
    g->add_option("--n", range, "n-range a..b");

    auto* e = app.add_subcommand("extend", "six-term extension of a progression");
    std::string lit, rho;
    std::optional<long> eD;
    e->add_option("progression", lit, "five terms, e.g. \"7^2,13^2,17^2,409,23^2\"")->required();
    e->add_option("--D", eD, "base field");
    e->add_option("--rho", rho, "second radicand of K = Q(sqrt D, sqrt rho)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*v) return cmd_verify(sel, vD, generic, nmax, jobs, data, format, out);
        if (*a) return cmd_ap(t, aD, format);
        if (*g) return cmd_generate(gD, range, jobs, format);
        if (*e) return cmd_extend(lit, eD, rho);
    } catch (const av::UnknownSelector& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 2;
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 2;
    } catch (const ParityError& err) {
        std::cerr << "parity error: " << err.what() << "\n";
        return 2;
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    } catch (const av::DataError& err) {
        std::cerr << "data error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
