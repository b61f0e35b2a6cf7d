// Acceptance run: one line per criterion, each with its time limit.
// Exit status is non-zero when any criterion fails.

#include <apsq/verifier.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace apsq;
using namespace apsq::verify;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::pair<int, std::string> run(const std::string& cmd) {
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string first_failure(const Report& r) {
    for (auto& c : r.records())
        if (c.status == Status::fail) return c.cell.empty() ? c.claim : c.cell + ": " + c.claim + " [computed " + c.computed.substr(0, 160) + "]";
    return {};
}

// generate via the CLI and compare every slot with the printed rows
Outcome printed_rows(long D, const std::string& range, const std::vector<PrintedRow>& rows, const std::string& literal) {
    auto [st, out] = run(std::string(APSQ_CLI_PATH) + " --format json generate --D " + std::to_string(D) + " --n " + range);
    auto [st2, text] = run(std::string(APSQ_CLI_PATH) + " generate --D " + std::to_string(D) + " --n " + range);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(out);
    } catch (const std::exception& e) {
        return {false, std::string("unparseable output: ") + e.what()};
    }
    std::string bad;
    for (auto& row : rows) {
        const nlohmann::json* got = nullptr;
        for (auto& g : j)
            if (g["n"] == row.n) got = &g;
        if (!got || !got->contains("terms")) {
            bad += " n=" + std::to_string(row.n) + " missing;";
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            Integer want = eval_int_expr(row.slots[k]);
            std::string have = (*got)["terms"][k];
            if (Integer(have) != want) bad += " n=" + std::to_string(row.n) + " slot " + "abcde"[k] + ": " + have + " vs printed " + row.slots[k] + " = " + want.get_str() + ";";
        }
    }
    if (text.find(literal) == std::string::npos) bad += " output lacks " + literal + ";";
    if (bad.empty()) return {true, std::to_string(rows.size()) + " rows equal"};
    return {false, bad};
}

Outcome from_report(const Report& r) {
    if (r.empty()) return {false, "no checks ran"};
    std::string f = first_failure(r);
    std::string summary = std::to_string(r.count(Status::pass)) + " pass, " + std::to_string(r.count(Status::fail)) + " fail, " + std::to_string(r.count(Status::flagged)) + " flagged";
    if (f.empty()) return {true, summary};
    return {false, summary + "; first: " + f};
}

} // namespace

int main() {
    PaperDataStore st;
    try {
        st = PaperDataStore::load_default();
    } catch (const std::exception& e) {
        std::cerr << "cannot load data store: " << e.what() << "\n";
        return 2;
    }

    struct Criterion {
        int id;
        std::string name;
        double limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> cs = {
        {1, "Table 6 reproduction (generate --D -2 --n 0..3)", 10, [&] { return printed_rows(-2, "0..3", st.table6, "-349040886543845"); }},
        {2, "Table 7 reproduction (generate --D 2 --n 1..5)", 10, [&] { return printed_rows(2, "1..5", st.table7, "11*10691*560171"); }},
        {3, "conjecture verdicts, D = -2 n <= 11 and D = 2 odd n <= 21", 600,
         [&] {
             Report all, r;
             verify_generation(st, all);
             for (auto& c : all.records())
                 if (c.cell.rfind("section:8/checked/", 0) == 0) r.add(c);
             if (r.records().size() != 2) return Outcome{false, "expected two checked ranges"};
             return from_report(r);
         }},
        {4, "section 3 tables for D in {7, 3, -1, -3}", 60,
         [&] {
             Report r;
             for (long D : {7L, 3L, -1L, -3L}) verify_section3(st, r, D);
             verify_section3(st, r);
             return from_report(r);
         }},
        {5, "Tables 2-4: torsion point sets and growth rows", 120,
         [&] {
             Report r;
             verify_point_tables(st, r);
             return from_report(r);
         }},
        {6, "Lemma halving", 30,
         [&] {
             Report r;
             verify_lemma_halving(st, r);
             return from_report(r);
         }},
        {7, "section 8 relations and S1", 5,
         [&] {
             Report r;
             verify_relations(st, r);
             return from_report(r);
         }},
        {8, "six-term extensions", 5,
         [&] {
             Report r;
             verify_six_term(st, r);
             Outcome o = from_report(r);
             std::size_t radicals = 0;
             for (auto& c : r.records())
                 if (c.claim.find("obstruction") != std::string::npos && c.computed.find("sqrt(") != std::string::npos) ++radicals;
             if (o.ok && radicals != 4) return Outcome{false, "expected four recorded obstruction radicals, got " + std::to_string(radicals)};
             return o;
         }},
        {9, "property suites", 120,
         [&] {
             auto [code, out] = run(std::string(APSQ_PROPERTIES_PATH) + " --gtest_brief=1");
             if (code != 0) return Outcome{false, "property binary exited with " + std::to_string(code) + "\n" + out};
             return Outcome{true, "all property tests pass"};
         }},
        {10, "negative controls each produce a failing check", 5,
         [&] {
             Report r;
             verify_controls(st, r);
             if (r.records().size() != 3) return Outcome{false, "expected three controls"};
             if (r.count(Status::fail) != 3) return Outcome{false, "a control passed: " + r.text()};
             return Outcome{true, "3 of 3 controls fail"};
         }},
    };

    int failed = 0;
    for (auto& c : cs) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.limit;
        bool pass = o.ok && in_time;
        failed += !pass;
        std::printf("criterion %2d %s  %s  (%.2f s, limit %.0f s)%s\n    %s\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(), secs, c.limit, in_time ? "" : " [over time]", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", int(cs.size()) - failed, cs.size());
    return failed ? 1 : 0;
}
