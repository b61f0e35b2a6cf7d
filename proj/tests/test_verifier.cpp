// Data store parsing, report serialization and selector dispatch.

#include <apsq/verifier.hpp>
#include <gtest/gtest.h>

using namespace apsq;
using namespace apsq::verify;

namespace {

const PaperDataStore& store() {
    static const PaperDataStore st = PaperDataStore::load_default();
    return st;
}

} // namespace

TEST(DataStore, EmbeddedMatchesFile) {
    auto file = PaperDataStore::load_file(APSQ_DATA_FILE);
    EXPECT_EQ(file.census(), store().census());
    EXPECT_EQ(file.s3.size(), store().s3.size());
    EXPECT_GT(store().s3.size(), 20u);
    EXPECT_EQ(store().table6.size(), 4u);
    EXPECT_EQ(store().table7.size(), 3u);
}

TEST(DataStore, OffCurvePointsAreIssuesNotErrors) {
    // the printed C4 points at D = 3 do not lie on C4
    bool found = false;
    for (auto& is : store().issues) found = found || is.cell == "table:4/C4/3";
    EXPECT_TRUE(found);
}

TEST(DataStore, RejectsMalformedLines) {
    EXPECT_THROW(PaperDataStore::parse("curve | C9\n", "inline"), DataError);
    EXPECT_THROW(PaperDataStore::parse("nonsense | 1 | 2\n", "inline"), DataError);
    EXPECT_THROW(PaperDataStore::load_file("/nonexistent/tables.txt"), DataError);
}

TEST(DataStore, IntegerExpressions) {
    EXPECT_EQ(eval_int_expr("-2*26^2"), -1352);
    EXPECT_EQ(eval_int_expr("11*10691*560171"), Integer("65876669771"));
    EXPECT_EQ(eval_int_expr("7^2"), 49);
    EXPECT_THROW(eval_int_expr("7^"), DataError);
}

TEST(Report, StatusAndSerialization) {
    Report r;
    EXPECT_EQ(r.overall(), Status::pass);
    r.add("table:1", "table:1/C1", true, "claim", "computed");
    r.flag("table:1", {}, "note", "x");
    EXPECT_EQ(r.overall(), Status::pass);
    r.add("table:1", "table:1/C2", false, "other", "y", "z");
    EXPECT_EQ(r.overall(), Status::fail);
    auto j = r.json();
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["checks"].size(), 3u);
    EXPECT_EQ(j["checks"][2]["expected"], "z");
    r.set_census({"table:1/C1", "table:1/C2", "table:1/C3"});
    EXPECT_EQ(r.uncovered(), std::vector<std::string>{"table:1/C3"});
    EXPECT_NE(r.text().find("coverage: 2/3 cells"), std::string::npos);
}

TEST(Selectors, PassingSections) {
    for (const char* sel : {"table:1", "table:3", "section:3", "section:4", "section:5", "lemma", "six", "rank", "isogeny"}) {
        Report r = run_selector(store(), sel);
        EXPECT_FALSE(r.empty()) << sel;
        EXPECT_EQ(r.overall(), Status::pass) << sel << "\n" << r.text();
    }
}

TEST(Selectors, RestrictToField) {
    Report r = run_selector(store(), "section:3", {-1, std::nullopt, 1});
    EXPECT_EQ(r.overall(), Status::pass);
    for (auto& c : r.records())
        if (c.cell.rfind("section:3/D=", 0) == 0) EXPECT_EQ(c.cell.rfind("section:3/D=-1/", 0), 0u) << c.cell;
}

TEST(Selectors, KnownMisprints) {
    Report t4 = run_selector(store(), "table:4");
    EXPECT_EQ(t4.overall(), Status::fail);
    Report rel = run_selector(store(), "relations");
    EXPECT_EQ(rel.count(Status::fail), 1u);
    Report t7 = run_selector(store(), "table:7");
    ASSERT_EQ(t7.count(Status::fail), 1u);
    for (auto& c : t7.records())
        if (c.status == Status::fail) EXPECT_EQ(c.cell, "table:7/n=3");
}

TEST(Selectors, ControlsFail) {
    Report r = run_selector(store(), "controls");
    EXPECT_EQ(r.count(Status::fail), r.records().size());
    EXPECT_EQ(r.records().size(), 3u);
}

TEST(Selectors, Unknown) { EXPECT_THROW(run_selector(store(), "table:9"), UnknownSelector); }
