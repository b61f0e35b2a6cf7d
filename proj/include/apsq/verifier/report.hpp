#pragma once

// Check records and their serialization.

#include <json.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace apsq::verify {

enum class Status { pass, fail, flagged };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "flagged";
    }
}

struct CheckRecord {
    std::string anchor;     // table or section id
    std::string cell;       // data-store cell id, empty for derived checks
    Status status = Status::pass;
    std::string claim;
    std::string computed;
    std::string expected;
    std::string assumption; // non-empty when the verdict rests on outside data
};

class Report {
public:
    void add(CheckRecord r) { records_.push_back(std::move(r)); }
    void add(std::string anchor, std::string cell, bool ok, std::string claim, std::string computed, std::string expected = {}, std::string assumption = {}) {
        records_.push_back({std::move(anchor), std::move(cell), ok ? Status::pass : Status::fail, std::move(claim), std::move(computed), std::move(expected), std::move(assumption)});
    }
    void flag(std::string anchor, std::string cell, std::string claim, std::string computed, std::string expected = {}, std::string assumption = {}) {
        records_.push_back({std::move(anchor), std::move(cell), Status::flagged, std::move(claim), std::move(computed), std::move(expected), std::move(assumption)});
    }
    void merge(const Report& o) {
        records_.insert(records_.end(), o.records_.begin(), o.records_.end());
    }

    const std::vector<CheckRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }

    std::size_t count(Status s) const {
        return std::size_t(std::count_if(records_.begin(), records_.end(), [s](const CheckRecord& r) { return r.status == s; }));
    }
    Status overall() const { return count(Status::fail) ? Status::fail : Status::pass; }

    // cells referenced by at least one record
    std::set<std::string> touched() const {
        std::set<std::string> s;
        for (auto& r : records_)
            if (!r.cell.empty()) s.insert(r.cell);
        return s;
    }

    // census of the data store; coverage is printed when set
    void set_census(std::vector<std::string> cells) { census_ = std::move(cells); }
    const std::vector<std::string>& census() const { return census_; }
    std::vector<std::string> uncovered() const {
        auto t = touched();
        std::vector<std::string> out;
        for (auto& c : census_)
            if (!t.count(c)) out.push_back(c);
        return out;
    }

    std::string text() const {
        std::ostringstream os;
        for (auto& r : records_) {
            os << "[" << status_name(r.status) << "] " << r.anchor;
            if (!r.cell.empty()) os << " {" << r.cell << "}";
            os << ": " << r.claim << "\n";
            if (!r.computed.empty()) os << "    computed: " << r.computed << "\n";
            if (!r.expected.empty()) os << "    expected: " << r.expected << "\n";
            if (!r.assumption.empty()) os << "    assumed: " << r.assumption << "\n";
        }
        os << "summary: " << records_.size() << " checks, " << count(Status::pass) << " pass, " << count(Status::fail) << " fail, " << count(Status::flagged) << " flagged\n";
        if (!census_.empty()) {
            auto u = uncovered();
            os << "coverage: " << census_.size() - u.size() << "/" << census_.size() << " cells\n";
            for (auto& c : u) os << "    not covered: " << c << "\n";
        }
        os << "status: " << status_name(overall()) << "\n";
        return os.str();
    }

    nlohmann::ordered_json json() const {
        nlohmann::ordered_json j;
        j["status"] = status_name(overall());
        j["summary"] = {{"checks", records_.size()}, {"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"flagged", count(Status::flagged)}};
        if (!census_.empty()) {
            auto u = uncovered();
            j["coverage"] = {{"cells", census_.size()}, {"covered", census_.size() - u.size()}, {"uncovered", u}};
        }
        auto arr = nlohmann::ordered_json::array();
        for (auto& r : records_) {
            nlohmann::ordered_json e;
            e["anchor"] = r.anchor;
            if (!r.cell.empty()) e["cell"] = r.cell;
            e["status"] = status_name(r.status);
            e["claim"] = r.claim;
            e["computed"] = r.computed;
            e["expected"] = r.expected;
            if (!r.assumption.empty()) e["assumption"] = r.assumption;
            arr.push_back(std::move(e));
        }
        j["checks"] = std::move(arr);
        return j;
    }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") os << json().dump(2) << "\n";
        else os << text();
        if (!os) throw std::ios_base::failure("failed to write report");
    }

private:
    std::vector<CheckRecord> records_;
    std::vector<std::string> census_;
};

} // namespace apsq::verify
