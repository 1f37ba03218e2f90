#pragma once

// Flat report rows for survivors and their CSV / JSON encodings.
//
// CSV columns: p,mod8,survivor,h,group,ono_d,case_check,witness
// Inapplicable fields are empty in CSV and null in JSON.  The witness column
// holds "x=..;t=.." (p ≡ 7 mod 8) or "x=..;y=.." (p ≡ 1 mod 8).

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfs/survey.hpp"

namespace qfs {

struct ReportRow {
    u64 p = 0;
    unsigned residue_class = 0;
    bool survivor = false;
    i64 h = 0;
    std::string group;
    std::optional<unsigned> ono_d;
    bool case_check = false;
    std::optional<std::string> witness;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline ReportRow to_row(const SurvivorRecord& rec) {
    ReportRow row;
    row.p = rec.p;
    row.residue_class = rec.residue_class;
    row.survivor = true;
    row.h = rec.h;
    ClassGroup shape;
    shape.invariant_factors = rec.invariant_factors;
    row.group = shape.structure();
    row.ono_d = rec.ono_d;
    row.case_check = check_case(rec);
    if (rec.residue_class == 7) {
        if (auto w = witness_8t2(rec.p)) row.witness = "x=" + std::to_string(w->first) + ";t=" + std::to_string(w->second);
    } else if (rec.residue_class == 1) {
        if (auto w = witness_2y2(rec.p)) row.witness = "x=" + std::to_string(w->first) + ";y=" + std::to_string(w->second);
    }
    return row;
}

inline std::vector<ReportRow> to_rows(const std::vector<SurvivorRecord>& recs) {
    std::vector<ReportRow> rows;
    rows.reserve(recs.size());
    for (const auto& r : recs) rows.push_back(to_row(r));
    return rows;
}

inline constexpr const char* kCsvHeader = "p,mod8,survivor,h,group,ono_d,case_check,witness";

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.p << ',' << r.residue_class << ',' << (r.survivor ? "true" : "false") << ',' << r.h << ','
           << r.group << ',';
        if (r.ono_d) os << *r.ono_d;
        os << ',' << (r.case_check ? "true" : "false") << ',';
        if (r.witness) os << *r.witness;
        os << '\n';
    }
}

namespace detail {

inline bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::invalid_argument("report: bad boolean '" + s + "'");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace detail

inline std::vector<ReportRow> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw std::invalid_argument("report: missing CSV header");
    std::vector<ReportRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 8) throw std::invalid_argument("report: expected 8 CSV columns in '" + line + "'");
        ReportRow r;
        r.p = std::stoull(cells[0]);
        r.residue_class = static_cast<unsigned>(std::stoul(cells[1]));
        r.survivor = detail::parse_bool(cells[2]);
        r.h = std::stoll(cells[3]);
        r.group = cells[4];
        if (!cells[5].empty()) r.ono_d = static_cast<unsigned>(std::stoul(cells[5]));
        r.case_check = detail::parse_bool(cells[6]);
        if (!cells[7].empty()) r.witness = cells[7];
        rows.push_back(std::move(r));
    }
    return rows;
}

inline nlohmann::ordered_json to_json(const std::vector<ReportRow>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["mod8"] = r.residue_class;
        j["survivor"] = r.survivor;
        j["h"] = r.h;
        j["group"] = r.group;
        j["ono_d"] = r.ono_d ? nlohmann::ordered_json(*r.ono_d) : nlohmann::ordered_json(nullptr);
        j["case_check"] = r.case_check;
        j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr;
}

inline void write_json(std::ostream& os, const std::vector<ReportRow>& rows) { os << to_json(rows).dump(2) << '\n'; }

inline std::vector<ReportRow> parse_json(std::istream& is) {
    const auto arr = nlohmann::json::parse(is);
    if (!arr.is_array()) throw std::invalid_argument("report: JSON top level must be an array");
    std::vector<ReportRow> rows;
    for (const auto& j : arr) {
        ReportRow r;
        r.p = j.at("p").get<u64>();
        r.residue_class = j.at("mod8").get<unsigned>();
        r.survivor = j.at("survivor").get<bool>();
        r.h = j.at("h").get<i64>();
        r.group = j.at("group").get<std::string>();
        if (!j.at("ono_d").is_null()) r.ono_d = j.at("ono_d").get<unsigned>();
        r.case_check = j.at("case_check").get<bool>();
        if (!j.at("witness").is_null()) r.witness = j.at("witness").get<std::string>();
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace qfs
