#pragma once

#include "bpqm/bag.hpp"
#include "bpqm/combine.hpp"
#include "bpqm/ldpc.hpp"
#include "bpqm/polar.hpp"
#include "bpqm/spectra.hpp"
#include "bpqm/unitaries.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bpqm::io {

using nlohmann::json;

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

json to_json(const EigenList& lam);
EigenList eigen_list_from_json(const json& j);

// [[re, im], ...]
json to_json(const GramRow& g);
GramRow gram_row_from_json(const json& j);

// [{"prob": p, "eigenlist": [...]}, ...]
json to_json(const HeraldedEnsemble& e);
HeraldedEnsemble ensemble_from_json(const json& j);

json to_json(const std::vector<CheckBranch>& branches);

// {"q": q, "samples": [[...], ...]}
json to_json(const ChannelBag& b);
ChannelBag bag_from_json(const json& j);

// Row-major [re, im] pairs plus shape and kind.
json to_json(const UnitaryBundle& u);

json to_json(const FidelityBoundReport& r);

json to_json(const LdpcDERun& r);
LdpcDERun ldpc_run_from_json(const json& j);

json to_json(const ThresholdResult& r);
ThresholdResult threshold_from_json(const json& j);

json to_json(const PolarDesignResult& r);
PolarDesignResult polar_design_from_json(const json& j);

// Comment lines start with '#'. Cells are stored as strings so that the
// writer controls number formatting.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
};

void write_csv(std::ostream& os, const CsvTable& t);
CsvTable read_csv(std::istream& is);

// Data section only: comment lines dropped.
std::string data_section(const std::string& file_text);

CsvTable sweep_table(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_rows_from_table(const CsvTable& t);

CsvTable ldpc_trajectory_table(const LdpcDERun& r);
CsvTable rank_table(const std::vector<RankRow>& rows);

// Plot-ready files: one curve per table.
CsvTable polar_rate_figure(const std::vector<SweepRow>& rows, int n);
CsvTable ldpc_curve_figure(const std::vector<CurvePoint>& points);
CsvTable rank_figure(const std::vector<RankRow>& rows);

}  // namespace bpqm::io
