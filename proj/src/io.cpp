#include "bpqm/io.hpp"

#include "bpqm/error.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace bpqm::io {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json to_json(const EigenList& lam) { return json(lam.vector()); }

EigenList eigen_list_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("eigen list must be a JSON array");
    return EigenList(j.get<std::vector<double>>());
}

json to_json(const GramRow& g) {
    json a = json::array();
    for (const auto& c : g.entries()) a.push_back({c.real(), c.imag()});
    return a;
}

GramRow gram_row_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("Gram row must be a JSON array of [re, im] pairs");
    std::vector<Complex> g;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw InvalidInput("Gram row entries must be [re, im] pairs");
        g.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return GramRow(std::move(g));
}

json to_json(const HeraldedEnsemble& e) {
    json a = json::array();
    for (const auto& b : e.branches()) a.push_back({{"prob", b.prob}, {"eigenlist", to_json(b.lam)}});
    return a;
}

HeraldedEnsemble ensemble_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("ensemble must be a JSON array");
    std::vector<Branch> b;
    for (const auto& e : j) b.push_back({e.at("prob").get<double>(), eigen_list_from_json(e.at("eigenlist"))});
    return HeraldedEnsemble(std::move(b));
}

json to_json(const std::vector<CheckBranch>& branches) {
    json a = json::array();
    for (const auto& b : branches) a.push_back({{"m", b.m}, {"prob", b.prob}, {"eigenlist", to_json(b.lam)}});
    return a;
}

json to_json(const ChannelBag& b) {
    json samples = json::array();
    for (std::size_t i = 0; i < b.size(); ++i)
        samples.push_back(std::vector<double>(b.sample(i).begin(), b.sample(i).end()));
    return {{"q", b.q()}, {"samples", std::move(samples)}};
}

ChannelBag bag_from_json(const json& j) {
    const int q = j.at("q").get<int>();
    std::vector<double> flat;
    for (const auto& s : j.at("samples")) {
        const auto v = s.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != q) throw DimensionMismatch("bag sample length differs from q");
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return ChannelBag(q, std::move(flat));
}

json to_json(const UnitaryBundle& u) {
    json data = json::array();
    for (Eigen::Index i = 0; i < u.matrix.rows(); ++i)
        for (Eigen::Index k = 0; k < u.matrix.cols(); ++k) data.push_back({u.matrix(i, k).real(), u.matrix(i, k).imag()});
    return {{"q", u.q},
            {"labels", u.labels},
            {"kind", std::string(to_string(u.kind))},
            {"rows", u.matrix.rows()},
            {"cols", u.matrix.cols()},
            {"data", std::move(data)}};
}

json to_json(const FidelityBoundReport& r) {
    json j = {{"f1", r.f1},
              {"f2", r.f2},
              {"bit_fidelity", r.bit_fidelity},
              {"bit_bound", r.bit_bound},
              {"check_fidelity", r.check_fidelity},
              {"check_bound", r.check_bound},
              {"one_parameter", r.one_parameter},
              {"holds", r.holds()}};
    if (r.one_parameter) {
        j["special_bit_value"] = r.special_bit_value;
        j["special_check_bound"] = r.special_check_bound;
    }
    return j;
}

json to_json(const LdpcDERun& r) {
    return {{"dv", r.dv},
            {"dc", r.dc},
            {"q", r.q},
            {"lambda0", r.lambda0},
            {"M", r.bag_size},
            {"T", r.max_iterations},
            {"delta", r.delta},
            {"seed", r.seed},
            {"per_iteration_error", r.per_iteration_error},
            {"verdict", r.verdict == Verdict::converged ? "converged" : "not-converged"}};
}

LdpcDERun ldpc_run_from_json(const json& j) {
    LdpcDERun r;
    r.dv = j.at("dv").get<int>();
    r.dc = j.at("dc").get<int>();
    r.q = j.at("q").get<int>();
    r.lambda0 = j.at("lambda0").get<double>();
    r.bag_size = j.at("M").get<std::size_t>();
    r.max_iterations = j.at("T").get<int>();
    r.delta = j.at("delta").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.per_iteration_error = j.at("per_iteration_error").get<std::vector<double>>();
    r.verdict = j.at("verdict").get<std::string>() == "converged" ? Verdict::converged : Verdict::not_converged;
    return r;
}

json to_json(const ThresholdResult& r) {
    json path = json::array();
    for (const auto& s : r.path)
        path.push_back(
            {{"lambda0", s.lambda0}, {"converged", s.converged}, {"final_error", s.final_error}, {"iterations", s.iterations}});
    return {{"dv", r.dv},
            {"dc", r.dc},
            {"q", r.q},
            {"lambda0_threshold", r.lambda0_threshold},
            {"bracket_width", r.bracket_width},
            {"lower", r.lower},
            {"upper", r.upper},
            {"M", r.bag_size},
            {"T", r.max_iterations},
            {"seed", r.seed},
            {"delta", r.delta},
            {"tol", r.tol},
            {"path", std::move(path)}};
}

ThresholdResult threshold_from_json(const json& j) {
    ThresholdResult r;
    r.dv = j.at("dv").get<int>();
    r.dc = j.at("dc").get<int>();
    r.q = j.at("q").get<int>();
    r.lambda0_threshold = j.at("lambda0_threshold").get<double>();
    r.bracket_width = j.at("bracket_width").get<double>();
    r.lower = j.at("lower").get<double>();
    r.upper = j.at("upper").get<double>();
    r.bag_size = j.at("M").get<std::size_t>();
    r.max_iterations = j.at("T").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.delta = j.at("delta").get<double>();
    r.tol = j.at("tol").get<double>();
    for (const auto& s : j.at("path"))
        r.path.push_back({s.at("lambda0").get<double>(), s.at("converged").get<bool>(),
                          s.at("final_error").get<double>(), s.at("iterations").get<int>()});
    return r;
}

json to_json(const PolarDesignResult& r) {
    return {{"n", r.n},
            {"N", r.block_length},
            {"per_channel_error", r.per_channel_error},
            {"info_set", r.info_set},
            {"design_rate", r.design_rate},
            {"epsilon", r.epsilon},
            {"seed", r.seed},
            {"M", r.bag_size},
            {"empty_design", r.empty_design()}};
}

PolarDesignResult polar_design_from_json(const json& j) {
    PolarDesignResult r;
    r.n = j.at("n").get<int>();
    r.block_length = j.at("N").get<std::size_t>();
    r.per_channel_error = j.at("per_channel_error").get<std::vector<double>>();
    r.info_set = j.at("info_set").get<std::vector<std::size_t>>();
    r.design_rate = j.at("design_rate").get<double>();
    r.epsilon = j.at("epsilon").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.bag_size = j.at("M").get<std::size_t>();
    return r;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InvalidInput("CSV has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
    const std::string& cell = rows.at(row).at(column(name));
    double v = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw InvalidInput("CSV cell '" + cell + "' is not a number");
    return v;
}

namespace {

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& t) {
    for (const auto& c : t.comments) os << "# " << c << '\n';
    write_row(os, t.columns);
    for (const auto& r : t.rows) write_row(os, r);
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
            continue;
        }
        auto cells = split_row(line);
        if (!have_header) {
            t.columns = std::move(cells);
            have_header = true;
        } else {
            if (cells.size() != t.columns.size()) throw InvalidInput("CSV row width differs from header");
            t.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw InvalidInput("CSV has no header row");
    return t;
}

std::string data_section(const std::string& file_text) {
    std::istringstream in(file_text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out += line + '\n';
    return out;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
    CsvTable t;
    t.columns = {"lambda0", "design_rate", "holevo_qits", "n", "M", "seed", "epsilon"};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.lambda0), format_double(r.design_rate), format_double(r.holevo_qits),
                          std::to_string(r.n), std::to_string(r.bag_size), std::to_string(r.seed),
                          format_double(r.epsilon)});
    return t;
}

std::vector<SweepRow> sweep_rows_from_table(const CsvTable& t) {
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        rows.push_back({t.number(i, "lambda0"), t.number(i, "design_rate"), t.number(i, "holevo_qits"),
                        static_cast<int>(t.number(i, "n")), static_cast<std::size_t>(t.number(i, "M")),
                        std::stoull(t.rows[i][t.column("seed")]), t.number(i, "epsilon")});
    return rows;
}

CsvTable ldpc_trajectory_table(const LdpcDERun& r) {
    CsvTable t;
    t.columns = {"lambda0", "iteration", "mean_pgm_error"};
    for (std::size_t i = 0; i < r.per_iteration_error.size(); ++i)
        t.rows.push_back({format_double(r.lambda0), std::to_string(i + 1), format_double(r.per_iteration_error[i])});
    return t;
}

CsvTable rank_table(const std::vector<RankRow>& rows) {
    CsvTable t;
    t.columns = {"index", "rank", "mean_pgm_error"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.index), std::to_string(r.rank), format_double(r.mean_pgm_error)});
    return t;
}

CsvTable polar_rate_figure(const std::vector<SweepRow>& rows, int n) {
    CsvTable t;
    t.comments.push_back("curve: n=" + std::to_string(n));
    t.columns = {"lambda0", "rate", "holevo"};
    for (const auto& r : rows)
        if (r.n == n) t.rows.push_back({format_double(r.lambda0), format_double(r.design_rate), format_double(r.holevo_qits)});
    return t;
}

CsvTable ldpc_curve_figure(const std::vector<CurvePoint>& points) {
    CsvTable t;
    t.columns = {"lambda0", "final_error"};
    for (const auto& p : points) t.rows.push_back({format_double(p.lambda0), format_double(p.final_error)});
    return t;
}

CsvTable rank_figure(const std::vector<RankRow>& rows) {
    CsvTable t;
    t.columns = {"rank_over_N", "mean_error"};
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows)
        t.rows.push_back({format_double(static_cast<double>(r.rank) / n), format_double(r.mean_pgm_error)});
    return t;
}

}  // namespace bpqm::io
