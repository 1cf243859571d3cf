#include "bpqm/cli.hpp"

#include "bpqm/error.hpp"
#include "bpqm/io.hpp"
#include "bpqm/ldpc.hpp"
#include "bpqm/parallel.hpp"
#include "bpqm/polar.hpp"
#include "bpqm/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bpqm::cli {

using nlohmann::json;

json to_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"q", c.q}, {"seed", c.seed}};
    if (!c.eigenlist.empty()) j["eigenlist"] = c.eigenlist;
    if (c.lambda0) j["lambda0"] = *c.lambda0;
    if (c.command == "combine") {
        if (!c.eigenlist2.empty()) j["eigenlist2"] = c.eigenlist2;
        if (c.lambda0_2) j["lambda0_2"] = *c.lambda0_2;
    }
    if (c.command == "polar-design" || c.command == "polar-sweep") {
        j["n"] = c.n;
        j["M"] = c.bag_size;
        j["epsilon"] = c.epsilon;
    }
    if (c.command == "ldpc-run" || c.command == "ldpc-threshold") {
        j["dv"] = c.dv;
        j["dc"] = c.dc;
        j["M"] = c.bag_size;
        j["T"] = c.max_iterations;
        j["delta"] = c.delta;
    }
    if (c.command == "ldpc-threshold") j["tol"] = c.tol;
    if (c.command == "verify") j["pairs"] = c.pairs;
    if (!c.grid.empty()) j["grid"] = c.grid;
    j["format"] = c.format;
    j["threads"] = thread_count();
    return j;
}

std::vector<double> parse_grid(const std::string& text) {
    auto number = [&](std::string_view s) {
        double v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw InvalidInput("grid: cannot parse '" + std::string(s) + "'");
        return v;
    };
    std::vector<std::string_view> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::string_view rest = text;
    while (true) {
        const auto pos = rest.find(sep);
        parts.push_back(rest.substr(0, pos));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    std::vector<double> grid;
    if (sep == ',') {
        for (auto p : parts) grid.push_back(number(p));
    } else {
        if (parts.size() != 3) throw InvalidInput("grid: expected start:stop:step");
        const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
        if (!(step > 0) || b < a) throw InvalidInput("grid: need step > 0 and stop >= start");
        const auto k = static_cast<long>(std::floor((b - a) / step + 1e-9));
        // index-based so that 1.0:3.0:0.2 ends exactly at 3.0
        for (long i = 0; i <= k; ++i) grid.push_back(i == k && std::abs(a + k * step - b) < 1e-9 ? b : a + i * step);
    }
    if (grid.empty()) throw InvalidInput("grid is empty");
    return grid;
}

json result_section(const std::string& file_text) { return json::parse(file_text).at("result"); }

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

EigenList channel(int q, const std::vector<double>& list, const std::optional<double>& lambda0, const char* what) {
    if (!list.empty() && lambda0) throw InvalidInput(std::string("give either --") + what + " or the matching --lambda0, not both");
    if (!list.empty()) {
        if (static_cast<int>(list.size()) != q)
            throw InvalidInput("eigen list has " + std::to_string(list.size()) + " entries but q = " + std::to_string(q));
        return EigenList(list);
    }
    if (lambda0) return EigenList::one_parameter(q, *lambda0);
    throw InvalidInput(std::string("missing channel: pass --") + what + " or --lambda0");
}

class Session {
public:
    Session(const RunConfig& cfg, std::ostream& out, std::ostream& err)
        : cfg_(cfg), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {}

    std::ostream& err() { return err_; }

    json meta() const {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return {{"tool", kToolName}, {"version", kToolVersion}, {"config", to_json(cfg_)}, {"wall_time_s", wall}};
    }

    void emit_csv(io::CsvTable table, const std::string& path) {
        const json m = meta();
        std::vector<std::string> header = {std::string(kToolName) + " " + kToolVersion,
                                           "config: " + m["config"].dump(),
                                           "wall_time_s: " + io::format_double(m["wall_time_s"].get<double>())};
        header.insert(header.end(), table.comments.begin(), table.comments.end());
        table.comments = std::move(header);
        write(path, [&](std::ostream& os) { io::write_csv(os, table); });
    }

    void emit_json(json result, const std::string& path) {
        json doc = {{"meta", meta()}, {"result", std::move(result)}};
        write(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    }

    void emit(const io::CsvTable& table, json result) {
        if (cfg_.format == "csv")
            emit_csv(table, cfg_.output);
        else
            emit_json(std::move(result), cfg_.output);
    }

private:
    template <class F>
    void write(const std::string& path, F&& body) {
        if (path.empty()) {
            body(out_);
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw InvalidInput("cannot open output file '" + path + "'");
        body(f);
        if (!f) throw Error("failed writing '" + path + "'");
    }

    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostream& err_;
    std::chrono::steady_clock::time_point start_;
};

void validate(RunConfig& c) {
    if (c.q == 0 && !c.eigenlist.empty()) c.q = static_cast<int>(c.eigenlist.size());
    if (c.q == 0) throw InvalidInput("--q is required unless --eigenlist is given");
    if (c.q < 2) throw InvalidInput("--q must be at least 2");
    if (c.lambda0 && !(*c.lambda0 >= 0 && *c.lambda0 <= c.q)) throw InvalidInput("--lambda0 must lie in [0, q]");
    if (c.lambda0_2 && !(*c.lambda0_2 >= 0 && *c.lambda0_2 <= c.q)) throw InvalidInput("--lambda0-2 must lie in [0, q]");
    for (int n : c.n)
        if (n < 0 || n > 30) throw InvalidInput("--n must lie in [0, 30]");
    if (c.n.empty()) throw InvalidInput("--n needs at least one value");
    if (c.bag_size < 1) throw InvalidInput("--M must be positive");
    if (c.max_iterations < 1) throw InvalidInput("--T must be positive");
    if (!(c.epsilon >= 0)) throw InvalidInput("--epsilon must be non-negative");
    if (!(c.delta > 0)) throw InvalidInput("--delta must be positive");
    if (!(c.tol > 0)) throw InvalidInput("--tol must be positive");
    if (c.dv < 2 || c.dc < 2) throw InvalidInput("--dv and --dc must be at least 2");
    if (c.pairs < 1) throw InvalidInput("--pairs must be positive");
    if (c.threads < 0) throw InvalidInput("--threads must be positive");
}

void cmd_channel_info(const RunConfig& c, Session& s) {
    const EigenList lam = channel(c.q, c.eigenlist, c.lambda0, "eigenlist");
    const double f = channel_fidelity(lam);
    const auto [lo, hi] = fidelity_holevo_bounds(lam);
    json r = {{"q", c.q},
              {"eigenlist", io::to_json(lam)},
              {"gram", io::to_json(eigen_to_gram(lam))},
              {"holevo_nats", holevo_information(lam)},
              {"holevo_qits", holevo_information(lam, LogBase::q)},
              {"fidelity", f},
              {"pgm_error", pgm_error(lam)},
              {"fidelity_bounds", {{"lower", lo}, {"upper", hi}}}};
    io::CsvTable t;
    t.columns = {"q", "holevo_qits", "fidelity", "pgm_error", "fidelity_lower", "fidelity_upper"};
    t.rows.push_back({std::to_string(c.q), io::format_double(r["holevo_qits"]), io::format_double(f),
                      io::format_double(r["pgm_error"]), io::format_double(lo), io::format_double(hi)});
    s.emit(t, std::move(r));
}

void cmd_combine(const RunConfig& c, Session& s) {
    const EigenList a = channel(c.q, c.eigenlist, c.lambda0, "eigenlist");
    const EigenList b = c.eigenlist2.empty() && !c.lambda0_2 ? a : channel(c.q, c.eigenlist2, c.lambda0_2, "eigenlist2");
    const auto branches = check_combine_branches(a, b);
    const EigenList bit = bit_combine(a, b);
    json r = {{"inputs", {io::to_json(a), io::to_json(b)}},
              {"check", io::to_json(branches)},
              {"bit", io::to_json(bit)},
              {"fidelity", io::to_json(fidelity_bound_check(a, b))}};
    io::CsvTable t;
    t.columns = {"node", "m", "prob"};
    for (int j = 0; j < c.q; ++j) t.columns.push_back("lambda_" + std::to_string(j));
    auto add = [&](const std::string& node, const std::string& m, double p, const EigenList& l) {
        std::vector<std::string> cells{node, m, io::format_double(p)};
        for (int j = 0; j < l.q(); ++j) cells.push_back(io::format_double(l[j]));
        t.rows.push_back(std::move(cells));
    };
    for (const auto& br : branches) add("check", std::to_string(br.m), br.prob, br.lam);
    add("bit", "", 1.0, bit);
    s.emit(t, std::move(r));
}

void cmd_polar_design(const RunConfig& c, Session& s) {
    if (c.n.size() != 1) throw InvalidInput("polar-design takes a single --n");
    const EigenList lam = channel(c.q, c.eigenlist, c.lambda0, "eigenlist");
    const PolarDesignResult res = polar_design(lam, c.n.front(), c.bag_size, c.epsilon, c.seed);
    const auto ranks = normalized_rank(res.per_channel_error);
    if (res.empty_design()) s.err() << "note: empty design, even the best channel exceeds the error budget\n";
    json r = io::to_json(res);
    r["holevo_qits"] = holevo_information(lam, LogBase::q);
    s.emit(io::rank_table(ranks), std::move(r));
    if (!c.rank_out.empty()) s.emit_csv(io::rank_table(ranks), c.rank_out);
    if (!c.rank_figure_out.empty()) {
        io::CsvTable fig = io::rank_figure(ranks);
        fig.comments.push_back("curve: n=" + std::to_string(c.n.front()));
        s.emit_csv(std::move(fig), c.rank_figure_out);
    }
}

void cmd_polar_sweep(const RunConfig& c, Session& s) {
    const auto grid = parse_grid(c.grid.empty() ? "1:" + std::to_string(c.q) + ":0.2" : c.grid);
    std::vector<SweepRow> rows;
    for (int n : c.n) {
        const auto part = rate_vs_lambda0_sweep(c.q, n, c.epsilon, grid, c.bag_size, c.seed);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    json r = json::array();
    for (const auto& row : rows)
        r.push_back({{"lambda0", row.lambda0},
                     {"design_rate", row.design_rate},
                     {"holevo_qits", row.holevo_qits},
                     {"n", row.n},
                     {"M", row.bag_size},
                     {"seed", row.seed},
                     {"epsilon", row.epsilon}});
    s.emit(io::sweep_table(rows), std::move(r));
    if (!c.figure_dir.empty()) {
        std::filesystem::create_directories(c.figure_dir);
        for (int n : c.n)
            s.emit_csv(io::polar_rate_figure(rows, n),
                       (std::filesystem::path(c.figure_dir) / ("polar_rate_n" + std::to_string(n) + ".csv")).string());
    }
}

LdpcParams ldpc_params(const RunConfig& c) {
    LdpcParams p;
    p.dv = c.dv;
    p.dc = c.dc;
    p.bag_size = c.bag_size;
    p.max_iterations = c.max_iterations;
    p.delta = c.delta;
    p.seed = c.seed;
    return p;
}

void cmd_ldpc_run(const RunConfig& c, Session& s) {
    const EigenList lam = channel(c.q, c.eigenlist, c.lambda0, "eigenlist");
    const LdpcDERun run = ldpc_de_run(lam, ldpc_params(c));
    s.emit(io::ldpc_trajectory_table(run), io::to_json(run));
}

void cmd_ldpc_threshold(const RunConfig& c, Session& s) {
    const LdpcParams p = ldpc_params(c);
    const ThresholdResult res = threshold_bisect(c.q, p, c.tol);
    json r = io::to_json(res);
    r["holevo_limit_lambda0"] = holevo_limit_lambda0(c.dv, c.dc, c.q);
    io::CsvTable t;
    t.columns = {"lambda0", "converged", "final_error", "iterations"};
    for (const auto& st : res.path)
        t.rows.push_back({io::format_double(st.lambda0), st.converged ? "1" : "0", io::format_double(st.final_error),
                          std::to_string(st.iterations)});
    s.emit(t, std::move(r));
    if (!c.curve_out.empty()) {
        const auto grid = parse_grid(c.grid.empty() ? "1:" + std::to_string(c.q) + ":0.1" : c.grid);
        s.emit_csv(io::ldpc_curve_figure(ldpc_error_curve(c.q, p, grid)), c.curve_out);
    }
}

int cmd_verify(const RunConfig& c, Session& s, std::ostream& out) {
    if (c.q > kMaxUnitaryQ) throw GuardViolation("verify builds dense unitaries; q must be at most 7");
    std::vector<SuiteResult> rows = oracle_equivalence_suite(c.q, c.pairs, c.seed);
    for (auto& r : unitary_contract_suite(c.q, c.pairs, c.seed)) rows.push_back(std::move(r));
    rows.push_back(conservation_suite(c.q, 20 * c.pairs, c.seed));
    rows.push_back(chain_rule_suite(c.q, c.pairs, c.seed));
    for (auto& r : fidelity_suite(c.q, c.pairs, c.seed)) rows.push_back(std::move(r));

    std::ostringstream table;
    table << std::left << std::setw(38) << "check" << std::right << std::setw(8) << "cases" << std::setw(13)
          << "max_defect" << std::setw(11) << "tolerance" << "  status\n";
    for (const auto& r : rows)
        table << std::left << std::setw(38) << r.name << std::right << std::setw(8) << r.cases << std::setw(13)
              << std::scientific << std::setprecision(3) << r.max_defect << std::setw(11) << std::setprecision(0)
              << r.tolerance << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
    out << table.str();

    if (!c.output.empty()) {
        io::CsvTable t;
        t.columns = {"check", "q", "cases", "max_defect", "tolerance", "passed"};
        for (const auto& r : rows)
            t.rows.push_back({r.name, std::to_string(r.q), std::to_string(r.cases), io::format_double(r.max_defect),
                              io::format_double(r.tolerance), r.passed() ? "1" : "0"});
        s.emit_csv(std::move(t), c.output);
    }
    return all_passed(rows) ? exit_ok : exit_failure;
}

void add_channel_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--q", c.q, "Alphabet size (inferred from --eigenlist when omitted)");
    sub->add_option("--eigenlist", c.eigenlist, "Gram eigen list, comma separated, summing to q")->delimiter(',');
    sub->add_option("--lambda0", c.lambda0, "One-parameter channel [l0, (q-l0)/(q-1), ...]");
}

void add_common_options(CLI::App* sub, RunConfig& c, const std::string& default_format) {
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    sub->add_option("--output,-o", c.output, "Write the result to this file instead of stdout");
    sub->add_option("--format", c.format, "Output format (default " + default_format + ")")
        ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Classical simulation of belief propagation with quantum messages on symmetric q-ary pure-state channels"};
    app.name(kToolName);
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.add_option("--threads", c.threads, "Worker threads (default: $BPQM_THREADS or 1)")->envname("BPQM_THREADS");

    auto* info = app.add_subcommand("channel-info", "Holevo information, fidelity and PGM error of one channel");
    add_channel_options(info, c);
    add_common_options(info, c, "json");

    auto* comb = app.add_subcommand("combine", "Check- and bit-node combination of two channels");
    add_channel_options(comb, c);
    comb->add_option("--eigenlist2", c.eigenlist2, "Second input eigen list (default: same as the first)")->delimiter(',');
    comb->add_option("--lambda0-2", c.lambda0_2, "Second input as a one-parameter channel");
    add_common_options(comb, c, "json");

    auto* pdes = app.add_subcommand("polar-design", "Polar code design by Monte-Carlo density evolution");
    add_channel_options(pdes, c);
    pdes->add_option("--n", c.n, "Polarization depth, block length 2^n")->expected(1)->capture_default_str();
    pdes->add_option("--M", c.bag_size, "Bag size")->capture_default_str();
    pdes->add_option("--epsilon,--eps", c.epsilon, "Block error budget")->capture_default_str();
    pdes->add_option("--rank-out", c.rank_out, "Also write the per-channel dump index,rank,mean_pgm_error");
    pdes->add_option("--rank-figure", c.rank_figure_out, "Write the normalized-rank curve rank_over_N,mean_error");
    add_common_options(pdes, c, "json");

    auto* psw = app.add_subcommand("polar-sweep", "Design rate against lambda0 for one or more depths");
    psw->add_option("--q", c.q, "Alphabet size")->required();
    psw->add_option("--n", c.n, "Polarization depths, comma separated")->delimiter(',')->capture_default_str();
    psw->add_option("--M", c.bag_size, "Bag size")->capture_default_str();
    psw->add_option("--epsilon,--eps", c.epsilon, "Block error budget")->capture_default_str();
    psw->add_option("--grid", c.grid, "lambda0 grid, start:stop:step or a comma list (default 1:q:0.2)");
    psw->add_option("--figure-dir", c.figure_dir, "Write one lambda0,rate,holevo file per depth here");
    add_common_options(psw, c, "csv");

    auto* lrun = app.add_subcommand("ldpc-run", "Density evolution for a regular LDPC ensemble");
    add_channel_options(lrun, c);
    for (auto* sub : {lrun}) {
        sub->add_option("--dv", c.dv, "Variable node degree")->capture_default_str();
        sub->add_option("--dc", c.dc, "Check node degree")->capture_default_str();
    }
    lrun->add_option("--M", c.bag_size, "Bag size")->capture_default_str();
    lrun->add_option("--T", c.max_iterations, "Maximum iterations")->capture_default_str();
    lrun->add_option("--delta", c.delta, "Convergence threshold on mean PGM error")->capture_default_str();
    add_common_options(lrun, c, "csv");

    auto* lthr = app.add_subcommand("ldpc-threshold", "Bisect the lambda0 threshold of a regular LDPC ensemble");
    lthr->add_option("--q", c.q, "Alphabet size")->required();
    lthr->add_option("--dv", c.dv, "Variable node degree")->capture_default_str();
    lthr->add_option("--dc", c.dc, "Check node degree")->capture_default_str();
    lthr->add_option("--M", c.bag_size, "Bag size")->capture_default_str();
    lthr->add_option("--T", c.max_iterations, "Maximum iterations")->capture_default_str();
    lthr->add_option("--delta", c.delta, "Convergence threshold on mean PGM error")->capture_default_str();
    lthr->add_option("--tol", c.tol, "Final bracket width")->capture_default_str();
    lthr->add_option("--curve-out", c.curve_out, "Also write lambda0,final_error over --grid");
    lthr->add_option("--grid", c.grid, "lambda0 grid for --curve-out (default 1:q:0.1)");
    add_common_options(lthr, c, "json");

    auto* ver = app.add_subcommand("verify", "Run the oracle and unitary verification suites");
    ver->add_option("--q", c.q, "Alphabet size, at most 7")->required();
    ver->add_option("--pairs", c.pairs, "Random eigen-list pairs per check")->capture_default_str();
    ver->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    ver->add_option("--output,-o", c.output, "Also write the table as CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.format.empty())
        c.format = c.command == "polar-sweep" || c.command == "ldpc-run" || c.command == "verify" ? "csv" : "json";

    try {
        validate(c);
        if (c.threads > 0) set_thread_count(c.threads);
        if (!is_prime(c.q))
            err << "warning: q = " << c.q << " is composite; polarization theory assumes a prime alphabet\n";
        Session s(c, out, err);
        if (c.command == "channel-info") cmd_channel_info(c, s);
        if (c.command == "combine") cmd_combine(c, s);
        if (c.command == "polar-design") cmd_polar_design(c, s);
        if (c.command == "polar-sweep") cmd_polar_sweep(c, s);
        if (c.command == "ldpc-run") cmd_ldpc_run(c, s);
        if (c.command == "ldpc-threshold") cmd_ldpc_threshold(c, s);
        if (c.command == "verify") return cmd_verify(c, s, out);
        return exit_ok;
    } catch (const InvalidInput& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const GuardViolation& e) {
        err << "resource guard: " << e.what() << '\n';
        return exit_guard;
    } catch (const NoTransition& e) {
        err << "no transition: " << e.what() << '\n';
        return exit_no_transition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace bpqm::cli
