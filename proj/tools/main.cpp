// cointkit command line: unit-root, cointegration, VECM, FEVD and
// descriptive-statistics reports from annual CSV data, plus a synthetic-DGP
// generator for validation runs.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cointkit/csv.hpp"
#include "cointkit/pipeline.hpp"
#include "cointkit/simulate.hpp"

namespace {

using namespace cointkit;

constexpr int kExitOk = 0;
constexpr int kExitDataError = 2;
constexpr int kExitNumericalError = 3;

struct CommonFlags {
    std::string config_path;
    std::string data;
    std::string variables;
    std::string case_name;
    std::string target;
    std::string ordering;
    std::string level;
    std::string periods;
    std::string format;  // empty: config value (default text)
    std::string out;
    std::string adf_deterministic;
    std::string adf_criterion;
    std::vector<std::string> transforms;
    int lags = -1;
    int rank = -2;  // -2: not set, -1: auto
    int horizon = -1;
    int lm_lags = -1;
    int adf_max_lags = -2;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Key-value config file; flags override it");
    cmd->add_option("--data", flags.data, "Input CSV (year column first)");
    cmd->add_option("--variables", flags.variables, "Comma-separated variable list");
    cmd->add_option("--transform", flags.transforms,
                    "Per-variable transform VAR=SPEC, e.g. M2=percent-growth");
    cmd->add_option("--case", flags.case_name, "Deterministic case: case2, case3 or case4");
    cmd->add_option("--lags", flags.lags, "Lagged differences in the VECM");
    cmd->add_option("--rank", flags.rank, "Cointegration rank (-1 = auto)");
    cmd->add_option("--horizon", flags.horizon, "FEVD horizon");
    cmd->add_option("--ordering", flags.ordering, "Cholesky ordering, comma separated");
    cmd->add_option("--target", flags.target, "Target variable");
    cmd->add_option("--level", flags.level, "Significance level: 0.01, 0.05 or 0.10");
    cmd->add_option("--periods", flags.periods, "Breakpoints, e.g. 1976-1990,1991-2001");
    cmd->add_option("--lm-lags", flags.lm_lags, "Lag order of the serial-correlation LM test");
    cmd->add_option("--adf-deterministic", flags.adf_deterministic,
                    "ADF deterministic terms: none, constant, constant+trend");
    cmd->add_option("--adf-criterion", flags.adf_criterion, "ADF lag criterion: aic, sc, fixed(n)");
    cmd->add_option("--adf-max-lags", flags.adf_max_lags, "ADF maximum lag order");
    cmd->add_option("--format", flags.format, "Output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--out", flags.out, "Write the report to a file instead of stdout");
}

PipelineConfig build_config(const CommonFlags& flags) {
    PipelineConfig config;
    if (!flags.config_path.empty()) config = PipelineConfig::from_file(flags.config_path);
    if (!flags.data.empty()) config.set("data", flags.data);
    if (!flags.variables.empty()) config.set("variables", flags.variables);
    for (const auto& t : flags.transforms) {
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(errc::bad_spec, "--transform expects VAR=SPEC, got " + t);
        config.set("transform." + t.substr(0, eq), t.substr(eq + 1));
    }
    if (!flags.case_name.empty()) config.set("case", flags.case_name);
    if (flags.lags >= 0) config.set("lags", std::to_string(flags.lags));
    if (flags.rank >= -1) config.rank = flags.rank;
    if (flags.horizon >= 1) config.set("horizon", std::to_string(flags.horizon));
    if (!flags.ordering.empty()) config.set("ordering", flags.ordering);
    if (!flags.target.empty()) config.set("target", flags.target);
    if (!flags.level.empty()) config.set("level", flags.level);
    if (!flags.periods.empty()) config.set("periods", flags.periods);
    if (flags.lm_lags >= 1) config.set("lm_lags", std::to_string(flags.lm_lags));
    if (!flags.adf_deterministic.empty()) config.set("adf.deterministic", flags.adf_deterministic);
    if (!flags.adf_criterion.empty()) config.set("adf.criterion", flags.adf_criterion);
    if (flags.adf_max_lags >= -1) config.set("adf.max_lags", std::to_string(flags.adf_max_lags));
    if (!flags.format.empty()) config.set("format", flags.format);
    if (!flags.out.empty()) config.set("out", flags.out);
    return config;
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(errc::file_not_found, "cannot open " + out_path + " for writing");
    out << content;
}

int run_report(const CommonFlags& flags, Section section) {
    PipelineConfig config = build_config(flags);
    Panel panel = load_dataset(config);
    AnalysisReport report = run_section(config, panel, section);
    write_output(emit_report(report, config.output_format), config.out_path);
    return kExitOk;
}

struct SimulateFlags {
    std::string dgp = "rank1";
    int n = 500;
    int k = 5;
    std::uint64_t seed = 42;
    std::string out;
    std::string names;
    std::string alpha;
    std::string beta;
    double phi = 0.5;
    double noise_sd = 1.0;
    int start_year = 1900;
};

// "1,-1" is a single column; ';' separates the columns of a rank-r matrix,
// e.g. "1,-1,0;0,1,-1".
Eigen::MatrixXd parse_matrix(const std::string& text, const std::string& what) {
    std::vector<std::vector<double>> columns;
    std::size_t col_pos = 0;
    while (col_pos <= text.size()) {
        auto col_end = text.find(';', col_pos);
        if (col_end == std::string::npos) col_end = text.size();
        std::string column_text = text.substr(col_pos, col_end - col_pos);

        std::vector<double> values;
        std::size_t pos = 0;
        while (pos <= column_text.size()) {
            auto next = column_text.find(',', pos);
            if (next == std::string::npos) next = column_text.size();
            std::string item = column_text.substr(pos, next - pos);
            if (!item.empty()) {
                try {
                    values.push_back(std::stod(item));
                } catch (const std::exception&) {
                    throw Error(errc::bad_spec, what + ": cannot parse '" + item + "'");
                }
            }
            pos = next + 1;
        }
        if (!values.empty()) columns.push_back(std::move(values));
        col_pos = col_end + 1;
    }
    if (columns.empty()) throw Error(errc::bad_spec, what + " is empty");
    for (const auto& column : columns)
        if (column.size() != columns.front().size())
            throw Error(errc::bad_spec, what + ": ragged columns");

    Eigen::MatrixXd m(static_cast<int>(columns.front().size()), static_cast<int>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < columns[j].size(); ++i)
            m(static_cast<int>(i), static_cast<int>(j)) = columns[j][i];
    return m;
}

int run_simulate(const SimulateFlags& flags) {
    DgpSpec spec;
    if (flags.dgp == "randomwalks" || flags.dgp == "rw") {
        spec = DgpSpec::random_walks(flags.k);
    } else if (flags.dgp == "stationary") {
        spec = DgpSpec::stationary(flags.k, flags.phi);
    } else if (flags.dgp == "rank1" || flags.dgp == "cointegrated") {
        Eigen::MatrixXd alpha, beta;
        if (!flags.alpha.empty() && !flags.beta.empty()) {
            alpha = parse_matrix(flags.alpha, "--alpha");
            beta = parse_matrix(flags.beta, "--beta");
        } else if (flags.alpha.empty() != flags.beta.empty()) {
            throw Error(errc::bad_spec, "--alpha and --beta must be given together");
        } else {
            // Default rank-1 system: the first variable corrects toward a
            // spread against the second; the rest are driven by own trends.
            alpha = Eigen::MatrixXd::Zero(flags.k, 1);
            beta = Eigen::MatrixXd::Zero(flags.k, 1);
            alpha(0, 0) = -0.5;
            if (flags.k > 1) alpha(1, 0) = 0.1;
            beta(0, 0) = 1.0;
            if (flags.k > 1) beta(1, 0) = -1.0;
        }
        spec = DgpSpec::cointegrated(alpha, beta);
    } else {
        throw Error(errc::bad_spec, "unknown DGP '" + flags.dgp +
                                        "' (expected rank1/cointegrated, randomwalks or stationary)");
    }
    spec.noise_sd = flags.noise_sd;
    spec.start_year = flags.start_year;
    if (!flags.names.empty()) {
        spec.names.clear();
        std::size_t pos = 0;
        while (pos <= flags.names.size()) {
            auto next = flags.names.find(',', pos);
            if (next == std::string::npos) next = flags.names.size();
            std::string item = flags.names.substr(pos, next - pos);
            if (!item.empty()) spec.names.push_back(item);
            pos = next + 1;
        }
    }

    Panel panel = simulate(spec, flags.n, flags.seed);
    if (flags.out.empty()) {
        std::cout << to_csv(panel);
    } else {
        write_csv(panel, flags.out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cointkit: cointegration and error-correction analysis of annual series"};
    app.require_subcommand(1);

    CommonFlags flags;
    SimulateFlags sim;

    std::map<std::string, Section> sections = {
        {"adf", Section::adf},   {"johansen", Section::johansen}, {"vecm", Section::vecm},
        {"fevd", Section::fevd}, {"stats", Section::stats},       {"report", Section::all},
    };
    std::map<const CLI::App*, Section> dispatch;

    for (auto& [name, section] : sections) {
        static const std::map<std::string, std::string> descriptions = {
            {"adf", "Unit-root tests and integration orders"},
            {"johansen", "Johansen cointegration rank test"},
            {"vecm", "VECM estimation with residual diagnostics"},
            {"fevd", "Forecast-error variance decomposition"},
            {"stats", "Descriptive statistics by period"},
            {"report", "Full pipeline report"},
        };
        CLI::App* cmd = app.add_subcommand(name, descriptions.at(name));
        add_common_flags(cmd, flags);
        dispatch[cmd] = section;
    }

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic CSV dataset");
    simulate_cmd->add_option("--dgp", sim.dgp,
                             "rank1/cointegrated, randomwalks or stationary");
    simulate_cmd->add_option("--n", sim.n, "Number of observations");
    simulate_cmd->add_option("--k", sim.k, "Number of variables");
    simulate_cmd->add_option("--seed", sim.seed, "RNG seed");
    simulate_cmd->add_option("--out", sim.out, "Output CSV path (stdout when omitted)");
    simulate_cmd->add_option("--names", sim.names, "Comma-separated variable names");
    simulate_cmd->add_option("--alpha", sim.alpha, "Loadings for the rank1 DGP, comma separated");
    simulate_cmd->add_option("--beta", sim.beta, "Cointegrating vector for the rank1 DGP");
    simulate_cmd->add_option("--phi", sim.phi, "AR coefficient of the stationary DGP");
    simulate_cmd->add_option("--noise-sd", sim.noise_sd, "Innovation standard deviation");
    simulate_cmd->add_option("--start-year", sim.start_year, "First calendar year");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) return run_simulate(sim);
        for (auto& [cmd, section] : dispatch)
            if (cmd->parsed()) return run_report(flags, section);
        std::cerr << "no subcommand selected\n";
        return kExitDataError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_numerical(e.code()) ? kExitNumericalError : kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}
