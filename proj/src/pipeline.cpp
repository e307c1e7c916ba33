#include "cointkit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "cointkit/csv.hpp"

namespace cointkit {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) next = s.size();
        std::string item = trim(s.substr(pos, next - pos));
        if (!item.empty()) out.push_back(item);
        pos = next + 1;
    }
    return out;
}

int parse_int(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(errc::bad_spec, "config key " + key + ": cannot parse integer '" + value + "'");
    }
}

DetCase parse_case(const std::string& value) {
    if (value == "case2" || value == "restricted-constant") return DetCase::restricted_constant;
    if (value == "case3" || value == "unrestricted-constant") return DetCase::unrestricted_constant;
    if (value == "case4" || value == "restricted-trend") return DetCase::restricted_trend;
    throw Error(errc::bad_spec, "unknown deterministic case '" + value + "'");
}

std::vector<YearRange> parse_periods(const std::string& value) {
    std::vector<YearRange> out;
    for (const auto& item : split(value, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos)
            throw Error(errc::bad_spec, "period '" + item + "' must look like 1976-1990");
        YearRange r;
        r.first = parse_int(trim(item.substr(0, dash)), "periods");
        r.last = parse_int(trim(item.substr(dash + 1)), "periods");
        out.push_back(r);
    }
    return out;
}

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const PipelineError&) {
        throw;
    } catch (const Error& e) {
        throw PipelineError(name, e);
    }
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "data") {
        data_path = value;
    } else if (key == "variables") {
        variables = split(value, ',');
    } else if (key.rfind("transform.", 0) == 0) {
        transforms[key.substr(10)] = TransformSpec::parse(value);
    } else if (key == "case") {
        det_case = parse_case(value);
    } else if (key == "lags") {
        lags_diff = parse_int(value, key);
    } else if (key == "rank") {
        rank = value == "auto" ? -1 : parse_int(value, key);
    } else if (key == "horizon") {
        horizon = parse_int(value, key);
        if (horizon < 1) throw Error(errc::bad_spec, "horizon must be >= 1");
    } else if (key == "ordering") {
        ordering = split(value, ',');
    } else if (key == "target") {
        target = value;
    } else if (key == "level") {
        if (value == "0.01" || value == "1%") significance = 0.01;
        else if (value == "0.05" || value == "5%") significance = 0.05;
        else if (value == "0.10" || value == "10%") significance = 0.10;
        else throw Error(errc::bad_spec, "level must be one of 0.01, 0.05, 0.10");
    } else if (key == "periods") {
        periods = parse_periods(value);
    } else if (key == "format") {
        if (value != "text" && value != "csv" && value != "json")
            throw Error(errc::bad_spec, "format must be text, csv or json");
        output_format = value;
    } else if (key == "out") {
        out_path = value;
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "lm_lags") {
        lm_lags = parse_int(value, key);
        if (lm_lags < 1) throw Error(errc::bad_spec, "lm_lags must be >= 1");
    } else if (key == "adf.deterministic") {
        if (value == "none") adf.deterministic = Deterministic::none;
        else if (value == "constant") adf.deterministic = Deterministic::constant;
        else if (value == "constant+trend") adf.deterministic = Deterministic::constant_trend;
        else throw Error(errc::bad_spec, "adf.deterministic must be none, constant or constant+trend");
    } else if (key == "adf.max_lags") {
        adf.max_lags = parse_int(value, key);
    } else if (key == "adf.criterion") {
        if (value == "aic") adf.criterion = LagCriterion::aic;
        else if (value == "sc") adf.criterion = LagCriterion::sc;
        else if (value.rfind("fixed(", 0) == 0 && value.back() == ')') {
            adf.criterion = LagCriterion::fixed;
            adf.fixed_lags = parse_int(value.substr(6, value.size() - 7), key);
        } else {
            throw Error(errc::bad_spec, "adf.criterion must be aic, sc or fixed(n)");
        }
    } else {
        throw Error(errc::bad_spec, "unknown config key '" + key + "'");
    }
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::file_not_found, path);

    PipelineConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(errc::parse_error,
                        path + " line " + std::to_string(line_no) + ": expected key = value");
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

Panel load_dataset(const PipelineConfig& config) {
    if (config.data_path.empty()) throw Error(errc::bad_spec, "no data path configured");
    std::vector<TimeSeries> series = read_csv(config.data_path);

    std::vector<std::string> wanted = config.variables;
    if (wanted.empty())
        for (const auto& s : series) wanted.push_back(s.name);

    std::vector<TimeSeries> selected;
    selected.reserve(wanted.size());
    for (const auto& name : wanted) {
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const TimeSeries& s) { return s.name == name; });
        if (it == series.end())
            throw Error(errc::missing_column, config.data_path + " has no column " + name);
        TimeSeries s = *it;
        auto spec = config.transforms.find(name);
        if (spec != config.transforms.end()) s = transform(s, spec->second);
        selected.push_back(std::move(s));
    }
    return align(selected);
}

namespace {

void resolve_defaults(const PipelineConfig& config, const Panel& panel, AnalysisReport& report) {
    report.variables = panel.names();
    report.target = config.target.empty() ? report.variables.front() : config.target;
    report.det_case = config.det_case;
    report.lags_diff = config.lags_diff;
    report.significance = config.significance;
    if (panel.index_of(report.target) < 0)
        throw Error(errc::bad_spec, "target " + report.target + " is not among the variables");
    for (const auto& name : config.ordering)
        if (panel.index_of(name) < 0)
            throw Error(errc::bad_ordering, "ordering names unknown variable " + name);
}

std::vector<std::string> resolve_ordering(const PipelineConfig& config, const Panel& panel) {
    return config.ordering.empty() ? panel.names() : config.ordering;
}

std::vector<YearRange> resolve_periods(const PipelineConfig& config, const Panel& panel) {
    if (!config.periods.empty()) return config.periods;
    return {YearRange{panel.start_year(), panel.end_year()}};
}

void run_adf_stage(const PipelineConfig& config, const Panel& panel, AnalysisReport& report) {
    stage("stationarity", [&] {
        std::vector<AdfVariableReport> rows;
        rows.reserve(panel.columns.size());
        for (const auto& column : panel.columns) {
            AdfVariableReport row;
            row.name = column.name;
            row.classification = integration_order(column, config.adf, config.significance);
            rows.push_back(std::move(row));
        }
        report.adf = std::move(rows);
        return 0;
    });
}

void run_johansen_stage(const PipelineConfig& config, const Panel& panel, AnalysisReport& report) {
    stage("cointegration", [&] {
        report.johansen = johansen_test(panel, config.lags_diff, config.det_case);
        report.resolved_rank =
            config.rank >= 0 ? config.rank : report.johansen->selected_rank_max;
        return 0;
    });
}

VecmModel run_vecm_stage(const PipelineConfig& config, const Panel& panel, AnalysisReport& report) {
    return stage("vecm", [&] {
        if (report.resolved_rank < 0) {
            report.resolved_rank =
                config.rank >= 0
                    ? config.rank
                    : johansen_test(panel, config.lags_diff, config.det_case).selected_rank_max;
        }
        if (report.resolved_rank == 0)
            throw Error(errc::rank_out_of_range,
                        "no cointegrating relation selected; a VECM needs rank >= 1");
        VecmModel model =
            estimate_vecm(panel, config.lags_diff, report.resolved_rank, config.det_case);
        if (model.r == 1) {
            report.vecm_view = equation_view(model, report.target);
            report.speed = adjustment_speed(model, report.target);
        }
        for (auto& finding : validate_ecm(model, report.target))
            report.warnings.push_back(std::move(finding));
        return model;
    });
}

void run_diagnostics_stage(const PipelineConfig& config, const Panel& panel, const VecmModel& model,
                           AnalysisReport& report) {
    stage("diagnostics", [&] {
        report.lm = breusch_godfrey(model.residuals, model.regressors, config.lm_lags);
        report.white =
            white_test(model.residuals.col(panel.index_of(report.target)), model.regressors);
        report.jb = jarque_bera(model.residuals, true);
        for (const auto& w : report.white->warnings)
            report.warnings.push_back("White test: " + w);
        return 0;
    });
}

void run_fevd_stage(const PipelineConfig& config, const Panel& panel, const VecmModel& model,
                    AnalysisReport& report) {
    stage("fevd", [&] {
        LevelVar var = vecm_to_var(model);
        std::vector<std::string> ordering = resolve_ordering(config, panel);
        std::vector<FevdTable> tables = fevd(var, config.horizon, ordering);
        for (auto& table : tables) {
            if (table.target == report.target) {
                for (const auto& w : table.warnings) {
                    if (std::find(report.warnings.begin(), report.warnings.end(), w) ==
                        report.warnings.end())
                        report.warnings.push_back(w);
                }
                report.fevd = std::move(table);
                break;
            }
        }
        return 0;
    });
}

void run_stats_stage(const PipelineConfig& config, const Panel& panel, AnalysisReport& report) {
    stage("stats", [&] {
        std::vector<PeriodStatsBlock> blocks;
        std::vector<YearRange> periods = resolve_periods(config, panel);
        for (const auto& column : panel.columns)
            blocks.push_back({column.name, period_stats(column, periods)});
        report.stats = std::move(blocks);
        return 0;
    });
}

}  // namespace

AnalysisReport run_pipeline(const PipelineConfig& config) {
    Panel panel = stage("load", [&] { return load_dataset(config); });
    return run_pipeline(config, panel);
}

AnalysisReport run_pipeline(const PipelineConfig& config, const Panel& panel) {
    AnalysisReport report;
    resolve_defaults(config, panel, report);
    run_adf_stage(config, panel, report);
    run_johansen_stage(config, panel, report);
    VecmModel model = run_vecm_stage(config, panel, report);
    run_diagnostics_stage(config, panel, model, report);
    run_fevd_stage(config, panel, model, report);
    run_stats_stage(config, panel, report);
    return report;
}

AnalysisReport run_section(const PipelineConfig& config, const Panel& panel, Section section) {
    if (section == Section::all) return run_pipeline(config, panel);

    AnalysisReport report;
    resolve_defaults(config, panel, report);
    switch (section) {
        case Section::adf:
            run_adf_stage(config, panel, report);
            break;
        case Section::johansen:
            run_johansen_stage(config, panel, report);
            break;
        case Section::vecm: {
            VecmModel model = run_vecm_stage(config, panel, report);
            run_diagnostics_stage(config, panel, model, report);
            break;
        }
        case Section::fevd: {
            VecmModel model = run_vecm_stage(config, panel, report);
            run_fevd_stage(config, panel, model, report);
            break;
        }
        case Section::stats:
            run_stats_stage(config, panel, report);
            break;
        case Section::all:
            break;
    }
    return report;
}

}  // namespace cointkit
