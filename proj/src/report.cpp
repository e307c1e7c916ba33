#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cointkit/csv.hpp"
#include "cointkit/pipeline.hpp"

namespace cointkit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int decimals) {
    if (std::isnan(value)) return "NA";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    return buffer;
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string hypothesis_label(int r) {
    return r == 0 ? std::string("None") : "At most " + std::to_string(r);
}

const char* trend_assumption(DetCase c) {
    switch (c) {
        case DetCase::restricted_constant: return "No deterministic trend (restricted constant)";
        case DetCase::unrestricted_constant: return "Linear deterministic trend";
        case DetCase::restricted_trend: return "Linear deterministic trend (restricted)";
    }
    return "";
}

double json_safe(double v) { return v; }

void rank_table(std::ostream& out, const char* title, const std::vector<double>& eigenvalues,
                const std::vector<double>& stats, const std::vector<double>& cvs,
                const char* stat_header, int selected, const char* test_name) {
    out << "Unrestricted Cointegration Rank Test (" << title << ")\n";
    out << pad_right("Hypothesized No. of CE(s)", 28) << pad_left("Eigenvalue", 12)
        << pad_left(stat_header, 22) << pad_left("0.05 Critical Value", 22) << "\n";
    for (std::size_t r = 0; r < stats.size(); ++r) {
        std::string label = hypothesis_label(static_cast<int>(r));
        if (stats[r] > cvs[r]) label += " *";
        out << pad_right(label, 28) << pad_left(fixed(eigenvalues[r], 6), 12)
            << pad_left(fixed(stats[r], 5), 22) << pad_left(fixed(cvs[r], 5), 22) << "\n";
    }
    out << test_name << " test indicates " << selected
        << " cointegrating eqn(s) at the 0.05 level\n";
    out << " * denotes rejection of the hypothesis at the 0.05 level\n";
}

void adf_text(std::ostream& out, const AnalysisReport& report) {
    const auto& rows = *report.adf;
    out << "Augmented Dickey-Fuller unit-root tests (5% decisions at level "
        << fixed(report.significance, 2) << ")\n";
    out << pad_right("Variable", 12) << pad_left("Level t-stat", 14) << pad_left("5% CV", 10)
        << pad_left("Lags", 6) << pad_left("Diff t-stat", 14) << pad_left("5% CV", 10)
        << pad_left("Lags", 6) << pad_left("Order", 14) << "\n";
    for (const auto& row : rows) {
        const auto& io = row.classification;
        out << pad_right(row.name, 12) << pad_left(fixed(io.level_result.t_statistic, 4), 14)
            << pad_left(fixed(io.level_result.critical_value(0.05), 4), 10)
            << pad_left(std::to_string(io.level_result.chosen_lags), 6)
            << pad_left(fixed(io.diff_result.t_statistic, 4), 14)
            << pad_left(fixed(io.diff_result.critical_value(0.05), 4), 10)
            << pad_left(std::to_string(io.diff_result.chosen_lags), 6)
            << pad_left(to_string(io.order), 14) << "\n";
    }
}

void johansen_text(std::ostream& out, const AnalysisReport& report) {
    const auto& j = *report.johansen;
    out << "Sample (adjusted): " << j.sample_first_year << " " << j.sample_last_year << "\n";
    out << "Trend assumption: " << trend_assumption(j.det_case) << "\n";
    out << "Series: " << join(j.series_names, " ") << "\n";
    out << "Lags interval (in first differences): 1 to " << j.lags_diff << "\n\n";
    rank_table(out, "Maximum Eigenvalue", j.eigenvalues, j.max_stats, j.critical_values_max_5pct,
               "Max-Eigen Statistic", j.selected_rank_max, "Max-eigenvalue");
    out << "\n";
    rank_table(out, "Trace", j.eigenvalues, j.trace_stats, j.critical_values_trace_5pct,
               "Trace Statistic", j.selected_rank_trace, "Trace");
}

void vecm_text(std::ostream& out, const AnalysisReport& report) {
    out << "Vector Error Correction Estimates\n";
    out << "Target equation: d(" << report.target << ")\n";
    out << "Cointegration rank: " << report.resolved_rank << ", lagged differences: "
        << report.lags_diff << "\n\n";

    if (report.vecm_view) {
        const auto& view = *report.vecm_view;
        auto line = [&](const std::string& name, double coef, double t) {
            out << "  " << pad_right(name, 16) << pad_left(fixed(coef, 6), 12) << "  ("
                << fixed(t, 4) << ")\n";
        };
        out << "Error correction term:\n";
        line(report.target, view.loading, view.loading_t);
        out << "Long run:\n";
        for (const auto& term : view.long_run) line(term.name, term.coefficient, term.t_stat);
        out << "Short run:\n";
        for (const auto& term : view.short_run) line(term.name, term.coefficient, term.t_stat);
        if (report.speed)
            out << "Absorption horizon: 1/|" << fixed(std::fabs(view.loading), 4) << "| = "
                << fixed(report.speed->absorption_horizon, 3) << " periods\n";
        out << "\nR-squared " << fixed(view.r_squared, 4) << "; Adj. R-squared "
            << fixed(view.adj_r_squared, 4) << "; F-statistic " << fixed(view.f_stat, 4) << "\n";
    }
    if (report.lm && report.white && report.jb) {
        out << "LM stat = " << fixed(report.lm->statistic, 4) << " (Prob: "
            << fixed(report.lm->p_value, 4) << ", df " << report.lm->df << "); ";
        out << "White test (Chi-sq) = " << fixed(report.white->statistic, 4) << " (Prob: "
            << fixed(report.white->p_value, 4) << ", df " << report.white->df << "); ";
        out << "JB = " << fixed(report.jb->statistic, 4) << " (Prob: "
            << fixed(report.jb->p_value, 4) << ", df " << report.jb->df << ")\n";
    }
}

void fevd_text(std::ostream& out, const AnalysisReport& report) {
    const auto& table = *report.fevd;
    out << "Variance Decomposition of " << table.target << ":\n";
    out << pad_left("Period", 8) << pad_left("S.E.", 12);
    for (const auto& name : table.ordering) out << pad_left(name, 12);
    out << "\n";
    for (std::size_t h = 0; h < table.se.size(); ++h) {
        out << pad_left(std::to_string(h + 1), 8) << pad_left(fixed(table.se[h], 6), 12);
        for (int m = 0; m < table.shares.cols(); ++m)
            out << pad_left(fixed(table.shares(static_cast<int>(h), m), 4), 12);
        out << "\n";
    }
    out << "Cholesky Ordering: " << join(table.ordering, " ") << "\n";
}

void stats_text(std::ostream& out, const AnalysisReport& report) {
    out << "Descriptive statistics by period\n";
    for (const auto& block : *report.stats) {
        out << "Variable: " << block.variable << "\n";
        out << pad_right("", 10);
        for (const auto& p : block.periods) out << pad_left(p.period, 14);
        out << "\n";
        auto row = [&](const char* name, auto getter) {
            out << pad_right(name, 10);
            for (const auto& p : block.periods) out << pad_left(fixed(getter(p), 4), 14);
            out << "\n";
        };
        row("mean", [](const PeriodStats& p) { return p.mean; });
        row("median", [](const PeriodStats& p) { return p.median; });
        row("maximum", [](const PeriodStats& p) { return p.max; });
        row("minimum", [](const PeriodStats& p) { return p.min; });
    }
}

}  // namespace

std::string emit_text(const AnalysisReport& report) {
    std::ostringstream out;
    bool first = true;
    auto separator = [&] {
        if (!first) out << "\n";
        first = false;
    };

    if (report.adf) {
        separator();
        adf_text(out, report);
    }
    if (report.johansen) {
        separator();
        johansen_text(out, report);
    }
    if (report.vecm_view || report.lm) {
        separator();
        vecm_text(out, report);
    }
    if (report.fevd) {
        separator();
        fevd_text(out, report);
    }
    if (report.stats) {
        separator();
        stats_text(out, report);
    }
    if (!report.warnings.empty()) {
        separator();
        out << "Warnings:\n";
        for (const auto& w : report.warnings) out << "  - " << w << "\n";
    }
    return out.str();
}

std::string emit_csv(const AnalysisReport& report) {
    std::ostringstream out;
    out << "section,item,field,value\n";
    auto cell = [](const std::string& value) {
        if (value.find_first_of(",\"\n") == std::string::npos) return value;
        std::string quoted = "\"";
        for (char c : value) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    };
    auto row = [&](const std::string& section, const std::string& item, const std::string& field,
                   const std::string& value) {
        out << cell(section) << "," << cell(item) << "," << cell(field) << "," << cell(value)
            << "\n";
    };
    auto num = [&](const std::string& section, const std::string& item, const std::string& field,
                   double value) { row(section, item, field, format_double(value)); };

    row("meta", "config", "variables", join(report.variables, " "));
    row("meta", "config", "target", report.target);
    row("meta", "config", "case", to_string(report.det_case));
    num("meta", "config", "lags", report.lags_diff);
    num("meta", "config", "level", report.significance);

    if (report.adf) {
        for (const auto& r : *report.adf) {
            const auto& io = r.classification;
            num("adf", r.name, "level_t", io.level_result.t_statistic);
            num("adf", r.name, "level_cv_5pct", io.level_result.critical_value(0.05));
            num("adf", r.name, "level_lags", io.level_result.chosen_lags);
            num("adf", r.name, "diff_t", io.diff_result.t_statistic);
            num("adf", r.name, "diff_cv_5pct", io.diff_result.critical_value(0.05));
            num("adf", r.name, "diff_lags", io.diff_result.chosen_lags);
            row("adf", r.name, "order", to_string(io.order));
        }
    }
    if (report.johansen) {
        const auto& j = *report.johansen;
        for (std::size_t r = 0; r < j.eigenvalues.size(); ++r) {
            std::string item = "r=" + std::to_string(r);
            num("johansen", item, "eigenvalue", j.eigenvalues[r]);
            num("johansen", item, "max_stat", j.max_stats[r]);
            num("johansen", item, "max_cv_5pct", j.critical_values_max_5pct[r]);
            num("johansen", item, "trace_stat", j.trace_stats[r]);
            num("johansen", item, "trace_cv_5pct", j.critical_values_trace_5pct[r]);
        }
        num("johansen", "summary", "selected_rank_max", j.selected_rank_max);
        num("johansen", "summary", "selected_rank_trace", j.selected_rank_trace);
        num("johansen", "summary", "t_effective", j.t_effective);
        num("johansen", "summary", "sample_first_year", j.sample_first_year);
        num("johansen", "summary", "sample_last_year", j.sample_last_year);
    }
    if (report.vecm_view) {
        const auto& view = *report.vecm_view;
        num("vecm", "loading", "coefficient", view.loading);
        num("vecm", "loading", "t_stat", view.loading_t);
        for (const auto& term : view.long_run) {
            num("vecm", "long_run." + term.name, "coefficient", term.coefficient);
            num("vecm", "long_run." + term.name, "t_stat", term.t_stat);
        }
        for (const auto& term : view.short_run) {
            num("vecm", "short_run." + term.name, "coefficient", term.coefficient);
            num("vecm", "short_run." + term.name, "t_stat", term.t_stat);
        }
        num("vecm", "fit", "r_squared", view.r_squared);
        num("vecm", "fit", "adj_r_squared", view.adj_r_squared);
        num("vecm", "fit", "f_stat", view.f_stat);
        if (report.speed) {
            num("vecm", "adjustment", "loading", report.speed->loading);
            num("vecm", "adjustment", "absorption_horizon", report.speed->absorption_horizon);
        }
    }
    auto chisq = [&](const char* item, const ChiSqTest& test) {
        num("diagnostics", item, "statistic", test.statistic);
        num("diagnostics", item, "df", test.df);
        num("diagnostics", item, "p_value", test.p_value);
    };
    if (report.lm) chisq("lm", *report.lm);
    if (report.white) chisq("white", *report.white);
    if (report.jb) chisq("jarque_bera", *report.jb);

    if (report.fevd) {
        const auto& table = *report.fevd;
        row("fevd", "meta", "target", table.target);
        row("fevd", "meta", "ordering", join(table.ordering, " "));
        for (std::size_t h = 0; h < table.se.size(); ++h) {
            std::string item = "h=" + std::to_string(h + 1);
            num("fevd", item, "se", table.se[h]);
            for (std::size_t m = 0; m < table.ordering.size(); ++m)
                num("fevd", item, "share." + table.ordering[m],
                    table.shares(static_cast<int>(h), static_cast<int>(m)));
        }
    }
    if (report.stats) {
        for (const auto& block : *report.stats) {
            for (const auto& p : block.periods) {
                std::string item = block.variable + "." + p.period;
                num("stats", item, "mean", p.mean);
                num("stats", item, "median", p.median);
                num("stats", item, "max", p.max);
                num("stats", item, "min", p.min);
            }
        }
    }
    for (std::size_t i = 0; i < report.warnings.size(); ++i)
        row("warnings", "warning." + std::to_string(i + 1), "text", report.warnings[i]);
    return out.str();
}

std::string emit_json(const AnalysisReport& report) {
    ordered_json root;
    root["variables"] = report.variables;
    root["target"] = report.target;
    root["case"] = to_string(report.det_case);
    root["lags"] = report.lags_diff;
    root["level"] = report.significance;

    if (report.adf) {
        ordered_json section = ordered_json::array();
        for (const auto& r : *report.adf) {
            const auto& io = r.classification;
            ordered_json item;
            item["variable"] = r.name;
            item["order"] = to_string(io.order);
            auto result = [&](const AdfResult& res) {
                ordered_json j;
                j["t_statistic"] = json_safe(res.t_statistic);
                j["lags"] = res.chosen_lags;
                j["deterministic"] = to_string(res.deterministic);
                ordered_json cv;
                cv["1%"] = res.critical_value(0.01);
                cv["5%"] = res.critical_value(0.05);
                cv["10%"] = res.critical_value(0.10);
                j["critical_values"] = cv;
                j["reject_5pct"] = res.reject_unit_root(0.05);
                return j;
            };
            item["level"] = result(io.level_result);
            item["difference"] = result(io.diff_result);
            if (io.diff2_result) item["second_difference"] = result(*io.diff2_result);
            section.push_back(item);
        }
        root["adf"] = section;
    }
    if (report.johansen) {
        const auto& j = *report.johansen;
        ordered_json section;
        section["sample_first_year"] = j.sample_first_year;
        section["sample_last_year"] = j.sample_last_year;
        section["t_effective"] = j.t_effective;
        section["series"] = j.series_names;
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < j.eigenvalues.size(); ++r) {
            ordered_json item;
            item["hypothesized_rank"] = r;
            item["eigenvalue"] = j.eigenvalues[r];
            item["max_stat"] = j.max_stats[r];
            item["max_cv_5pct"] = j.critical_values_max_5pct[r];
            item["trace_stat"] = j.trace_stats[r];
            item["trace_cv_5pct"] = j.critical_values_trace_5pct[r];
            rows.push_back(item);
        }
        section["rows"] = rows;
        section["selected_rank_max"] = j.selected_rank_max;
        section["selected_rank_trace"] = j.selected_rank_trace;
        section["resolved_rank"] = report.resolved_rank;
        root["johansen"] = section;
    }
    if (report.vecm_view) {
        const auto& view = *report.vecm_view;
        ordered_json section;
        section["target"] = view.target;
        section["loading"] = view.loading;
        section["loading_t"] = view.loading_t;
        auto terms = [](const std::vector<EcmEquationView::Term>& list) {
            ordered_json arr = ordered_json::array();
            for (const auto& term : list) {
                ordered_json item;
                item["name"] = term.name;
                item["coefficient"] = term.coefficient;
                item["t_stat"] = std::isnan(term.t_stat) ? ordered_json() : ordered_json(term.t_stat);
                arr.push_back(item);
            }
            return arr;
        };
        section["long_run"] = terms(view.long_run);
        section["short_run"] = terms(view.short_run);
        section["r_squared"] = view.r_squared;
        section["adj_r_squared"] = view.adj_r_squared;
        section["f_stat"] = view.f_stat;
        if (report.speed) {
            section["absorption_horizon"] = report.speed->absorption_horizon;
        }
        root["vecm"] = section;
    }
    auto chisq = [](const ChiSqTest& test) {
        ordered_json j;
        j["name"] = test.test_name;
        j["statistic"] = test.statistic;
        j["df"] = test.df;
        j["p_value"] = test.p_value;
        return j;
    };
    if (report.lm || report.white || report.jb) {
        ordered_json section;
        if (report.lm) section["lm"] = chisq(*report.lm);
        if (report.white) section["white"] = chisq(*report.white);
        if (report.jb) section["jarque_bera"] = chisq(*report.jb);
        root["diagnostics"] = section;
    }
    if (report.fevd) {
        const auto& table = *report.fevd;
        ordered_json section;
        section["target"] = table.target;
        section["ordering"] = table.ordering;
        ordered_json rows = ordered_json::array();
        for (std::size_t h = 0; h < table.se.size(); ++h) {
            ordered_json item;
            item["period"] = h + 1;
            item["se"] = table.se[h];
            ordered_json shares;
            for (std::size_t m = 0; m < table.ordering.size(); ++m)
                shares[table.ordering[m]] = table.shares(static_cast<int>(h), static_cast<int>(m));
            item["shares"] = shares;
            rows.push_back(item);
        }
        section["rows"] = rows;
        root["fevd"] = section;
    }
    if (report.stats) {
        ordered_json section = ordered_json::array();
        for (const auto& block : *report.stats) {
            ordered_json item;
            item["variable"] = block.variable;
            ordered_json periods = ordered_json::array();
            for (const auto& p : block.periods) {
                ordered_json stats;
                stats["period"] = p.period;
                stats["mean"] = p.mean;
                stats["median"] = p.median;
                stats["max"] = p.max;
                stats["min"] = p.min;
                periods.push_back(stats);
            }
            item["periods"] = periods;
            section.push_back(item);
        }
        root["stats"] = section;
    }
    root["warnings"] = report.warnings;
    return root.dump(2) + "\n";
}

std::string emit_report(const AnalysisReport& report, const std::string& format) {
    if (format == "text") return emit_text(report);
    if (format == "csv") return emit_csv(report);
    if (format == "json") return emit_json(report);
    throw Error(errc::bad_spec, "unknown output format '" + format + "'");
}

}  // namespace cointkit
