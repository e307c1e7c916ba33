#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cointkit/johansen.hpp"
#include "cointkit/ols.hpp"
#include "cointkit/series.hpp"
#include "cointkit/unit_root.hpp"
#include "cointkit/var_fevd.hpp"
#include "cointkit/vecm.hpp"

namespace cointkit {

struct PipelineConfig {
    std::string data_path;
    std::vector<std::string> variables;  // empty: every CSV column, file order
    std::map<std::string, TransformSpec> transforms;
    DetCase det_case = DetCase::restricted_trend;
    int lags_diff = 1;
    int rank = -1;  // -1: resolve via the max-eigenvalue sequential test
    int horizon = 5;
    std::vector<std::string> ordering;  // empty: declared variable order
    std::string target;                 // empty: first variable
    double significance = 0.05;
    std::vector<YearRange> periods;  // empty: full sample
    std::string output_format = "text";
    std::string out_path;  // empty: stdout
    std::uint64_t seed = 42;
    AdfSpec adf;
    int lm_lags = 1;

    /// Flat key-value config file: `key = value`, `#` comments.
    static PipelineConfig from_file(const std::string& path);

    /// Apply one key; command-line flags funnel through here so they win
    /// over file values.
    void set(const std::string& key, const std::string& value);
};

struct AdfVariableReport {
    std::string name;
    IntegrationOrder classification;
};

struct PeriodStatsBlock {
    std::string variable;
    std::vector<PeriodStats> periods;
};

struct AnalysisReport {
    std::vector<std::string> variables;
    std::string target;
    DetCase det_case = DetCase::restricted_trend;
    int lags_diff = 1;
    double significance = 0.05;

    std::optional<std::vector<AdfVariableReport>> adf;
    std::optional<CointegrationResult> johansen;
    int resolved_rank = -1;
    std::optional<EcmEquationView> vecm_view;
    std::optional<AdjustmentSpeed> speed;
    std::optional<ChiSqTest> lm;
    std::optional<ChiSqTest> white;
    std::optional<ChiSqTest> jb;
    std::optional<FevdTable> fevd;
    std::optional<std::vector<PeriodStatsBlock>> stats;
    std::vector<std::string> warnings;
};

/// Error thrown by run_pipeline, naming the failing stage.
class PipelineError : public Error {
public:
    PipelineError(std::string stage, const Error& inner)
        : Error(inner.code(), "stage '" + stage + "': " + inner.what()), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// CSV -> transformed, aligned panel in the configured variable order.
Panel load_dataset(const PipelineConfig& config);

/// Full pipeline: ADF classification, Johansen test, VECM at the resolved
/// rank, residual diagnostics, FEVD and period statistics.
AnalysisReport run_pipeline(const PipelineConfig& config);
AnalysisReport run_pipeline(const PipelineConfig& config, const Panel& panel);

enum class Section { adf, johansen, vecm, fevd, stats, all };

/// Single-section run for the focused CLI subcommands.
AnalysisReport run_section(const PipelineConfig& config, const Panel& panel, Section section);

std::string emit_text(const AnalysisReport& report);
std::string emit_csv(const AnalysisReport& report);
std::string emit_json(const AnalysisReport& report);

/// Dispatch on "text", "csv" or "json".
std::string emit_report(const AnalysisReport& report, const std::string& format);

}  // namespace cointkit
