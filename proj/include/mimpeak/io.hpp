#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimpeak/bench.hpp"

namespace mimpeak {

inline constexpr std::string_view kVersion = "0.1.0";

const char* method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Comma-separated lists from config/flags. Throw ConfigError on bad items.
std::vector<double> parse_double_list(const std::string& text);
std::vector<Method> parse_method_list(const std::string& text);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

/// Load a two-column `x,y` CSV spectrum. Positions must be strictly
/// increasing and uniform (relative spacing deviation <= 1e-6), with at
/// least 3 samples. Throws ParseError otherwise.
Spectrum load_spectrum_csv(const std::filesystem::path& path);

/// Results table, one row per cell. Fixed column order:
/// estimator,rate,sigma_n,snr_db,threshold_multiplier,trials,n_ok,bias,std,
/// mean_iterations,oscillation_rate
std::string results_csv(const ExperimentSpec& spec, const std::vector<TrialStats>& rows);

/// Everything needed to reproduce a result file: the resolved experiment,
/// tool version, timestamp and output path. Serialized as flat key=value
/// text whose keys match the CLI flags, so a manifest can be fed back via
/// --config.
struct RunManifest {
    std::string command; // "snr-sweep", "rate-sweep" or "threshold-sweep"
    ExperimentSpec spec;
    std::string version{kVersion};
    std::string timestamp; // ISO-8601 UTC
    std::string output;
};

std::string now_iso8601_utc();
std::string manifest_text(const RunManifest& manifest);

/// Throws ConfigError when the path cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace mimpeak
