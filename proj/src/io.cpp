#include "mimpeak/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "mimpeak/errors.hpp"

namespace mimpeak {

namespace {

std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(begin, end - begin + 1));
}

double parse_number(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    double value = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(context + ": not a number: '" + t + "'");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

} // namespace

const char* method_name(Method method) {
    switch (method) {
    case Method::Centroid: return "centroid";
    case Method::Mim1: return "mim1";
    case Method::Mim2: return "mim2";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "centroid") return Method::Centroid;
    if (name == "mim1") return Method::Mim1;
    if (name == "mim2") return Method::Mim2;
    return std::nullopt;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    for (const std::string& item : split(text, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        try {
            values.push_back(parse_number(t, "list item"));
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
    }
    if (values.empty()) throw ConfigError("empty numeric list: '" + text + "'");
    return values;
}

std::vector<Method> parse_method_list(const std::string& text) {
    std::vector<Method> methods;
    for (const std::string& item : split(text, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        const auto m = parse_method(t);
        if (!m) throw ConfigError("unknown estimator '" + t + "' (expected centroid, mim1 or mim2)");
        methods.push_back(*m);
    }
    if (methods.empty()) throw ConfigError("empty estimator list: '" + text + "'");
    return methods;
}

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

Spectrum load_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open spectrum file: " + path.string());

    std::string line;
    if (!std::getline(file, line)) throw ParseError("empty spectrum file: " + path.string());
    if (trim(line) != "x,y")
        throw ParseError("bad header in " + path.string() + ": expected 'x,y', got '" +
                         trim(line) + "'");

    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t lineno = 1;
    while (std::getline(file, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected 'x,y' pair, got '" + t + "'");
        const std::string context = path.string() + ":" + std::to_string(lineno);
        xs.push_back(parse_number(t.substr(0, comma), context));
        ys.push_back(parse_number(t.substr(comma + 1), context));
    }
    if (xs.size() < 3)
        throw ParseError("too few samples in " + path.string() + ": got " +
                         std::to_string(xs.size()) + ", need at least 3");

    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw ParseError(path.string() + ": positions must be strictly increasing (row " +
                             std::to_string(i + 1) + ")");

    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double step = xs[i] - xs[i - 1];
        if (std::abs(step - dx) > 1e-6 * dx)
            throw ParseError(path.string() + ": non-uniform grid: spacing " +
                             format_double(step) + " at row " + std::to_string(i + 1) +
                             " deviates from " + format_double(dx));
    }
    return Spectrum(xs.front(), dx, std::move(ys));
}

std::string results_csv(const ExperimentSpec& spec, const std::vector<TrialStats>& rows) {
    std::string out =
        "estimator,rate,sigma_n,snr_db,threshold_multiplier,trials,n_ok,bias,std,"
        "mean_iterations,oscillation_rate\n";
    for (const TrialStats& r : rows) {
        out += method_name(r.estimator);
        out += ',';
        out += format_double(r.rate);
        out += ',';
        out += format_double(r.sigma_n);
        out += ',';
        out += r.sigma_n > 0.0 ? format_double(snr_db(spec.model.amplitude, r.sigma_n)) : "inf";
        out += ',';
        out += format_double(r.threshold_multiplier);
        out += ',';
        out += std::to_string(r.n_ok + r.n_failed);
        out += ',';
        out += std::to_string(r.n_ok);
        out += ',';
        out += format_double(r.bias);
        out += ',';
        out += format_double(r.std_dev);
        out += ',';
        out += format_double(r.mean_iterations);
        out += ',';
        out += format_double(r.oscillation_rate);
        out += '\n';
    }
    return out;
}

std::string now_iso8601_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::string manifest_text(const RunManifest& manifest) {
    const ExperimentSpec& spec = manifest.spec;
    std::ostringstream out;
    out << "# mimpeak " << manifest.command << " manifest\n";
    out << "# version=" << manifest.version << "\n";
    out << "# timestamp=" << manifest.timestamp << "\n";
    out << "# output=" << manifest.output << "\n";
    out << "model=" << (spec.model.kind == SignalKind::Gaussian ? "gaussian" : "custom") << "\n";
    out << "amplitude=" << format_double(spec.model.amplitude) << "\n";
    out << "mu=" << format_double(spec.model.mu) << "\n";
    out << "sigma=" << format_double(spec.model.sigma) << "\n";
    out << "x-start=" << format_double(spec.x_start) << "\n";
    out << "x-end=" << format_double(spec.x_end) << "\n";

    const auto list = [](const std::vector<double>& values) {
        std::string text;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) text += ',';
            text += format_double(values[i]);
        }
        return text;
    };

    if (manifest.command == "rate-sweep")
        out << "rates=" << list(spec.rates) << "\n";
    else
        out << "rate=" << format_double(spec.rates.front()) << "\n";

    if (manifest.command == "snr-sweep")
        out << "sigma-n-levels=" << list(spec.sigma_n_levels) << "\n";
    else
        out << "sigma-n=" << format_double(spec.sigma_n_levels.front()) << "\n";

    if (manifest.command == "threshold-sweep")
        out << "threshold-multipliers=" << list(spec.threshold_multipliers) << "\n";
    else
        out << "threshold-multiplier=" << format_double(spec.threshold_multipliers.front())
            << "\n";

    out << "trials=" << spec.trials << "\n";
    out << "seed=" << spec.master_seed << "\n";
    std::string estimators;
    for (std::size_t i = 0; i < spec.estimators.size(); ++i) {
        if (i) estimators += ',';
        estimators += method_name(spec.estimators[i]);
    }
    out << "estimators=" << estimators << "\n";
    out << "tol=" << format_double(spec.iteration.tol) << "\n";
    out << "max-iters=" << spec.iteration.max_iters << "\n";
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot write output file: " + path.string());
    file << text;
    if (!file) throw ConfigError("failed writing output file: " + path.string());
}

} // namespace mimpeak
