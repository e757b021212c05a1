#include <cstdio>
#include <fstream>
#include <sstream>

#include "essnorm/experiments.hpp"

namespace essnorm::experiments {

namespace {

std::string number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string number(const std::optional<double>& v)
{
    return v ? number(*v) : std::string();
}

// RFC 4180: quote fields holding a comma, a quote or a line break; double inner quotes.
std::string field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

} // namespace

std::string to_csv(const ScenarioResult& result)
{
    std::string out = "quantity,parameter,computed,certified_bound,formula,residual\r\n";
    for (const auto& r : result.rows) {
        out += field(r.quantity) + ',' + number(r.parameter) + ',' + number(r.computed) + ',' +
               number(r.certified_bound) + ',' + number(r.formula) + ',' + number(r.residual) + "\r\n";
    }
    return out;
}

std::string to_report(const ScenarioResult& result)
{
    std::ostringstream os;
    os << "scenario: " << to_string(result.scenario) << "\n";
    os << "description: " << describe(result.scenario) << "\n";
    os << "rows: " << result.rows.size() << "\n";
    if (result.rows.empty()) os << "note: zero rows were produced\n";
    std::size_t passed = 0;
    for (const auto& a : result.assertions) {
        os << (a.passed ? "PASS  " : "FAIL  ") << a.name;
        if (!a.detail.empty()) os << "  (" << a.detail << ")";
        os << "\n";
        passed += a.passed;
    }
    os << "assertions: " << passed << "/" << result.assertions.size() << " passed\n";
    os << "status: " << (result.all_passed() ? "ok" : "failed") << "\n";
    return os.str();
}

std::filesystem::path emit(const ScenarioResult& result, const ExperimentConfig& config,
                           const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const std::string stem(to_string(result.scenario));
    const auto csv = dir / (stem + ".csv");
    write_file(csv, to_csv(result));
    write_file(dir / (stem + ".report.txt"), to_report(result));
    write_file(dir / (stem + ".config.json"), emit_config(config));
    return csv;
}

} // namespace essnorm::experiments
