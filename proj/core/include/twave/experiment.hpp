#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace twave {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Flat key=value configuration. Lines starting with '#' are comments.
// Keys absent from the file take the per-experiment defaults listed by configHelp().
struct RunConfig {
    std::string experiment;
    std::map<std::string, std::string> values;
    std::filesystem::path outDir = "out";
    unsigned threads = 1;

    static RunConfig fromFile(const std::filesystem::path& path);
    static RunConfig fromString(const std::string& text);
    // "key=value"
    void set(const std::string& assignment);

    bool has(const std::string& key) const { return values.count(key) != 0; }
    double number(const std::string& key, double fallback) const;
    long integer(const std::string& key, long fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;
};

const std::vector<std::string>& experimentNames();
std::string configHelp();

// Throws ConfigError with a message naming the offending key.
void validate(const RunConfig& config);

struct RunResult {
    int exitStatus = 0;
    std::string failure;
    std::vector<std::filesystem::path> files; // artifacts, manifest last
};

// Validates, runs and writes artifacts plus manifest.json under config.outDir.
// An invalid config writes nothing and throws ConfigError.
RunResult runExperiment(const RunConfig& config);

} // namespace twave
