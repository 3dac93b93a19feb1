#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cesfp::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Header block written as `# key: value` lines ahead of every CSV body.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::string grid;
    std::optional<unsigned long long> seed;

    std::string render() const;
};

/// Shortest round-trip form with 17 significant digits.
std::string number(double v);

/// Writes `text` to `path` through a temporary file and a rename, or to
/// stdout when `path` is empty.
void emit(const std::string& path, const std::string& text);

}  // namespace cesfp::cli
