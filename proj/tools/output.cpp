#include "output.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

namespace cesfp::cli {

std::string RunManifest::render() const {
    std::string out = fmt::format("# command: {}\n", command);
    out += "# params:";
    for (const auto& [key, value] : params) out += fmt::format(" {}={}", key, value);
    out += '\n';
    out += fmt::format("# grid: {}\n", grid.empty() ? "none" : grid);
    out += seed ? fmt::format("# seed: {}\n", *seed) : std::string("# seed: none\n");
    out += fmt::format("# version: {}\n", kToolVersion);
    const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
    out += fmt::format("# timestamp: {:%Y-%m-%dT%H:%M:%SZ}\n", now);
    return out;
}

std::string number(double v) { return fmt::format("{:.17g}", v); }

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += fmt::format(".tmp.{}", ::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(text.data(), static_cast<std::streamsize>(text.size()));
        os.flush();
        if (!os) {
            os.close();
            fs::remove(tmp);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, target);
}

}  // namespace cesfp::cli
