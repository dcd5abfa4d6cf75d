#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace dynes::cli {

namespace fs = std::filesystem;

// Exit codes: 0 success, 1 invalid input, 2 unreadable file.

int check(const fs::path& kb, std::ostream& err);

struct RunArgs {
    fs::path kb;
    fs::path scenario;
    int ticks = 0;
    fs::path trace;
    std::optional<fs::path> config;
    bool no_cache = false;
};
int run(const RunArgs& args, std::ostream& out, std::ostream& err);

struct ConsultArgs {
    fs::path kb;
    std::string goal;
    std::optional<fs::path> log;  // JSON transcript
    std::optional<fs::path> config;
};
int consult(const ConsultArgs& args, std::istream& in, std::ostream& out, std::ostream& err);

int replay(const fs::path& kb, const fs::path& scenario, const fs::path& trace, std::ostream& out, std::ostream& err);

int serve(const std::string& host, int port, const std::optional<fs::path>& static_dir, std::ostream& out,
          std::ostream& err);

}  // namespace dynes::cli
