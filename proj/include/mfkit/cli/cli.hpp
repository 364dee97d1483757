#ifndef MFKIT_CLI_CLI_HPP
#define MFKIT_CLI_CLI_HPP

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace mfkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnstabilized = 2;

struct Outcome {
    nlohmann::json doc;
    int exit_code = kExitOk;
    std::string text;  // what the binary prints (JSON, table or help)
};

// Runs one command. `args` excludes the program name; `env` supplies
// MFKIT_FIELD and MFKIT_DMAX when present.
Outcome run(const std::vector<std::string>& args, const std::map<std::string, std::string>& env = {});

// Aligned "key  value" lines for the result part of a document.
std::string render_table(const nlohmann::json& doc);

} // namespace mfkit::cli

#endif
