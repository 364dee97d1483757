#include <cstdlib>
#include <iostream>

#include "mfkit/cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::map<std::string, std::string> env;
    for (const char* name : {"MFKIT_FIELD", "MFKIT_DMAX"})
        if (const char* v = std::getenv(name)) env[name] = v;
    mfkit::cli::Outcome out = mfkit::cli::run(args, env);
    std::cout << out.text;
    return out.exit_code;
}
