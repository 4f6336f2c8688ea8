#pragma once

#include <string>
#include <vector>

namespace qftv::cli {

// Exit-code contract: 0 pass/success, 1 verification FAIL, 2 usage or
// config error.
struct RunResult {
    int exit_code = 0;
    std::string output;       // primary report; byte-identical for identical configs
    std::string diagnostics;  // human notes for stderr (errors, timing)
    std::string out_path;     // write target for `output`; empty means stdout
};

RunResult run(const std::vector<std::string>& args);

// Full process entry: runs, writes output/diagnostics, reports duration on
// stderr, returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace qftv::cli
