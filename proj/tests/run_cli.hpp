#pragma once

// Helper for driving the command-line binary in tests. The binary path comes
// in through the SPINVEC_CLI_PATH compile definition.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

struct CliResult {
    int exit_code;       // -1 if the process did not exit normally
    std::string output;  // captured stdout, plus stderr unless dropped
};

enum class Stderr { Merge, Drop };

inline CliResult run_cli(const std::string& args, Stderr mode = Stderr::Merge) {
    const std::string cmd = std::string(SPINVEC_CLI_PATH) + " " + args +
                            (mode == Stderr::Merge ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("run_cli: popen failed");
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return CliResult{code, out};
}
