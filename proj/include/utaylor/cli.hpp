#pragma once

#include <string>
#include <vector>

namespace utaylor {

// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitCertificate = 3,
    kExitIo = 4,
};

// Entry point of the utaylor tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace utaylor
