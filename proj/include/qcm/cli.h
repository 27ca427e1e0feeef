#ifndef QCM_CLI_H_
#define QCM_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace qcm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitMismatch = 4;
inline constexpr int kExitLemma = 5;

// Environment variable naming the directory for default-named outputs.
inline constexpr const char* kOutputDirEnv = "QCM_OUTPUT_DIR";

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcm

#endif  // QCM_CLI_H_
