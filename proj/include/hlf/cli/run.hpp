#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hlf::cli {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kParse = 2,
  kPrecondition = 3,
  kInvariant = 4,
  kSelfcheckFailed = 5,
};

inline constexpr int kSchemaVersion = 1;

// Full command line without the program name, e.g. {"degree", "--builtin", "P1", "--bundle", "2"}.
// Report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteResult {
  std::string name;
  bool ok = true;
  long checked = 0;
  std::string detail;
};

std::vector<SuiteResult> selfcheck(int jobs);

}  // namespace hlf::cli
