#pragma once

// Command implementations shared by the command-line tool and the Python
// module. Each command returns a structured report and an exit code.

#include <string>
#include <vector>

#include "json.hpp"

namespace bigalois {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kSuccess = 0,
  kVerifiedNegative = 2,
  kUndetermined = 3,
  kInputError = 4,
};

struct CommandOptions {
  int degree = 3;
  int bound = 4;
  int tower_cap = 4;
  bool timing = false;
};

struct InputFile {
  std::string label;  ///< echoed in the report, usually the path
  std::string text;
};

struct Report {
  Json data;
  int exit_code = kSuccess;

  std::string text() const;
  std::string json() const;
};

Report cmd_present(const InputFile& e, const CommandOptions& options = {});
Report cmd_bigalois(const InputFile& e, const InputFile& f, const CommandOptions& options = {});
/// regime is "generic" or "rootN"; labels are "U4", "V1", "V2U1" or a bare n for U(n).
Report cmd_fusion(const std::string& regime, const std::string& k, const std::string& l);
/// kind is congruence (E F [M]), automorphism (E P), star (E M) or cqg (E M).
Report cmd_verify(const std::string& kind, const std::vector<InputFile>& files,
                  const CommandOptions& options = {});

/// Plain-text rendering of a report object, one "key: value" line per field.
std::string render_text(const Json& data);

}  // namespace bigalois
