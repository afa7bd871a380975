#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "lfhh/parser.hpp"

namespace lfhh::testing {

inline const char* kFixtureSignature =
    "nat : type.\n"
    "num : {x:nat} type.\n"
    "z : nat.\n"
    "c : {w : {x:nat} {y:num x} nat} nat.\n";

inline LfSignature fixture_signature() { return parse_signature(kFixtureSignature); }

// The judgment the kernel refuses: its inner binder is annotated with a fixed
// index where the constant's type demands the bound variable.
inline const char* kRefusedTerm = "c ([x:nat] [y:num z] z)";
// The collision partner the kernel accepts.
inline const char* kAcceptedTerm = "c ([x:nat] [y:num x] z)";

inline LfObject refused_term(const LfSignature& sig) { return parse_object(kRefusedTerm, sig); }
inline LfObject accepted_term(const LfSignature& sig) { return parse_object(kAcceptedTerm, sig); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int exit_code;
  std::string output;
};

// Runs the CLI binary with the given arguments, capturing stdout+stderr.
inline CliResult run_cli(const std::string& args) {
  std::string command = std::string(LFHH_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string output;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return CliResult{code, std::move(output)};
}

inline std::string fixture_path() { return std::string(LFHH_FIXTURE_DIR) + "/paper.lf"; }
inline std::string golden_path() {
  return std::string(LFHH_GOLDEN_DIR) + "/hastype_clauses.golden";
}

}  // namespace lfhh::testing
