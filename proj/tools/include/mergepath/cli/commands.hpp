#pragma once

#include <iosfwd>
#include <string>

namespace mergepath::cli {

// Exit codes of every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;

// Each command prints a short summary to out and, on error, a JSON object
// {"error": {"code": ..., "message": ...}} to err.
int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_figure1(const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err);

void print_error(std::ostream& err, const std::string& code, const std::string& message);

}  // namespace mergepath::cli
