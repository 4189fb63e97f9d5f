#include <cstdio>
#include <string>
#include <vector>

#include <diflow/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  diflow::cli_result result = diflow::run_command(args);
  std::fputs(result.report.c_str(), result.exit_code == 2 ? stderr : stdout);
  return result.exit_code;
}
