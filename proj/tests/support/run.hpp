#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace support {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs `binary args` through the shell with stdout captured to a file under dir.
inline RunResult run(const std::string& binary, const std::string& args, const std::filesystem::path& dir,
                     const std::string& tag) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path out = dir / (tag + ".out");
  const std::string cmd = "'" + binary + "' " + args + " > '" + out.string() + "' 2> '" + (dir / (tag + ".err")).string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

}  // namespace support
