#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;  // standard output
  std::string err;  // standard error
};

inline std::filesystem::path scratch_dir() {
  std::filesystem::path dir = FASTBALL_TEST_TMP;
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the fastball binary with `args` through the shell.
inline Result run(const std::string& args) {
  const auto err_path = scratch_dir() / "stderr.txt";
  const std::string command =
      std::string(FASTBALL_CLI_PATH) + " " + args + " 2>" + err_path.string();
  Result r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> chunk{};
  std::size_t got = 0;
  while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) r.out.append(chunk.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& text) {
  auto path = scratch_dir() / name;
  std::ofstream(path, std::ios::trunc) << text;
  return path;
}

}  // namespace cli
