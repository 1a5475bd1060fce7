#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "magc/magc.hpp"

namespace support {

/// Random companion tuple with 1 <= p <= max_p and N <= max_n.
inline magc::CompanionTuple random_tau(magc::CounterRng& rng, std::uint64_t max_n, std::size_t max_p = 3) {
  const std::size_t p = 1 + static_cast<std::size_t>(rng.below(max_p));
  std::vector<magc::Coord> sizes;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < p; ++i) {
    const std::uint64_t room = max_n / n;
    const magc::Coord s = 1 + rng.below(std::min<std::uint64_t>(room, 8));
    sizes.push_back(s);
    n *= s;
  }
  return magc::CompanionTuple(sizes);
}

inline std::vector<std::vector<magc::Coord>> all_coords(const magc::CompanionTuple& tau) {
  std::vector<std::vector<magc::Coord>> out;
  for (const auto& v : magc::all_vertices(tau)) out.push_back(v.coords);
  return out;
}

inline magc::Mag path_mag(std::uint64_t n) {
  std::vector<magc::RawEdge> raw;
  for (std::uint64_t i = 1; i < n; ++i) raw.emplace_back(magc::CompositeVertex{i}, magc::CompositeVertex{i + 1});
  return magc::validate_mag(magc::CompanionTuple{n}, std::span<const magc::RawEdge>(raw));
}

inline magc::Mag cycle_mag(std::uint64_t n) {
  std::vector<magc::RawEdge> raw;
  for (std::uint64_t i = 1; i <= n; ++i) {
    raw.emplace_back(magc::CompositeVertex{i}, magc::CompositeVertex{i % n + 1});
  }
  return magc::validate_mag(magc::CompanionTuple{n}, std::span<const magc::RawEdge>(raw));
}

inline magc::Mag mag_of(const magc::CompanionTuple& tau, std::vector<magc::RawEdge> raw) {
  return magc::validate_mag(tau, std::span<const magc::RawEdge>(raw));
}

// ---------------------------------------------------------------------------
// CLI runner

struct CliResult {
  int exit_code = -1;
  std::string out;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs `command` through /bin/sh with MAGC_SEED cleared and stderr dropped,
/// optionally from directory `cwd`.
inline CliResult run_cli(const std::string& command, const std::string& cwd = "") {
  const std::string full = (cwd.empty() ? "" : "cd '" + cwd + "' && ") + "env -u MAGC_SEED " + command + " 2>/dev/null";
  CliResult r;
  FILE* pipe = ::popen(full.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct GoldenCase {
  std::string name;
  int exit_code = 0;
  std::string args;
};

/// Lines of `name|exit|args`; '#' comments and blank lines skipped.
inline std::vector<GoldenCase> load_golden_cases(const std::string& dir) {
  std::vector<GoldenCase> out;
  std::istringstream in(read_file(dir + "/cases.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto a = line.find('|');
    const auto b = line.find('|', a + 1);
    out.push_back({line.substr(0, a), std::stoi(line.substr(a + 1, b - a - 1)), line.substr(b + 1)});
  }
  return out;
}

}  // namespace support
