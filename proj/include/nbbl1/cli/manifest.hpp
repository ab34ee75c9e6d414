#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nbbl1::cli {

/// Everything needed to re-run a command. `config` holds every resolved
/// parameter as (flag name, value); replaying passes them back as flags.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string version;
  std::string timestamp;
  std::vector<std::pair<std::string, std::string>> config;

  void set(const std::string& key, std::string value);
  const std::string* find(const std::string& key) const;

  void write(std::ostream& out) const;
  static RunManifest read(std::istream& in);
  static RunManifest read_file(const std::string& path);

  /// Command line equivalent: {command, --seed, s, --key, value, ...}.
  std::vector<std::string> to_args() const;
};

/// Round-trippable decimal form of a double (%.17g).
std::string exact_real(double v);

}  // namespace nbbl1::cli
