#include "nbbl1/cli/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace nbbl1::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

constexpr const char* kConfigPrefix = "config.";

}  // namespace

std::string exact_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void RunManifest::set(const std::string& key, std::string value) {
  for (auto& [k, v] : config) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  config.emplace_back(key, std::move(value));
}

const std::string* RunManifest::find(const std::string& key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return &v;
  }
  return nullptr;
}

void RunManifest::write(std::ostream& out) const {
  out << "# nbbl1 run manifest\n";
  out << "command = " << command << '\n';
  out << "version = " << version << '\n';
  out << "timestamp = " << timestamp << '\n';
  out << "seed = " << seed << '\n';
  for (const auto& [k, v] : config) out << kConfigPrefix << k << " = " << v << '\n';
}

RunManifest RunManifest::read(std::istream& in) {
  RunManifest m;
  std::string line;
  bool have_command = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("malformed manifest line: " + t);
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "command") {
      m.command = value;
      have_command = true;
    } else if (key == "version") {
      m.version = value;
    } else if (key == "timestamp") {
      m.timestamp = value;
    } else if (key == "seed") {
      m.seed = std::stoull(value);
    } else if (key.rfind(kConfigPrefix, 0) == 0) {
      m.set(key.substr(std::char_traits<char>::length(kConfigPrefix)), value);
    } else {
      throw std::runtime_error("unknown manifest key: " + key);
    }
  }
  if (!have_command) throw std::runtime_error("manifest has no command");
  return m;
}

RunManifest RunManifest::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  return read(in);
}

std::vector<std::string> RunManifest::to_args() const {
  std::vector<std::string> args = {command, "--seed", std::to_string(seed)};
  for (const auto& [k, v] : config) {
    args.push_back("--" + k);
    args.push_back(v);
  }
  return args;
}

}  // namespace nbbl1::cli
