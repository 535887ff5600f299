#include "hashsim/manifest.hpp"

#include <cstdio>

namespace hashsim {

std::string tool_version_string() {
  return std::string(kToolName) + " " + kToolVersion;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string digest_string(std::string_view payload) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(payload)));
  return buf;
}

std::string manifest_csv_comment(const RunManifest& m,
                                 std::string_view payload) {
  std::string out = "# command: " + m.command + "\n# parameters:";
  for (const auto& [key, value] : m.parameters) {
    out += " " + key + "=" + value;
  }
  out += "\n";
  if (m.seed) {
    out += "# seed: " + std::to_string(*m.seed) + "\n";
  }
  out += "# version: " + tool_version_string() + "\n";
  out += "# digest: " + digest_string(payload) + "\n";
  return out;
}

}  // namespace hashsim
