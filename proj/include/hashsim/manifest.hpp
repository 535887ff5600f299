#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hashsim {

inline constexpr const char* kToolName = "hashsim";
inline constexpr const char* kToolVersion = "0.1.0";

// "hashsim 0.1.0"
std::string tool_version_string();

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

// "fnv1a64:<16 hex digits>"
std::string digest_string(std::string_view payload);

// Provenance block embedded in every CLI output so a run can be reproduced
// and its payload checked byte-for-byte. parameters hold the full effective
// flag set in a fixed order chosen by each command.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;
};

// CSV form: "# key: value" comment lines (command, parameters, seed when
// present, version, digest of the payload that follows), ending in a
// newline. The digest covers exactly the bytes after this block.
std::string manifest_csv_comment(const RunManifest& m,
                                 std::string_view payload);

}  // namespace hashsim
