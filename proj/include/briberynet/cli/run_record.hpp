#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/sha.h>

#include "briberynet/errors.hpp"
#include "briberynet/version.hpp"

namespace briberynet::cli {

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char c : digest) {
    out += hex[c >> 4];
    out += hex[c & 0xf];
  }
  return out;
}

struct ManifestEntry {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunRecord {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::string timestamp;
  std::vector<ManifestEntry> outputs;

  nlohmann::json to_json() const {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& e : outputs) files.push_back({{"file", e.file}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    return {{"command", command}, {"version", version}, {"timestamp", timestamp},
            {"seed", seed},       {"config", config},   {"outputs", files}};
  }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Writes `contents` to dir/name and appends its digest to the record.
inline void write_output(const std::filesystem::path& dir, const std::string& name,
                         const std::string& contents, RunRecord& record) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / name).string());
  out << contents;
  if (!out) throw Error(ErrorKind::Io, "short write on " + (dir / name).string());
  record.outputs.push_back({name, sha256_hex(contents), contents.size()});
}

inline void write_run_record(const std::filesystem::path& dir, RunRecord record) {
  if (record.timestamp.empty()) record.timestamp = utc_timestamp();
  std::ofstream out(dir / "run.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / "run.json").string());
  out << record.to_json().dump(2) << '\n';
}

}  // namespace briberynet::cli
