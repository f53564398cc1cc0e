#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace imaug {

/// Provenance record binding one output file to its source, label, technique,
/// concrete sampled parameters, and derived seed. `params` plus `seed` are
/// sufficient to regenerate the output byte-exactly from `source_file`.
struct ManifestEntry {
  std::string output_file;  // relative to the manifest's directory
  std::string source_file;  // absolute
  std::string label;
  std::string technique;
  int replicate = 0;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  int width = 0;
  int height = 0;
  std::string sha256;
  std::string error;  // non-empty marks a failed job; no output file exists

  bool failed() const { return !error.empty(); }
};

nlohmann::json to_json(const ManifestEntry& entry);
ManifestEntry entry_from_json(const nlohmann::json& j);

/// One JSON object per line, UTF-8, LF endings. Written to a temporary file in
/// the destination directory and renamed into place.
void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestEntry>& entries);

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

struct VerifyReport {
  std::size_t checked = 0;
  std::size_t skipped_failures = 0;          // rows that recorded a failed job
  std::vector<std::string> bad_files;        // missing or hash-mismatched
  bool ok() const { return bad_files.empty(); }
};

/// Re-hashes every output file named by the manifest (resolved against the
/// manifest's directory) and reports mismatches and missing files.
VerifyReport verify_manifest(const std::filesystem::path& manifest_path);

}  // namespace imaug
