#include "imaug/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "imaug/hash.hpp"

namespace imaug {

nlohmann::json to_json(const ManifestEntry& entry) {
  nlohmann::json j;
  j["output_file"] = entry.output_file;
  j["source_file"] = entry.source_file;
  j["label"] = entry.label;
  j["technique"] = entry.technique;
  j["replicate"] = entry.replicate;
  j["params"] = entry.params;
  j["seed"] = entry.seed;
  j["width"] = entry.width;
  j["height"] = entry.height;
  j["sha256"] = entry.sha256;
  if (!entry.error.empty()) {
    j["error"] = entry.error;
  }
  return j;
}

ManifestEntry entry_from_json(const nlohmann::json& j) {
  ManifestEntry e;
  e.output_file = j.at("output_file").get<std::string>();
  e.source_file = j.at("source_file").get<std::string>();
  e.label = j.at("label").get<std::string>();
  e.technique = j.at("technique").get<std::string>();
  e.replicate = j.at("replicate").get<int>();
  e.params = j.at("params");
  e.seed = j.at("seed").get<std::uint64_t>();
  e.width = j.at("width").get<int>();
  e.height = j.at("height").get<int>();
  e.sha256 = j.at("sha256").get<std::string>();
  if (j.contains("error")) {
    e.error = j.at("error").get<std::string>();
  }
  return e;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestEntry>& entries) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) {
    fs::create_directories(dir);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("manifest: cannot write " + tmp.string());
    }
    for (const auto& e : entries) {
      out << to_json(e).dump() << '\n';
    }
    out.flush();
    if (!out) {
      std::remove(tmp.string().c_str());
      throw std::runtime_error("manifest: write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("manifest: cannot open " + path.string());
  }
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      std::ostringstream msg;
      msg << "manifest: invalid JSON at " << path.string() << ":" << lineno;
      throw std::runtime_error(msg.str());
    }
    entries.push_back(entry_from_json(j));
  }
  return entries;
}

VerifyReport verify_manifest(const std::filesystem::path& manifest_path) {
  namespace fs = std::filesystem;
  const fs::path base = fs::absolute(manifest_path).parent_path();
  VerifyReport report;
  for (const auto& entry : read_manifest(manifest_path)) {
    if (entry.failed()) {
      ++report.skipped_failures;
      continue;
    }
    ++report.checked;
    fs::path file(entry.output_file);
    if (file.is_relative()) {
      file = base / file;
    }
    std::error_code ec;
    if (!fs::is_regular_file(file, ec)) {
      report.bad_files.push_back(file.generic_string() + " (missing)");
      continue;
    }
    if (sha256_file(file) != entry.sha256) {
      report.bad_files.push_back(file.generic_string() + " (sha256 mismatch)");
    }
  }
  return report;
}

}  // namespace imaug
