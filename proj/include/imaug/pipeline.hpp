#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "imaug/geometry.hpp"
#include "imaug/image.hpp"
#include "imaug/manifest.hpp"
#include "imaug/random.hpp"
#include "imaug/sampling.hpp"

namespace imaug {

enum class LabelRule { ParentDir, FilenameStem };

struct DatasetEntry {
  std::filesystem::path path;
  std::string label;
  int source_index = 0;
};

struct ScanResult {
  std::vector<DatasetEntry> entries;
  std::vector<std::string> warnings;
  int skipped = 0;  // files with a matching extension that failed to decode
};

/// Strips one trailing _<digits> group ("Abyssinian_1" -> "Abyssinian");
/// stems without such a suffix are returned unchanged.
std::string label_from_stem(const std::string& stem);

/// Recursively collects files with extension jpg/jpeg/png (case-insensitive),
/// validates that each decodes, labels them per the rule, and assigns
/// contiguous source indices in lexicographic path order. Throws
/// std::runtime_error when input_dir is missing.
ScanResult scan_dataset(const std::filesystem::path& input_dir, LabelRule rule);

struct PipelineConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::vector<TechniqueSpec> techniques;
  std::uint64_t master_seed = 0;
  int size = 512;
  FillMode fill = FillMode::reflect();
  Interp interp = Interp::Bilinear;
  LabelRule label_rule = LabelRule::ParentDir;
  std::optional<double> balance_ratio;  // minority/majority target, in (0, 1]
  int jobs = 1;
  std::filesystem::path manifest_path;  // empty: <output_dir>/manifest.jsonl
};

/// Throws std::invalid_argument on out-of-range fields or duplicate
/// techniques.
void validate_config(const PipelineConfig& config);

struct Job {
  int source_index = 0;
  std::filesystem::path source_path;
  std::string label;
  TechniqueSpec spec;
  int replicate = 0;
  std::uint64_t seed = 0;
};

/// `<Prefix>_<source_index>_<replicate>_<seedhex8>.png` where seedhex8 is the
/// low 32 bits of the job seed.
std::string output_name(Technique t, int source_index, int replicate, std::uint64_t seed);

/// One job per (entry x technique x replicate) in canonical
/// (source_index, technique code, replicate) order, each with its derived
/// seed. The dataset must already be in source_index order.
std::vector<Job> plan(const PipelineConfig& config, const std::vector<DatasetEntry>& dataset);

/// Everything apply_technique needs besides the stream: boundary policy,
/// interpolation, and the partner pool for sample pairing.
struct ApplyContext {
  FillMode fill = FillMode::reflect();
  Interp interp = Interp::Bilinear;
  std::uint64_t dataset_size = 1;
  std::function<ImageBuffer(std::uint64_t partner_index)> load_partner;
};

struct ApplyOutcome {
  ImageBuffer image;
  nlohmann::json params;  // concrete values: sampled draws plus realized extras
};

/// Samples one replicate's parameters from the stream, applies them, and
/// returns the result with the manifest-ready parameter map. Techniques that
/// consume randomness while applying (noise values, erase placement, shuffle
/// coins, pairing crops) keep drawing from the same stream, so a stream
/// rebuilt from the job seed reproduces the output bit for bit.
ApplyOutcome apply_technique(const ImageBuffer& source, const TechniqueSpec& spec,
                             RandomStream& rng, const ApplyContext& ctx);

struct RunReport {
  std::vector<ManifestEntry> manifest;  // canonical order; on abort, partial
  std::size_t written = 0;              // output files on disk
  std::size_t failed = 0;               // failure rows
  bool aborted = false;
  std::string abort_reason;
  std::filesystem::path manifest_path;  // set once the manifest is on disk
};

/// Runs every job (worker count = config.jobs), writes outputs under
/// <output_dir>/<label>/, and writes the manifest atomically at the end.
/// Per-job decode failures become failure rows and the run continues; an
/// unwritable output aborts with a partial report and no manifest file.
RunReport execute(const std::vector<Job>& jobs, const PipelineConfig& config,
                  const std::vector<DatasetEntry>& dataset);

/// Duplicates minority-class entries (uniform with replacement) until every
/// class counts at least ceil(target_ratio x majority). Duplicates receive
/// fresh contiguous source indices; with fewer than two classes the dataset
/// is returned unchanged with a warning.
std::vector<DatasetEntry> oversample_minority(const std::vector<DatasetEntry>& dataset,
                                              double target_ratio, RandomStream& rng,
                                              std::vector<std::string>* warnings = nullptr);

/// Scan plus optional oversampling, exactly as a run would see it. Replays
/// against a manifest must use this same dataset so partner indices resolve
/// identically.
std::vector<DatasetEntry> effective_dataset(const PipelineConfig& config,
                                            std::vector<std::string>* warnings = nullptr);

struct RunSummary {
  std::vector<std::string> warnings;
  std::size_t scanned = 0;
  std::size_t skipped = 0;
  std::vector<DatasetEntry> dataset;  // after any oversampling
  std::vector<Job> jobs;
  RunReport report;
};

/// scan -> oversample -> plan -> execute under one config.
RunSummary run_pipeline(const PipelineConfig& config);

/// Regenerates one manifest row's PNG bytes from its source file, recorded
/// seed, and the run's config and effective dataset. Throws
/// std::runtime_error if the re-sampled parameters disagree with the row.
std::vector<std::uint8_t> replay_entry(const ManifestEntry& entry, const PipelineConfig& config,
                                       const std::vector<DatasetEntry>& dataset);

/// Contact sheet: one row per source (capped at 8), columns are the original
/// followed by `count` augmented samples, 128 x 128 cells. Deterministic
/// under (seed, technique).
ImageBuffer preview_sheet(const std::vector<DatasetEntry>& entries, Technique technique,
                          int count, std::uint64_t seed);

}  // namespace imaug
