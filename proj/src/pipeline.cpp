#include "imaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "imaug/codec.hpp"
#include "imaug/hash.hpp"
#include "imaug/noise.hpp"
#include "imaug/photometric.hpp"

namespace imaug {

namespace fs = std::filesystem;

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

std::string absolute_generic(const fs::path& p) {
  return fs::absolute(p).lexically_normal().generic_string();
}

}  // namespace

std::string label_from_stem(const std::string& stem) {
  auto pos = stem.find_last_of('_');
  if (pos == std::string::npos || pos + 1 >= stem.size()) {
    return stem;
  }
  for (std::size_t i = pos + 1; i < stem.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(stem[i]))) {
      return stem;
    }
  }
  return stem.substr(0, pos);
}

ScanResult scan_dataset(const fs::path& input_dir, LabelRule rule) {
  if (!fs::is_directory(input_dir)) {
    throw std::runtime_error("dataset: no such directory: " + input_dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& de : fs::recursive_directory_iterator(input_dir)) {
    if (de.is_regular_file() && has_image_extension(de.path())) {
      files.push_back(de.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });

  ScanResult result;
  for (const auto& p : files) {
    try {
      load_image(p);
    } catch (const std::exception& e) {
      result.warnings.push_back("skipping " + p.generic_string() + ": " + e.what());
      ++result.skipped;
      continue;
    }
    DatasetEntry entry;
    entry.path = p;
    entry.label = rule == LabelRule::ParentDir ? p.parent_path().filename().string()
                                               : label_from_stem(p.stem().string());
    entry.source_index = static_cast<int>(result.entries.size());
    result.entries.push_back(std::move(entry));
  }
  if (result.entries.empty()) {
    result.warnings.push_back("no images found under " + input_dir.generic_string());
  }
  return result;
}

void validate_config(const PipelineConfig& config) {
  if (config.size < 1) {
    throw std::invalid_argument("config: size must be >= 1");
  }
  if (config.jobs < 1) {
    throw std::invalid_argument("config: jobs must be >= 1");
  }
  if (config.techniques.empty()) {
    throw std::invalid_argument("config: at least one technique is required");
  }
  if (config.balance_ratio &&
      !(*config.balance_ratio > 0.0 && *config.balance_ratio <= 1.0)) {
    throw std::invalid_argument("config: balance ratio must lie in (0, 1]");
  }
  std::set<std::uint16_t> seen;
  for (const auto& spec : config.techniques) {
    validate_spec(spec);
    if (!seen.insert(technique_code(spec.technique)).second) {
      throw std::invalid_argument(std::string("config: duplicate technique ") +
                                  std::string(technique_name(spec.technique)));
    }
  }
}

std::string output_name(Technique t, int source_index, int replicate, std::uint64_t seed) {
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", static_cast<unsigned>(seed & 0xffffffffu));
  return save_prefix(t) + "_" + std::to_string(source_index) + "_" +
         std::to_string(replicate) + "_" + hex + ".png";
}

std::vector<Job> plan(const PipelineConfig& config, const std::vector<DatasetEntry>& dataset) {
  validate_config(config);
  std::vector<TechniqueSpec> specs = config.techniques;
  std::sort(specs.begin(), specs.end(), [](const TechniqueSpec& a, const TechniqueSpec& b) {
    return technique_code(a.technique) < technique_code(b.technique);
  });

  std::size_t total = 0;
  for (const auto& spec : specs) {
    total += static_cast<std::size_t>(spec.multiplicity);
  }
  std::vector<Job> jobs;
  jobs.reserve(total * dataset.size());
  for (const auto& entry : dataset) {
    for (const auto& spec : specs) {
      for (int r = 0; r < spec.multiplicity; ++r) {
        Job job;
        job.source_index = entry.source_index;
        job.source_path = entry.path;
        job.label = entry.label;
        job.spec = spec;
        job.replicate = r;
        job.seed = derive_seed(config.master_seed,
                               static_cast<std::uint64_t>(entry.source_index),
                               technique_code(spec.technique),
                               static_cast<std::uint64_t>(r));
        jobs.push_back(std::move(job));
      }
    }
  }
  return jobs;
}

ApplyOutcome apply_technique(const ImageBuffer& source, const TechniqueSpec& spec,
                             RandomStream& rng, const ApplyContext& ctx) {
  SampleContext sctx{ctx.dataset_size};
  nlohmann::json rp = sample_params(spec, rng, sctx);
  const Eigen::Vector2d c = image_center(source);

  ApplyOutcome out;
  switch (spec.technique) {
    case Technique::Rotate:
      out.image = warp_affine(
          source, make_rotation(rp["degrees"].get<double>(), c.x(), c.y()), ctx.interp, ctx.fill);
      break;
    case Technique::Shift: {
      const double dx = rp["dx_frac"].get<double>() * source.width;
      const double dy = rp["dy_frac"].get<double>() * source.height;
      out.image = warp_affine(source, make_translation(dx, dy), ctx.interp, ctx.fill);
      break;
    }
    case Technique::Shear:
      out.image = warp_affine(source, make_shear(rp["degrees"].get<double>(), c.x(), c.y()),
                              ctx.interp, ctx.fill);
      break;
    case Technique::Zoom:
      out.image = warp_affine(
          source, make_zoom(rp["fx"].get<double>(), rp["fy"].get<double>(), c.x(), c.y()),
          ctx.interp, ctx.fill);
      break;
    case Technique::Flip: {
      const bool h = rp["horizontal"].get<bool>();
      const bool v = rp["vertical"].get<bool>();
      if (h && v) {
        out.image = flip_v(flip_h(source));
      } else if (h) {
        out.image = flip_h(source);
      } else if (v) {
        out.image = flip_v(source);
      } else {
        out.image = source;
      }
      break;
    }
    case Technique::Brightness:
      out.image = adjust_brightness(source, rp["factor"].get<double>());
      break;
    case Technique::NoiseGaussian: {
      // Same draw order as add_gaussian_noise; done here so the concrete
      // deviation lands in the manifest.
      const double deviation = rp["variability"].get<double>() * rng.next_double();
      rp["deviation"] = deviation;
      out.image = add_gaussian_noise_with_deviation(source, deviation, rng);
      break;
    }
    case Technique::NoiseSaltPepper: {
      SaltPepperParams p;
      p.amount = rp["amount"].get<double>();
      p.salt_ratio = rp["salt_ratio"].get<double>();
      out.image = add_salt_pepper(source, p, rng);
      break;
    }
    case Technique::Erase: {
      EraseResult r = random_erase(source, std::get<EraseParams>(spec.params), rng);
      rp["erased"] = r.erased;
      rp["x"] = r.x;
      rp["y"] = r.y;
      rp["w"] = r.w;
      rp["h"] = r.h;
      out.image = std::move(r.image);
      break;
    }
    case Technique::PatchShuffle: {
      PatchShuffleResult r = patch_shuffle(source, std::get<PatchShuffleParams>(spec.params), rng);
      rp["windows_shuffled"] = r.windows_shuffled;
      rp["windows_total"] = r.windows_total;
      out.image = std::move(r.image);
      break;
    }
    case Technique::SamplePairing: {
      if (!ctx.load_partner) {
        throw std::runtime_error("sample pairing requires a partner loader");
      }
      ImageBuffer partner = ctx.load_partner(rp["partner_index"].get<std::uint64_t>());
      out.image = sample_pairing(source, partner, rp["crop"].get<int>(), rng);
      break;
    }
    case Technique::ChannelIsolate: {
      const std::string ch = rp["channel"].get<std::string>();
      const Channel channel = ch == "R" ? Channel::R : ch == "G" ? Channel::G : Channel::B;
      out.image = isolate_channel(source, channel);
      break;
    }
    case Technique::Blur:
      out.image = convolve3(source, gaussian_blur_kernel(), ctx.fill);
      break;
    case Technique::Sharpen:
      out.image = convolve3(source, sharpen_kernel(), ctx.fill);
      break;
  }
  out.params = std::move(rp);
  return out;
}

namespace {

struct LoadedSource {
  std::optional<ImageBuffer> image;  // decoded and resized
  std::string error;
};

using SourceCache = std::map<std::string, LoadedSource>;

SourceCache preload_sources(const std::vector<DatasetEntry>& dataset, int size) {
  SourceCache cache;
  for (const auto& entry : dataset) {
    std::string key = entry.path.generic_string();
    if (cache.count(key)) {
      continue;
    }
    LoadedSource src;
    try {
      src.image = resize_bilinear(load_image(entry.path), size, size);
    } catch (const std::exception& e) {
      src.error = e.what();
    }
    cache.emplace(std::move(key), std::move(src));
  }
  return cache;
}

}  // namespace

RunReport execute(const std::vector<Job>& jobs, const PipelineConfig& config,
                  const std::vector<DatasetEntry>& dataset) {
  validate_config(config);
  RunReport report;

  const fs::path manifest_path =
      config.manifest_path.empty() ? config.output_dir / "manifest.jsonl" : config.manifest_path;
  const fs::path manifest_dir = fs::absolute(manifest_path).parent_path().lexically_normal();

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir)) {
    report.aborted = true;
    report.abort_reason = "cannot create output directory " + config.output_dir.string();
    return report;
  }
  std::set<std::string> labels;
  for (const auto& job : jobs) {
    labels.insert(job.label);
  }
  for (const auto& label : labels) {
    fs::create_directories(config.output_dir / label, ec);
    if (ec) {
      report.aborted = true;
      report.abort_reason = "cannot create output directory " +
                            (config.output_dir / label).string();
      return report;
    }
  }

  const SourceCache cache = preload_sources(dataset, config.size);

  ApplyContext actx;
  actx.fill = config.fill;
  actx.interp = config.interp;
  actx.dataset_size = dataset.size();
  actx.load_partner = [&](std::uint64_t idx) -> ImageBuffer {
    const DatasetEntry& partner = dataset.at(idx);
    const LoadedSource& src = cache.at(partner.path.generic_string());
    if (!src.image) {
      throw std::runtime_error("pairing partner " + partner.path.generic_string() +
                               " failed to decode: " + src.error);
    }
    return *src.image;
  };

  std::vector<std::optional<ManifestEntry>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex abort_mutex;
  std::string abort_reason;

  auto worker = [&]() {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) {
        return;
      }
      const Job& job = jobs[i];
      ManifestEntry entry;
      entry.source_file = absolute_generic(job.source_path);
      entry.label = job.label;
      entry.technique = std::string(technique_name(job.spec.technique));
      entry.replicate = job.replicate;
      entry.seed = job.seed;
      const std::string name =
          output_name(job.spec.technique, job.source_index, job.replicate, job.seed);
      const fs::path out_path = config.output_dir / job.label / name;
      const fs::path rel =
          fs::absolute(out_path).lexically_normal().lexically_relative(manifest_dir);
      entry.output_file = rel.empty() ? absolute_generic(out_path) : rel.generic_string();

      const LoadedSource& src = cache.at(job.source_path.generic_string());
      if (!src.image) {
        entry.error = src.error;
        results[i] = std::move(entry);
        continue;
      }
      try {
        RandomStream rng(job.seed);
        ApplyOutcome out = apply_technique(*src.image, job.spec, rng, actx);
        const std::vector<std::uint8_t> png = encode_png(out.image);
        entry.params = std::move(out.params);
        entry.width = out.image.width;
        entry.height = out.image.height;
        entry.sha256 = sha256_hex(png);

        std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
        if (file) {
          file.write(reinterpret_cast<const char*>(png.data()),
                     static_cast<std::streamsize>(png.size()));
          file.flush();
        }
        if (!file) {
          std::lock_guard<std::mutex> lock(abort_mutex);
          abort_reason = "cannot write " + out_path.string();
          abort.store(true);
          return;
        }
        results[i] = std::move(entry);
      } catch (const std::exception& e) {
        entry.error = e.what();
        results[i] = std::move(entry);
      }
    }
  };

  const int workers = std::max(1, std::min<int>(config.jobs, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }

  for (auto& slot : results) {
    if (!slot) {
      continue;
    }
    if (slot->failed()) {
      ++report.failed;
    } else {
      ++report.written;
    }
    report.manifest.push_back(std::move(*slot));
  }
  if (abort.load()) {
    report.aborted = true;
    report.abort_reason = abort_reason;
    return report;  // no manifest file: a partial one must never look valid
  }
  write_manifest(manifest_path, report.manifest);
  report.manifest_path = manifest_path;
  return report;
}

std::vector<DatasetEntry> oversample_minority(const std::vector<DatasetEntry>& dataset,
                                              double target_ratio, RandomStream& rng,
                                              std::vector<std::string>* warnings) {
  if (!(target_ratio > 0.0 && target_ratio <= 1.0)) {
    throw std::invalid_argument("oversample: target ratio must lie in (0, 1]");
  }
  std::map<std::string, std::vector<const DatasetEntry*>> by_label;
  for (const auto& entry : dataset) {
    by_label[entry.label].push_back(&entry);
  }
  if (by_label.size() < 2) {
    if (warnings) {
      warnings->push_back("oversampling skipped: fewer than two classes");
    }
    return dataset;
  }
  std::size_t majority = 0;
  for (const auto& [label, members] : by_label) {
    majority = std::max(majority, members.size());
  }
  const auto target =
      static_cast<std::size_t>(std::ceil(target_ratio * static_cast<double>(majority)));

  std::vector<DatasetEntry> out = dataset;
  int next_index = static_cast<int>(dataset.size());
  for (const auto& [label, members] : by_label) {  // sorted label order
    for (std::size_t have = members.size(); have < target; ++have) {
      const DatasetEntry* pick = members[rng.next_below(members.size())];
      out.push_back({pick->path, pick->label, next_index++});
    }
  }
  return out;
}

std::vector<DatasetEntry> effective_dataset(const PipelineConfig& config,
                                            std::vector<std::string>* warnings) {
  ScanResult scan = scan_dataset(config.input_dir, config.label_rule);
  if (warnings) {
    warnings->insert(warnings->end(), scan.warnings.begin(), scan.warnings.end());
  }
  if (!config.balance_ratio) {
    return std::move(scan.entries);
  }
  RandomStream rng(derive_seed(config.master_seed, 0, kInternalSeedCode, 0));
  return oversample_minority(scan.entries, *config.balance_ratio, rng, warnings);
}

RunSummary run_pipeline(const PipelineConfig& config) {
  validate_config(config);
  RunSummary summary;
  ScanResult scan = scan_dataset(config.input_dir, config.label_rule);
  summary.warnings = std::move(scan.warnings);
  summary.skipped = static_cast<std::size_t>(scan.skipped);
  summary.scanned = scan.entries.size();
  summary.dataset = std::move(scan.entries);
  if (config.balance_ratio) {
    RandomStream rng(derive_seed(config.master_seed, 0, kInternalSeedCode, 0));
    summary.dataset =
        oversample_minority(summary.dataset, *config.balance_ratio, rng, &summary.warnings);
  }
  summary.jobs = plan(config, summary.dataset);
  summary.report = execute(summary.jobs, config, summary.dataset);
  return summary;
}

std::vector<std::uint8_t> replay_entry(const ManifestEntry& entry, const PipelineConfig& config,
                                       const std::vector<DatasetEntry>& dataset) {
  const auto technique = technique_from_name(entry.technique);
  if (!technique) {
    throw std::runtime_error("replay: unknown technique " + entry.technique);
  }
  TechniqueSpec spec = default_spec(*technique);
  for (const auto& s : config.techniques) {
    if (s.technique == *technique) {
      spec = s;
      break;
    }
  }
  const ImageBuffer source =
      resize_bilinear(load_image(entry.source_file), config.size, config.size);

  ApplyContext actx;
  actx.fill = config.fill;
  actx.interp = config.interp;
  actx.dataset_size = dataset.size();
  actx.load_partner = [&](std::uint64_t idx) -> ImageBuffer {
    const DatasetEntry& partner = dataset.at(idx);
    return resize_bilinear(load_image(partner.path), config.size, config.size);
  };

  RandomStream rng(entry.seed);
  ApplyOutcome out = apply_technique(source, spec, rng, actx);
  if (out.params != entry.params) {
    throw std::runtime_error("replay: parameter mismatch for " + entry.output_file);
  }
  return encode_png(out.image);
}

namespace {

void blit(ImageBuffer& sheet, const ImageBuffer& cell, int x0, int y0) {
  for (int y = 0; y < cell.height; ++y) {
    for (int x = 0; x < cell.width; ++x) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        sheet.at(x0 + x, y0 + y, c) = cell.at(x, y, c);
      }
    }
  }
}

}  // namespace

ImageBuffer preview_sheet(const std::vector<DatasetEntry>& entries, Technique technique,
                          int count, std::uint64_t seed) {
  if (count < 1) {
    throw std::invalid_argument("preview: count must be >= 1");
  }
  if (entries.empty()) {
    throw std::runtime_error("preview: no images to preview");
  }
  constexpr int kCell = 128;
  constexpr int kMaxRows = 8;
  const int rows = std::min<int>(static_cast<int>(entries.size()), kMaxRows);
  const int cols = 1 + count;
  ImageBuffer sheet = new_image(cols * kCell, rows * kCell, 0);

  const TechniqueSpec spec = default_spec(technique);
  std::map<std::uint64_t, ImageBuffer> cell_cache;
  auto load_cell = [&](std::uint64_t idx) -> const ImageBuffer& {
    auto it = cell_cache.find(idx);
    if (it == cell_cache.end()) {
      it = cell_cache
               .emplace(idx, resize_bilinear(load_image(entries.at(idx).path), kCell, kCell))
               .first;
    }
    return it->second;
  };

  ApplyContext actx;
  actx.dataset_size = entries.size();
  actx.load_partner = [&](std::uint64_t idx) { return load_cell(idx); };

  for (int row = 0; row < rows; ++row) {
    const DatasetEntry& entry = entries[static_cast<std::size_t>(row)];
    const ImageBuffer& original = load_cell(static_cast<std::uint64_t>(row));
    blit(sheet, original, 0, row * kCell);
    for (int k = 0; k < count; ++k) {
      RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(entry.source_index),
                                   technique_code(technique), static_cast<std::uint64_t>(k)));
      ApplyOutcome out = apply_technique(original, spec, rng, actx);
      const ImageBuffer cell = out.image.width == kCell && out.image.height == kCell
                                   ? std::move(out.image)
                                   : resize_bilinear(out.image, kCell, kCell);
      blit(sheet, cell, (1 + k) * kCell, row * kCell);
    }
  }
  return sheet;
}

}  // namespace imaug
