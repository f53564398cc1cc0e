#include "imaug/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "imaug/codec.hpp"
#include "imaug/manifest.hpp"
#include "imaug/pipeline.hpp"

namespace imaug {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void usage_error(const std::string& msg) { throw std::invalid_argument(msg); }

Technique parse_technique(const std::string& token) {
  auto t = technique_from_name(token);
  if (!t) {
    usage_error("unknown technique '" + token + "'");
  }
  return *t;
}

std::vector<std::string> expand_all(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (const auto& token : tokens) {
    if (token == "all") {
      for (Technique t : classic_seven()) {
        out.emplace_back(technique_name(t));
      }
    } else {
      out.push_back(token);
    }
  }
  return out;
}

FillMode parse_fill(const std::string& name, int cval) {
  if (name == "reflect") return FillMode::reflect();
  if (name == "nearest") return FillMode::nearest();
  if (name == "wrap") return FillMode::wrap();
  if (name == "constant") return FillMode::constant(static_cast<std::uint8_t>(cval));
  usage_error("unknown fill mode '" + name + "'");
}

Interp parse_interp(const std::string& name) {
  if (name == "bilinear") return Interp::Bilinear;
  if (name == "nearest") return Interp::Nearest;
  usage_error("unknown interpolation '" + name + "'");
}

LabelRule parse_label_rule(const std::string& name) {
  if (name == "parent-dir") return LabelRule::ParentDir;
  if (name == "stem") return LabelRule::FilenameStem;
  usage_error("unknown label rule '" + name + "'");
}

/// Everything a run needs, collected from config file then flags;
/// scalar fields mirror PipelineConfig.
struct RunSettings {
  PipelineConfig config;
  std::vector<std::string> technique_names;
  std::map<std::string, int> multiplicities;
  std::string fill_name = "reflect";
  int cval = 0;
  std::string interp_name = "bilinear";
  std::string label_rule_name = "parent-dir";
  bool isotropic_zoom = false;
  bool seed_set = false;
  bool jobs_set = false;
};

int parse_multiplicity_value(const std::string& token, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
      text.size() > 9) {
    usage_error("multiplicity in '" + token + "' must be a positive integer");
  }
  const int k = std::stoi(text);
  if (k < 1) {
    usage_error("multiplicity in '" + token + "' must be a positive integer");
  }
  return k;
}

void apply_multiplicity_tokens(const std::vector<std::string>& tokens, RunSettings& s) {
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= token.size()) {
      usage_error("multiplicity override '" + token + "' is not of the form TECH=K");
    }
    const std::string name = token.substr(0, eq);
    parse_technique(name);
    s.multiplicities[name] = parse_multiplicity_value(token, token.substr(eq + 1));
  }
}

void apply_config_file(const fs::path& path, RunSettings& s) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path.string());
  }
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    usage_error("config file " + path.string() + " is not a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "input_dir") {
      s.config.input_dir = value.get<std::string>();
    } else if (key == "output_dir") {
      s.config.output_dir = value.get<std::string>();
    } else if (key == "manifest_path") {
      s.config.manifest_path = value.get<std::string>();
    } else if (key == "master_seed") {
      s.config.master_seed = value.get<std::uint64_t>();
      s.seed_set = true;
    } else if (key == "size") {
      s.config.size = value.get<int>();
    } else if (key == "fill") {
      s.fill_name = value.get<std::string>();
    } else if (key == "cval") {
      s.cval = value.get<int>();
    } else if (key == "interp") {
      s.interp_name = value.get<std::string>();
    } else if (key == "label_rule") {
      s.label_rule_name = value.get<std::string>();
    } else if (key == "balance_ratio") {
      s.config.balance_ratio = value.get<double>();
    } else if (key == "jobs") {
      s.config.jobs = value.get<int>();
      s.jobs_set = true;
    } else if (key == "techniques") {
      s.technique_names.clear();
      if (value.is_string()) {
        s.technique_names.push_back(value.get<std::string>());
      } else {
        for (const auto& name : value) {
          s.technique_names.push_back(name.get<std::string>());
        }
      }
    } else if (key == "multiplicity") {
      for (const auto& [name, k] : value.items()) {
        parse_technique(name);
        if (!k.is_number_integer() || k.get<int>() < 1) {
          usage_error("config: multiplicity for '" + name + "' must be a positive integer");
        }
        s.multiplicities[name] = k.get<int>();
      }
    } else if (key == "isotropic_zoom") {
      s.isotropic_zoom = value.get<bool>();
    } else {
      usage_error("config: unknown field '" + key + "'");
    }
  }
}

void finalize_settings(RunSettings& s) {
  if (s.technique_names.empty()) {
    s.technique_names.push_back("all");
  }
  std::vector<Technique> selected;
  for (const auto& name : expand_all(s.technique_names)) {
    selected.push_back(parse_technique(name));
  }
  s.config.techniques.clear();
  for (Technique t : selected) {
    TechniqueSpec spec = default_spec(t);
    const auto it = s.multiplicities.find(std::string(technique_name(t)));
    if (it != s.multiplicities.end()) {
      spec.multiplicity = it->second;
    }
    if (t == Technique::Zoom && s.isotropic_zoom) {
      std::get<ZoomRange>(spec.params).isotropic = true;
    }
    s.config.techniques.push_back(std::move(spec));
  }
  for (const auto& [name, k] : s.multiplicities) {
    const Technique t = parse_technique(name);
    const bool selected_technique =
        std::any_of(s.config.techniques.begin(), s.config.techniques.end(),
                    [&](const TechniqueSpec& spec) { return spec.technique == t; });
    if (!selected_technique) {
      usage_error("multiplicity given for unselected technique '" + name + "'");
    }
  }
  if (s.cval < 0 || s.cval > 255) {
    usage_error("cval must lie in [0, 255]");
  }
  s.config.fill = parse_fill(s.fill_name, s.cval);
  s.config.interp = parse_interp(s.interp_name);
  s.config.label_rule = parse_label_rule(s.label_rule_name);
  if (!s.jobs_set) {
    const unsigned hw = std::thread::hardware_concurrency();
    s.config.jobs = hw == 0 ? 1 : static_cast<int>(hw);
  }
  if (!s.seed_set) {
    std::random_device rd;
    s.config.master_seed =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cout << "master seed: " << s.config.master_seed << " (drawn from system entropy)\n";
  }
  validate_config(s.config);
}

int do_run(const PipelineConfig& config) {
  const RunSummary summary = run_pipeline(config);
  for (const auto& warning : summary.warnings) {
    std::cerr << "imaug: warning: " << warning << "\n";
  }
  std::cout << "scanned " << summary.scanned << " images, skipped " << summary.skipped << "\n";
  if (summary.dataset.size() != summary.scanned) {
    std::cout << "oversampled to " << summary.dataset.size() << " entries\n";
  }
  std::cout << "planned " << summary.jobs.size() << " jobs\n";
  if (summary.report.aborted) {
    std::cout << "wrote " << summary.report.written << " files before aborting\n";
    std::cerr << "imaug: error: " << summary.report.abort_reason << "\n";
    return 1;
  }
  std::cout << "wrote " << summary.report.written << " files, " << summary.report.failed
            << " failed\n";
  std::cout << "manifest: " << summary.report.manifest_path.generic_string() << "\n";
  if (summary.report.failed > 0) {
    std::cerr << "imaug: error: " << summary.report.failed
              << " jobs failed (see manifest rows with an error field)\n";
    return 1;
  }
  return 0;
}

int do_preview(const fs::path& input, const std::string& technique_name_arg, int count,
               std::uint64_t seed, const fs::path& out) {
  const Technique technique = parse_technique(technique_name_arg);
  ScanResult scan = scan_dataset(input, LabelRule::ParentDir);
  for (const auto& warning : scan.warnings) {
    std::cerr << "imaug: warning: " << warning << "\n";
  }
  const ImageBuffer sheet = preview_sheet(scan.entries, technique, count, seed);
  save_png(sheet, out);
  std::cout << "preview: " << out.generic_string() << " (" << sheet.width << "x" << sheet.height
            << ")\n";
  return 0;
}

int do_stats(const fs::path& input, const std::string& label_rule_name) {
  const LabelRule rule = parse_label_rule(label_rule_name);
  ScanResult scan = scan_dataset(input, rule);
  for (const auto& warning : scan.warnings) {
    std::cerr << "imaug: warning: " << warning << "\n";
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& entry : scan.entries) {
    ++counts[entry.label];
  }
  for (const auto& [label, n] : counts) {
    std::cout << label << ": " << n << "\n";
  }
  std::cout << "total: " << scan.entries.size() << " images\n";
  if (counts.size() >= 2) {
    std::size_t lo = scan.entries.size();
    std::size_t hi = 0;
    for (const auto& [label, n] : counts) {
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.2f",
                  static_cast<double>(lo) / static_cast<double>(hi));
    std::cout << "minority/majority ratio: " << ratio << "\n";
  }
  return 0;
}

int do_verify(const fs::path& manifest_path) {
  const VerifyReport report = verify_manifest(manifest_path);
  for (const auto& bad : report.bad_files) {
    std::cerr << "imaug: error: verify: " << bad << "\n";
  }
  std::cout << "verified " << report.checked << " files, " << report.bad_files.size()
            << " bad, " << report.skipped_failures << " failure rows skipped\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Deterministic, seed-reproducible image data augmentation", "imaug"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Augment a dataset and write a manifest");
  std::string run_input;
  std::string run_output;
  std::vector<std::string> run_techniques;
  std::uint64_t run_seed = 0;
  int run_size = 512;
  std::string run_fill = "reflect";
  int run_cval = 0;
  std::string run_interp = "bilinear";
  std::vector<std::string> run_multiplicity;
  std::string run_manifest;
  std::string run_label_rule = "parent-dir";
  double run_balance = 1.0;
  bool run_isotropic = false;
  int run_jobs = 0;
  std::string run_config;
  run->add_option("--input", run_input, "Source image directory")->required();
  run->add_option("--output", run_output, "Destination directory")->required();
  auto* opt_techniques =
      run->add_option("--techniques", run_techniques,
                      "Comma-separated technique list; 'all' expands to the classic seven")
          ->delimiter(',');
  auto* opt_seed = run->add_option("--seed", run_seed, "Master seed (default: system entropy)");
  auto* opt_size = run->add_option("--size", run_size, "Square resize target")
                       ->check(CLI::PositiveNumber);
  auto* opt_fill = run->add_option("--fill", run_fill, "Boundary fill mode")
                       ->check(CLI::IsMember({"reflect", "nearest", "wrap", "constant"}));
  auto* opt_cval = run->add_option("--cval", run_cval, "Constant fill value")
                       ->check(CLI::Range(0, 255));
  auto* opt_interp = run->add_option("--interp", run_interp, "Warp interpolation")
                         ->check(CLI::IsMember({"bilinear", "nearest"}));
  auto* opt_multiplicity =
      run->add_option("--multiplicity", run_multiplicity, "Per-technique override TECH=K,...")
          ->delimiter(',');
  auto* opt_manifest = run->add_option("--manifest", run_manifest, "Manifest path");
  auto* opt_label_rule = run->add_option("--label-rule", run_label_rule, "Label source")
                             ->check(CLI::IsMember({"parent-dir", "stem"}));
  auto* opt_balance =
      run->add_option("--balance", run_balance, "Oversample minorities to this ratio");
  auto* opt_isotropic =
      run->add_flag("--isotropic-zoom", run_isotropic, "Single zoom factor for both axes");
  auto* opt_jobs = run->add_option("--jobs", run_jobs, "Worker threads")
                       ->check(CLI::PositiveNumber);
  auto* opt_config = run->add_option("--config", run_config, "JSON config file");

  auto* preview = app.add_subcommand("preview", "Write a contact sheet of augmented samples");
  std::string preview_input;
  std::string preview_technique;
  int preview_count = 3;
  std::uint64_t preview_seed = 0;
  std::string preview_out;
  preview->add_option("--input", preview_input, "Source image directory")->required();
  preview->add_option("--technique", preview_technique, "Technique to preview")->required();
  preview->add_option("--count", preview_count, "Augmented samples per source")
      ->check(CLI::PositiveNumber);
  preview->add_option("--seed", preview_seed, "Master seed");
  preview->add_option("--out", preview_out, "Output PNG path")->required();

  auto* stats = app.add_subcommand("stats", "Report per-class image counts");
  std::string stats_input;
  std::string stats_label_rule = "parent-dir";
  stats->add_option("--input", stats_input, "Source image directory")->required();
  stats->add_option("--label-rule", stats_label_rule, "Label source")
      ->check(CLI::IsMember({"parent-dir", "stem"}));

  auto* verify = app.add_subcommand("verify", "Check manifest hashes against output files");
  std::string verify_manifest_path;
  verify->add_option("--manifest", verify_manifest_path, "Manifest path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "imaug: error: " << e.what() << "\n";
    const auto parsed = app.get_subcommands();
    std::cerr << (parsed.empty() ? app.help() : parsed.front()->help());
    return 2;
  }

  try {
    if (run->parsed()) {
      RunSettings settings;
      if (opt_config->count() > 0) {
        apply_config_file(run_config, settings);
      }
      settings.config.input_dir = run_input;
      settings.config.output_dir = run_output;
      if (opt_techniques->count() > 0) settings.technique_names = run_techniques;
      if (opt_seed->count() > 0) {
        settings.config.master_seed = run_seed;
        settings.seed_set = true;
      }
      if (opt_size->count() > 0) settings.config.size = run_size;
      if (opt_fill->count() > 0) settings.fill_name = run_fill;
      if (opt_cval->count() > 0) settings.cval = run_cval;
      if (opt_interp->count() > 0) settings.interp_name = run_interp;
      if (opt_multiplicity->count() > 0) apply_multiplicity_tokens(run_multiplicity, settings);
      if (opt_manifest->count() > 0) settings.config.manifest_path = run_manifest;
      if (opt_label_rule->count() > 0) settings.label_rule_name = run_label_rule;
      if (opt_balance->count() > 0) settings.config.balance_ratio = run_balance;
      if (opt_isotropic->count() > 0) settings.isotropic_zoom = run_isotropic;
      if (opt_jobs->count() > 0) {
        settings.config.jobs = run_jobs;
        settings.jobs_set = true;
      }
      finalize_settings(settings);
      return do_run(settings.config);
    }
    if (preview->parsed()) {
      return do_preview(preview_input, preview_technique, preview_count, preview_seed,
                        preview_out);
    }
    if (stats->parsed()) {
      return do_stats(stats_input, stats_label_rule);
    }
    if (verify->parsed()) {
      return do_verify(verify_manifest_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "imaug: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "imaug: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("imaug");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& arg : argv_storage) {
    argv.push_back(arg.c_str());
  }
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace imaug
