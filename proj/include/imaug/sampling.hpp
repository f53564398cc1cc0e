#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "imaug/advanced.hpp"
#include "imaug/noise.hpp"
#include "imaug/random.hpp"

namespace imaug {

/// The fixed technique set. Enumerator values double as the stable 16-bit
/// codes mixed into derived seeds, so they must never be renumbered.
enum class Technique : std::uint16_t {
  Rotate = 1,
  Shift = 2,
  Shear = 3,
  Zoom = 4,
  Flip = 5,
  Brightness = 6,
  NoiseGaussian = 7,
  NoiseSaltPepper = 8,
  Erase = 9,
  PatchShuffle = 10,
  SamplePairing = 11,
  ChannelIsolate = 12,
  Blur = 13,
  Sharpen = 14,
};

/// Seed-derivation code reserved for pipeline-internal draws (oversampling).
inline constexpr std::uint16_t kInternalSeedCode = 0;

constexpr std::uint16_t technique_code(Technique t) {
  return static_cast<std::uint16_t>(t);
}

std::string_view technique_name(Technique t);

/// Parses a technique identifier; "noise" is accepted as an alias for
/// noise-gaussian (the executed noise path). Returns nullopt when unknown.
std::optional<Technique> technique_from_name(std::string_view name);

/// Output filename prefix. The seven classic techniques keep their original
/// save prefixes (Rotated_img .. Noise_injected_img); the rest derive
/// <Technique>_img from their identifier.
std::string save_prefix(Technique t);

/// Outputs generated per source image when not overridden
/// (rotate 7, shift 4, shear 3, zoom 4, flip 4, brightness 5, noise 5).
int default_multiplicity(Technique t);

/// The seven classic techniques, in canonical order.
std::vector<Technique> classic_seven();

std::vector<Technique> all_techniques();

struct RotateRange {
  double lo = -180.0, hi = 180.0;  // degrees
};
struct ShiftRange {
  double lo = -0.2, hi = 0.2;  // fraction of width / height
};
struct ShearRange {
  double lo = -45.0, hi = 45.0;  // degrees
};
struct ZoomRange {
  double lo = 0.5, hi = 1.5;
  bool isotropic = false;  // force fx == fy
};
struct FlipProbs {
  double p_horizontal = 0.5, p_vertical = 0.5;
};
struct BrightnessRange {
  double lo = 0.2, hi = 2.1;
};
struct GaussianNoiseSpec {
  double variability = kDefaultNoiseVariability;
};
struct SaltPepperRange {
  double amount_lo = 0.01, amount_hi = 0.1;
  double salt_ratio = 0.5;
};
struct PairingSpec {
  int crop = kDefaultPairingCrop;
};
struct ChannelIsolateSpec {};
struct KernelSpec {};

using TechniqueParams =
    std::variant<RotateRange, ShiftRange, ShearRange, ZoomRange, FlipProbs, BrightnessRange,
                 GaussianNoiseSpec, SaltPepperRange, EraseParams, PatchShuffleParams, PairingSpec,
                 ChannelIsolateSpec, KernelSpec>;

/// A technique plus its parameter distribution and per-image multiplicity.
struct TechniqueSpec {
  Technique technique = Technique::Rotate;
  int multiplicity = 1;
  TechniqueParams params;
};

/// Spec with the default distribution bounds and multiplicity.
TechniqueSpec default_spec(Technique t);

/// Throws std::invalid_argument when multiplicity or bounds are out of range.
void validate_spec(const TechniqueSpec& spec);

struct SampleContext {
  std::uint64_t dataset_size = 1;  // partner pool size for sample pairing
};

/// Draws one replicate's concrete parameters from the stream, as a flat
/// JSON object destined for the manifest. The draw order per technique is
/// fixed and documented next to each case; replaying the same seed
/// reproduces the same values bit for bit.
nlohmann::json sample_params(const TechniqueSpec& spec, RandomStream& rng,
                             const SampleContext& ctx);

}  // namespace imaug
