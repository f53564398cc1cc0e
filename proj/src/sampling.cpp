#include "imaug/sampling.hpp"

#include <cctype>
#include <stdexcept>

namespace imaug {

std::string_view technique_name(Technique t) {
  switch (t) {
    case Technique::Rotate: return "rotate";
    case Technique::Shift: return "shift";
    case Technique::Shear: return "shear";
    case Technique::Zoom: return "zoom";
    case Technique::Flip: return "flip";
    case Technique::Brightness: return "brightness";
    case Technique::NoiseGaussian: return "noise-gaussian";
    case Technique::NoiseSaltPepper: return "noise-sp";
    case Technique::Erase: return "erase";
    case Technique::PatchShuffle: return "patch-shuffle";
    case Technique::SamplePairing: return "sample-pairing";
    case Technique::ChannelIsolate: return "channel-isolate";
    case Technique::Blur: return "blur";
    case Technique::Sharpen: return "sharpen";
  }
  throw std::invalid_argument("technique_name: unknown technique");
}

std::optional<Technique> technique_from_name(std::string_view name) {
  if (name == "noise") return Technique::NoiseGaussian;  // the executed noise path
  for (Technique t : all_techniques()) {
    if (technique_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string save_prefix(Technique t) {
  switch (t) {
    case Technique::Rotate: return "Rotated_img";
    case Technique::Shift: return "Shifted_img";
    case Technique::Shear: return "Sheared_img";
    case Technique::Zoom: return "Zoomed_img";
    case Technique::Flip: return "Flipped_img";
    case Technique::Brightness: return "Brightness_Changed_img";
    case Technique::NoiseGaussian: return "Noise_injected_img";
    default: {
      std::string name{technique_name(t)};
      name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
      return name + "_img";
    }
  }
}

int default_multiplicity(Technique t) {
  switch (t) {
    case Technique::Rotate: return 7;
    case Technique::Shift: return 4;
    case Technique::Shear: return 3;
    case Technique::Zoom: return 4;
    case Technique::Flip: return 4;
    case Technique::Brightness: return 5;
    case Technique::NoiseGaussian: return 5;
    case Technique::NoiseSaltPepper: return 5;
    default: return 1;
  }
}

std::vector<Technique> classic_seven() {
  return {Technique::Rotate, Technique::Shift,      Technique::Shear,
          Technique::Zoom,   Technique::Flip,       Technique::Brightness,
          Technique::NoiseGaussian};
}

std::vector<Technique> all_techniques() {
  return {Technique::Rotate,        Technique::Shift,         Technique::Shear,
          Technique::Zoom,          Technique::Flip,          Technique::Brightness,
          Technique::NoiseGaussian, Technique::NoiseSaltPepper, Technique::Erase,
          Technique::PatchShuffle,  Technique::SamplePairing, Technique::ChannelIsolate,
          Technique::Blur,          Technique::Sharpen};
}

TechniqueSpec default_spec(Technique t) {
  TechniqueSpec spec;
  spec.technique = t;
  spec.multiplicity = default_multiplicity(t);
  switch (t) {
    case Technique::Rotate: spec.params = RotateRange{}; break;
    case Technique::Shift: spec.params = ShiftRange{}; break;
    case Technique::Shear: spec.params = ShearRange{}; break;
    case Technique::Zoom: spec.params = ZoomRange{}; break;
    case Technique::Flip: spec.params = FlipProbs{}; break;
    case Technique::Brightness: spec.params = BrightnessRange{}; break;
    case Technique::NoiseGaussian: spec.params = GaussianNoiseSpec{}; break;
    case Technique::NoiseSaltPepper: spec.params = SaltPepperRange{}; break;
    case Technique::Erase: spec.params = EraseParams{}; break;
    case Technique::PatchShuffle: spec.params = PatchShuffleParams{}; break;
    case Technique::SamplePairing: spec.params = PairingSpec{}; break;
    case Technique::ChannelIsolate: spec.params = ChannelIsolateSpec{}; break;
    case Technique::Blur:
    case Technique::Sharpen: spec.params = KernelSpec{}; break;
  }
  return spec;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("technique spec: ") + what);
}

}  // namespace

void validate_spec(const TechniqueSpec& spec) {
  require(spec.multiplicity >= 1, "multiplicity must be >= 1");
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RotateRange> || std::is_same_v<P, ShiftRange> ||
                      std::is_same_v<P, BrightnessRange>) {
          require(p.lo <= p.hi, "range bounds out of order");
        } else if constexpr (std::is_same_v<P, ShearRange>) {
          require(p.lo <= p.hi, "range bounds out of order");
          require(p.lo > -90.0 && p.hi < 90.0, "shear angles must lie in (-90, 90)");
        } else if constexpr (std::is_same_v<P, ZoomRange>) {
          require(p.lo <= p.hi, "range bounds out of order");
          require(p.lo > 0.0, "zoom factors must be positive");
        } else if constexpr (std::is_same_v<P, FlipProbs>) {
          require(p.p_horizontal >= 0.0 && p.p_horizontal <= 1.0 && p.p_vertical >= 0.0 &&
                      p.p_vertical <= 1.0,
                  "flip probabilities must lie in [0,1]");
        } else if constexpr (std::is_same_v<P, GaussianNoiseSpec>) {
          require(p.variability >= 0.0, "variability must be >= 0");
        } else if constexpr (std::is_same_v<P, SaltPepperRange>) {
          require(p.amount_lo >= 0.0 && p.amount_lo <= p.amount_hi && p.amount_hi <= 1.0,
                  "amount bounds must lie in [0,1]");
          require(p.salt_ratio >= 0.0 && p.salt_ratio <= 1.0, "salt_ratio must lie in [0,1]");
        } else if constexpr (std::is_same_v<P, EraseParams>) {
          require(p.area_lo > 0.0 && p.area_lo <= p.area_hi && p.area_hi <= 1.0,
                  "erase area bounds must lie in (0,1]");
          require(p.aspect_lo > 0.0 && p.aspect_lo <= p.aspect_hi,
                  "erase aspect bounds must be positive and ordered");
        } else if constexpr (std::is_same_v<P, PatchShuffleParams>) {
          require(p.n >= 1, "window side must be >= 1");
          require(p.p >= 0.0 && p.p <= 1.0, "shuffle probability must lie in [0,1]");
        } else if constexpr (std::is_same_v<P, PairingSpec>) {
          require(p.crop >= 1, "crop must be >= 1");
        }
      },
      spec.params);
}

nlohmann::json sample_params(const TechniqueSpec& spec, RandomStream& rng,
                             const SampleContext& ctx) {
  validate_spec(spec);
  nlohmann::json out = nlohmann::json::object();
  switch (spec.technique) {
    case Technique::Rotate: {
      const auto& p = std::get<RotateRange>(spec.params);
      out["degrees"] = rng.uniform(p.lo, p.hi);
      break;
    }
    case Technique::Shift: {
      // dx before dy.
      const auto& p = std::get<ShiftRange>(spec.params);
      out["dx_frac"] = rng.uniform(p.lo, p.hi);
      out["dy_frac"] = rng.uniform(p.lo, p.hi);
      break;
    }
    case Technique::Shear: {
      const auto& p = std::get<ShearRange>(spec.params);
      out["degrees"] = rng.uniform(p.lo, p.hi);
      break;
    }
    case Technique::Zoom: {
      // fx before fy; isotropic mode draws once.
      const auto& p = std::get<ZoomRange>(spec.params);
      const double fx = rng.uniform(p.lo, p.hi);
      out["fx"] = fx;
      out["fy"] = p.isotropic ? fx : rng.uniform(p.lo, p.hi);
      break;
    }
    case Technique::Flip: {
      // horizontal coin before vertical coin.
      const auto& p = std::get<FlipProbs>(spec.params);
      out["horizontal"] = rng.bernoulli(p.p_horizontal);
      out["vertical"] = rng.bernoulli(p.p_vertical);
      break;
    }
    case Technique::Brightness: {
      const auto& p = std::get<BrightnessRange>(spec.params);
      out["factor"] = rng.uniform(p.lo, p.hi);
      break;
    }
    case Technique::NoiseGaussian: {
      // The per-image deviation is drawn at apply time, from the same stream.
      const auto& p = std::get<GaussianNoiseSpec>(spec.params);
      out["variability"] = p.variability;
      break;
    }
    case Technique::NoiseSaltPepper: {
      const auto& p = std::get<SaltPepperRange>(spec.params);
      out["amount"] = rng.uniform(p.amount_lo, p.amount_hi);
      out["salt_ratio"] = p.salt_ratio;
      break;
    }
    case Technique::Erase: {
      const auto& p = std::get<EraseParams>(spec.params);
      out["area_lo"] = p.area_lo;
      out["area_hi"] = p.area_hi;
      out["aspect_lo"] = p.aspect_lo;
      out["aspect_hi"] = p.aspect_hi;
      out["fill_policy"] = p.fill == EraseFill::Random   ? "random"
                           : p.fill == EraseFill::Mean   ? "mean"
                                                         : "constant";
      break;
    }
    case Technique::PatchShuffle: {
      const auto& p = std::get<PatchShuffleParams>(spec.params);
      out["n"] = p.n;
      out["p"] = p.p;
      break;
    }
    case Technique::SamplePairing: {
      const auto& p = std::get<PairingSpec>(spec.params);
      out["crop"] = p.crop;
      out["partner_index"] = rng.next_below(ctx.dataset_size > 0 ? ctx.dataset_size : 1);
      break;
    }
    case Technique::ChannelIsolate: {
      static constexpr const char* kNames[3] = {"R", "G", "B"};
      out["channel"] = kNames[rng.next_below(3)];
      break;
    }
    case Technique::Blur:
      out["kernel"] = "gaussian3";
      break;
    case Technique::Sharpen:
      out["kernel"] = "sharpen3";
      break;
  }
  return out;
}

}  // namespace imaug
