#pragma once

#include <filesystem>
#include <vector>

#include "liveness/dataset.hpp"
#include "liveness/image.hpp"

namespace liveness {

// Procedural multi-domain real/spoof generator. "Real" images are smooth
// low-frequency skin-toned fields with per-domain hue and sensor noise.
// "Spoof" images take a real-style base and superimpose the domain's
// artifact (a fixed-geometry moire grating, recapture blur with contrast
// loss, or a global color cast) plus a faint pixel-lattice cue shared by
// every domain. The shared cue is what transfers across domains; the
// per-domain artifact is the shortcut that does not.

enum class ArtifactKind { moire_grid, blur_recapture, color_cast };

struct DomainSpec {
    int id = 0;
    double hue_lo = 0.02, hue_hi = 0.10; // HSV hue
    double noise_amp = 0.02;
    ArtifactKind artifact = ArtifactKind::moire_grid;
    double strength_lo = 0.10, strength_hi = 0.20;
    int height = 64, width = 64;
    int sessions = 2; // capture-session analog; jitters hue/noise slightly
};

std::vector<DomainSpec> default_domain_specs(int n_domains, int size);

// Deterministic per-image renders; index selects the image's rng stream.
Tensor render_real(const DomainSpec& spec, uint64_t seed, int index, int session);

struct SpoofRender {
    Tensor image;
    Tensor base;     // the paired real-style base, before the artifact
    double strength; // drawn from [strength_lo, strength_hi]
};
SpoofRender render_spoof(const DomainSpec& spec, uint64_t seed, int index, int session);

// Writes n_per_class images per class under dir/img/ plus dir/<tag>.csv,
// and returns the manifest. session_ids, if given, receives the session of
// each manifest entry in order.
Manifest gen_domain(const DomainSpec& spec, int n_per_class, const std::string& tag,
                    uint64_t seed, const std::filesystem::path& dir,
                    std::vector<int>* session_ids = nullptr);

} // namespace liveness
