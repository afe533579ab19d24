#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "liveness/image.hpp"

namespace liveness {

// On-disk dataset: one CSV manifest per split with the header line
//   # liveness-manifest v1; size=HxW; seed=S
// followed by `path,label,domain` rows. Paths are relative to the
// manifest's directory; images are binary PPM (P6), lossless for 8-bit
// data.

struct ManifestEntry {
    std::string path;
    int label = 0;
    int domain = 0;
};

struct Manifest {
    int height = 0, width = 0;
    uint64_t seed = 0;
    std::vector<ManifestEntry> entries;
    std::filesystem::path base_dir; // directory of the manifest file
};

void save_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest parse_manifest(const std::filesystem::path& path);

// Parse + load every image; errors identify the offending row.
std::vector<LabeledImage> load_manifest(const std::filesystem::path& path);
std::vector<LabeledImage> load_manifests(const std::vector<std::string>& paths);

std::vector<int> distinct_domains(const std::vector<LabeledImage>& data);

// Map raw manifest domain ids onto [0,D) for the discriminator head.
std::vector<int> remap_domains(std::vector<LabeledImage>& data);

} // namespace liveness
