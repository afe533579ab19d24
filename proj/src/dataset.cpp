#include "liveness/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace liveness {

void save_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_manifest: cannot open " + path.string());
    out << "# liveness-manifest v1; size=" << manifest.height << "x" << manifest.width
        << "; seed=" << manifest.seed << "\n";
    for (const auto& e : manifest.entries) out << e.path << "," << e.label << "," << e.domain << "\n";
    if (!out) throw std::runtime_error("save_manifest: write failed for " + path.string());
}

Manifest parse_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_manifest: cannot open " + path.string());
    Manifest m;
    m.base_dir = path.parent_path();
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("parse_manifest: empty file " + path.string());
    unsigned long long seed = 0;
    if (std::sscanf(header.c_str(), "# liveness-manifest v1; size=%dx%d; seed=%llu",
                    &m.height, &m.width, &seed) != 3)
        throw std::runtime_error("parse_manifest: bad header in " + path.string() + ": " + header);
    m.seed = seed;
    if (m.height < 1 || m.width < 1)
        throw std::runtime_error("parse_manifest: bad size in header of " + path.string());

    std::set<std::string> seen;
    std::string line;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        ManifestEntry e;
        std::string label_str, domain_str, extra;
        if (!std::getline(ls, e.path, ',') || !std::getline(ls, label_str, ',') ||
            !std::getline(ls, domain_str, ','))
            throw std::runtime_error("parse_manifest: malformed row " + std::to_string(row) +
                                     " in " + path.string() + ": " + line);
        if (std::getline(ls, extra, ','))
            throw std::runtime_error("parse_manifest: too many fields at row " +
                                     std::to_string(row) + " in " + path.string());
        try {
            e.label = std::stoi(label_str);
            e.domain = std::stoi(domain_str);
        } catch (const std::exception&) {
            throw std::runtime_error("parse_manifest: non-numeric field at row " +
                                     std::to_string(row) + " in " + path.string());
        }
        if (e.label != 0 && e.label != 1)
            throw std::runtime_error("parse_manifest: label must be 0 or 1 at row " +
                                     std::to_string(row) + " in " + path.string());
        if (!seen.insert(e.path).second)
            throw std::runtime_error("parse_manifest: duplicate path at row " +
                                     std::to_string(row) + " in " + path.string() + ": " + e.path);
        m.entries.push_back(std::move(e));
    }
    return m;
}

std::vector<LabeledImage> load_manifest(const std::filesystem::path& path) {
    const Manifest m = parse_manifest(path);
    std::vector<LabeledImage> data;
    data.reserve(m.entries.size());
    for (size_t i = 0; i < m.entries.size(); ++i) {
        const auto& e = m.entries[i];
        const auto img_path = m.base_dir / e.path;
        LabeledImage sample;
        try {
            sample.image = load_ppm(img_path);
        } catch (const std::exception& ex) {
            throw std::runtime_error("load_manifest: row " + std::to_string(i + 2) + " (" + e.path +
                                     ") of " + path.string() + ": " + ex.what());
        }
        if (sample.image.dim(0) != m.height || sample.image.dim(1) != m.width)
            throw std::runtime_error("load_manifest: row " + std::to_string(i + 2) + " (" + e.path +
                                     ") of " + path.string() + ": image size does not match header");
        sample.label = static_cast<double>(e.label);
        sample.domain = e.domain;
        data.push_back(std::move(sample));
    }
    return data;
}

std::vector<LabeledImage> load_manifests(const std::vector<std::string>& paths) {
    require(!paths.empty(), "load_manifests: no manifests given");
    std::vector<LabeledImage> all;
    for (const auto& p : paths) {
        auto part = load_manifest(p);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return all;
}

std::vector<int> distinct_domains(const std::vector<LabeledImage>& data) {
    std::set<int> ids;
    for (const auto& s : data) ids.insert(s.domain);
    return {ids.begin(), ids.end()};
}

std::vector<int> remap_domains(std::vector<LabeledImage>& data) {
    const std::vector<int> ids = distinct_domains(data);
    std::map<int, int> to_index;
    for (size_t i = 0; i < ids.size(); ++i) to_index[ids[i]] = static_cast<int>(i);
    for (auto& s : data) s.domain = to_index[s.domain];
    return ids;
}

} // namespace liveness
