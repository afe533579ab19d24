#include "liveness/datagen.hpp"

#include <cmath>
#include <numbers>

#include "liveness/rng.hpp"

namespace liveness {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
    h = h - std::floor(h);
    const double c = v * s;
    const double hp = h * 6.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r1 = 0, g1 = 0, b1 = 0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r1 = c; g1 = x; break;
        case 1: r1 = x; g1 = c; break;
        case 2: g1 = c; b1 = x; break;
        case 3: g1 = x; b1 = c; break;
        case 4: r1 = x; b1 = c; break;
        default: r1 = c; b1 = x; break;
    }
    const double m = v - c;
    r = r1 + m;
    g = g1 + m;
    b = b1 + m;
}

// coarse random grid, bilinearly upsampled; values in [-1,1]
Tensor low_freq_field(int h, int w, int grid, Rng& rng) {
    std::vector<double> coarse(static_cast<size_t>(grid) * grid);
    for (auto& v : coarse) v = rng.uniform_real(-1.0, 1.0);
    Tensor field({h, w, 1});
    for (int r = 0; r < h; ++r) {
        const double fy = (h == 1) ? 0.0 : static_cast<double>(r) / (h - 1) * (grid - 1);
        const int y0 = std::min(grid - 2, static_cast<int>(fy));
        const double ty = fy - y0;
        for (int c = 0; c < w; ++c) {
            const double fx = (w == 1) ? 0.0 : static_cast<double>(c) / (w - 1) * (grid - 1);
            const int x0 = std::min(grid - 2, static_cast<int>(fx));
            const double tx = fx - x0;
            const double v00 = coarse[static_cast<size_t>(y0) * grid + x0];
            const double v01 = coarse[static_cast<size_t>(y0) * grid + x0 + 1];
            const double v10 = coarse[static_cast<size_t>(y0 + 1) * grid + x0];
            const double v11 = coarse[static_cast<size_t>(y0 + 1) * grid + x0 + 1];
            field.at3(r, c, 0) = (1 - ty) * ((1 - tx) * v00 + tx * v01) +
                                 ty * ((1 - tx) * v10 + tx * v11);
        }
    }
    return field;
}

struct SessionJitter {
    double hue_offset;
    double noise_scale;
};

SessionJitter session_jitter(const DomainSpec& spec, int session) {
    const int s_count = std::max(1, spec.sessions);
    const double centered = session - (s_count - 1) / 2.0;
    return {centered * 0.012, 1.0 + 0.2 * centered};
}

Tensor render_base(const DomainSpec& spec, Rng& rng, int session) {
    const int h = spec.height, w = spec.width;
    const SessionJitter jit = session_jitter(spec, session);
    const double hue = rng.uniform_real(spec.hue_lo, spec.hue_hi) + jit.hue_offset;
    const double sat = rng.uniform_real(0.3, 0.5);
    const double val = rng.uniform_real(0.55, 0.8);
    const Tensor field = low_freq_field(h, w, 5, rng);
    const double cy = h * rng.uniform_real(0.4, 0.6);
    const double cx = w * rng.uniform_real(0.4, 0.6);
    const double sy = h * rng.uniform_real(0.28, 0.40);
    const double sx = w * rng.uniform_real(0.22, 0.34);
    const double noise = spec.noise_amp * jit.noise_scale;

    Tensor img({h, w, 3});
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double f = field.at3(r, c, 0);
            const double dy = (r - cy) / sy, dx = (c - cx) / sx;
            const double vignette = std::exp(-0.5 * (dy * dy + dx * dx));
            double rr, gg, bb;
            hsv_to_rgb(hue + 0.015 * f, sat, val * (0.72 + 0.22 * vignette + 0.10 * f), rr, gg, bb);
            img.at3(r, c, 0) = rr + rng.uniform_real(-noise, noise);
            img.at3(r, c, 1) = gg + rng.uniform_real(-noise, noise);
            img.at3(r, c, 2) = bb + rng.uniform_real(-noise, noise);
        }
    }
    return img;
}

// Shared recapture cue: a faint pixel lattice with fixed phase, identical
// geometry in every domain.
void add_shared_lattice(Tensor& img, Rng& rng) {
    const double amp = rng.uniform_real(0.020, 0.032);
    const int h = img.dim(0), w = img.dim(1);
    const double cw[3] = {1.0, 0.88, 0.94};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double g = 0.5 * (std::cos(kTwoPi * r / 3.0) + std::cos(kTwoPi * c / 3.0));
            for (int ch = 0; ch < 3; ++ch) img.at3(r, c, ch) += amp * cw[ch] * g;
        }
    }
}

struct MoireParams {
    double fy1, fx1, fy2, fx2, phase1, phase2;
};

// Fixed grating geometry per domain (same screen/camera pair), with only a
// small per-image phase jitter, so the artifact has a stable spatial
// signature within the domain.
MoireParams moire_params(const DomainSpec& spec, Rng& rng) {
    Rng geo = Rng(splitmix64(0x6D6F697265ULL ^ static_cast<uint64_t>(spec.id) * 0x9E37ULL));
    const double theta = geo.uniform_real(0.25, 1.35);
    const double f1 = geo.uniform_real(0.24, 0.30);
    const double f2 = geo.uniform_real(0.33, 0.41);
    MoireParams p;
    p.fy1 = f1 * std::sin(theta);
    p.fx1 = f1 * std::cos(theta);
    p.fy2 = f2 * std::cos(theta);
    p.fx2 = -f2 * std::sin(theta);
    p.phase1 = geo.uniform_real(0.0, kTwoPi) + rng.uniform_real(-0.25, 0.25);
    p.phase2 = geo.uniform_real(0.0, kTwoPi) + rng.uniform_real(-0.25, 0.25);
    return p;
}

void add_moire(Tensor& img, const DomainSpec& spec, double strength, Rng& rng) {
    const MoireParams p = moire_params(spec, rng);
    const int h = img.dim(0), w = img.dim(1);
    const double cw[3] = {1.0, 0.82, 0.91};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double v = std::sin(kTwoPi * (p.fy1 * r + p.fx1 * c) + p.phase1) *
                             std::sin(kTwoPi * (p.fy2 * r + p.fx2 * c) + p.phase2);
            for (int ch = 0; ch < 3; ++ch) img.at3(r, c, ch) += strength * cw[ch] * v;
        }
    }
}

Tensor blur5(const Tensor& img) {
    // separable binomial [1,4,6,4,1]/16, clamped borders
    static const double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    const int h = img.dim(0), w = img.dim(1), c = img.dim(2);
    Tensor tmp(img.shape), out(img.shape);
    for (int r = 0; r < h; ++r)
        for (int col = 0; col < w; ++col)
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int t = -2; t <= 2; ++t) {
                    const int cc = std::min(w - 1, std::max(0, col + t));
                    acc += k[t + 2] * img.at3(r, cc, ch);
                }
                tmp.at3(r, col, ch) = acc;
            }
    for (int r = 0; r < h; ++r)
        for (int col = 0; col < w; ++col)
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int t = -2; t <= 2; ++t) {
                    const int rr = std::min(h - 1, std::max(0, r + t));
                    acc += k[t + 2] * tmp.at3(rr, col, ch);
                }
                out.at3(r, col, ch) = acc;
            }
    return out;
}

void add_blur_recapture(Tensor& img, double strength) {
    const Tensor blurred = blur5(blur5(img));
    for (int64_t i = 0; i < img.numel(); ++i) {
        const double mixed = img[i] + strength * (blurred[i] - img[i]);
        img[i] = 0.5 + (1.0 - 0.30 * strength) * (mixed - 0.5);
    }
}

void add_color_cast(Tensor& img, const DomainSpec& spec, double strength) {
    Rng geo = Rng(splitmix64(0x63617374ULL ^ static_cast<uint64_t>(spec.id) * 0xC0FFEEULL));
    // unit-RMS cast direction
    double d[3] = {geo.uniform_real(-1.0, 1.0), geo.uniform_real(-1.0, 1.0),
                   geo.uniform_real(0.4, 1.0)};
    const double rms = std::sqrt((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / 3.0);
    for (double& v : d) v /= rms;
    const int h = img.dim(0), w = img.dim(1);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < 3; ++ch) img.at3(r, c, ch) += strength * d[ch];
}

uint64_t image_stream(uint64_t seed, int label, int index) {
    return splitmix64(seed ^ splitmix64((static_cast<uint64_t>(index) << 1) | static_cast<uint64_t>(label)));
}

} // namespace

std::vector<DomainSpec> default_domain_specs(int n_domains, int size) {
    require(n_domains >= 1, "default_domain_specs: need at least one domain");
    std::vector<DomainSpec> specs;
    for (int d = 0; d < n_domains; ++d) {
        DomainSpec s;
        s.id = d;
        s.height = s.width = size;
        s.hue_lo = 0.015 + 0.02 * (d % 4);
        s.hue_hi = s.hue_lo + 0.05;
        s.noise_amp = 0.012 + 0.008 * (d % 3);
        switch (d % 3) {
            case 0:
                s.artifact = ArtifactKind::moire_grid;
                s.strength_lo = 0.10;
                s.strength_hi = 0.18;
                break;
            case 1:
                s.artifact = ArtifactKind::blur_recapture;
                s.strength_lo = 0.55;
                s.strength_hi = 0.85;
                break;
            default:
                s.artifact = ArtifactKind::color_cast;
                s.strength_lo = 0.07;
                s.strength_hi = 0.13;
                break;
        }
        specs.push_back(s);
    }
    return specs;
}

Tensor render_real(const DomainSpec& spec, uint64_t seed, int index, int session) {
    require(spec.height >= 8 && spec.width >= 8, "render_real: image too small");
    Rng rng(image_stream(seed, 1, index));
    return quantize_u8(render_base(spec, rng, session));
}

SpoofRender render_spoof(const DomainSpec& spec, uint64_t seed, int index, int session) {
    require(spec.height >= 8 && spec.width >= 8, "render_spoof: image too small");
    require(spec.strength_lo > 0.0 && spec.strength_hi >= spec.strength_lo,
            "render_spoof: bad strength range");
    Rng rng(image_stream(seed, 0, index));
    SpoofRender out;
    out.base = render_base(spec, rng, session);
    out.strength = rng.uniform_real(spec.strength_lo, spec.strength_hi);
    out.image = out.base;
    switch (spec.artifact) {
        case ArtifactKind::moire_grid: add_moire(out.image, spec, out.strength, rng); break;
        case ArtifactKind::blur_recapture: add_blur_recapture(out.image, out.strength); break;
        case ArtifactKind::color_cast: add_color_cast(out.image, spec, out.strength); break;
    }
    add_shared_lattice(out.image, rng);
    out.base = quantize_u8(out.base);
    out.image = quantize_u8(out.image);
    return out;
}

Manifest gen_domain(const DomainSpec& spec, int n_per_class, const std::string& tag,
                    uint64_t seed, const std::filesystem::path& dir,
                    std::vector<int>* session_ids) {
    require(n_per_class >= 1, "gen_domain: n_per_class must be >= 1");
    require(!tag.empty(), "gen_domain: empty tag");
    std::filesystem::create_directories(dir / "img");
    Manifest m;
    m.height = spec.height;
    m.width = spec.width;
    m.seed = seed;
    m.base_dir = dir;
    if (session_ids) session_ids->clear();
    char name[64];
    const int sessions = std::max(1, spec.sessions);
    for (int label = 1; label >= 0; --label) {
        for (int i = 0; i < n_per_class; ++i) {
            const int session = i % sessions;
            std::snprintf(name, sizeof(name), "img/%s_%s_%04d.ppm", tag.c_str(),
                          label == 1 ? "real" : "spoof", i);
            const Tensor img = label == 1 ? render_real(spec, seed, i, session)
                                          : render_spoof(spec, seed, i, session).image;
            save_ppm(dir / name, img);
            m.entries.push_back({name, label, spec.id});
            if (session_ids) session_ids->push_back(session);
        }
    }
    save_manifest(dir / (tag + ".csv"), m);
    return m;
}

} // namespace liveness
