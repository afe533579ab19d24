#include "liveness/checkpoint.hpp"

#include <fstream>

namespace liveness {

namespace {
constexpr int kVersion = 1;
constexpr const char* kFormat = "liveness-checkpoint";
} // namespace

nlohmann::json model_config_to_json(const ModelConfig& cfg) {
    return nlohmann::json{
        {"in_channels", cfg.in_channels},
        {"encoder_channels", cfg.encoder_channels},
        {"kernel", cfg.kernel},
        {"stride", cfg.stride},
        {"pad", cfg.pad},
        {"K", cfg.K},
        {"num_domains", cfg.num_domains},
        {"domain_hidden", cfg.domain_hidden},
        {"grl_beta", cfg.grl_beta},
        {"input_h", cfg.input_h},
        {"input_w", cfg.input_w},
        {"init_seed", cfg.init_seed},
    };
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
    ModelConfig cfg;
    cfg.in_channels = j.at("in_channels").get<int>();
    cfg.encoder_channels = j.at("encoder_channels").get<std::vector<int>>();
    cfg.kernel = j.at("kernel").get<int>();
    cfg.stride = j.at("stride").get<int>();
    cfg.pad = j.at("pad").get<int>();
    cfg.K = j.at("K").get<int>();
    cfg.num_domains = j.at("num_domains").get<int>();
    cfg.domain_hidden = j.at("domain_hidden").get<int>();
    cfg.grl_beta = j.at("grl_beta").get<double>();
    cfg.input_h = j.at("input_h").get<int>();
    cfg.input_w = j.at("input_w").get<int>();
    cfg.init_seed = j.at("init_seed").get<uint64_t>();
    return cfg;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    nlohmann::json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["model"] = model_config_to_json(ckpt.model);
    j["domain_ids"] = ckpt.domain_ids;
    j["train_config"] = ckpt.train_config;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, tensor] : ckpt.params) {
        params[name] = nlohmann::json{{"shape", tensor.shape}, {"data", tensor.data}};
    }
    j["params"] = std::move(params);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path.string());
    out << j.dump() << "\n";
    if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw std::runtime_error("load_checkpoint: bad JSON in " + path.string() + ": " + ex.what());
    }
    if (j.value("format", "") != kFormat)
        throw std::runtime_error("load_checkpoint: not a checkpoint file: " + path.string());
    if (j.value("version", -1) != kVersion)
        throw std::runtime_error("load_checkpoint: unsupported version in " + path.string());
    Checkpoint ckpt;
    ckpt.model = model_config_from_json(j.at("model"));
    ckpt.domain_ids = j.at("domain_ids").get<std::vector<int>>();
    ckpt.train_config = j.value("train_config", nlohmann::json::object());
    for (const auto& [name, entry] : j.at("params").items()) {
        Tensor t(entry.at("shape").get<std::vector<int>>());
        const auto data = entry.at("data").get<std::vector<double>>();
        require(static_cast<int64_t>(data.size()) == t.numel(),
                "load_checkpoint: data/shape mismatch for " + name);
        t.data = data;
        ckpt.params.add(name, std::move(t));
    }
    require(ckpt.params.all_finite(), "load_checkpoint: non-finite parameters");
    return ckpt;
}

} // namespace liveness
