#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "liveness/model.hpp"

namespace liveness {

// Versioned JSON container: model config, the raw manifest domain ids the
// discriminator indices map to, a free-form training-config echo, and all
// named parameter tensors. Doubles survive the round trip exactly.
struct Checkpoint {
    ModelConfig model;
    std::vector<int> domain_ids;
    nlohmann::json train_config;
    ParamSet params;
};

nlohmann::json model_config_to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace liveness
