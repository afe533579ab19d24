#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace liveness {

struct ScoredSample {
    double score = 0.0; // liveness score in [0,1]
    int label = 0;      // 0 spoof, 1 real
    int domain = 0;
};

// Rank-based AUC (Mann-Whitney), ties averaged. Equals trapezoidal ROC
// area with tied scores handled by rank averaging.
double roc_auc(std::span<const ScoredSample> samples);

struct EerResult {
    double eer = 0.0;
    double tau = 0.0;
};

// Threshold convention throughout: score >= tau is accepted as real.
// FAR(tau) = fraction of spoof accepted, FRR(tau) = fraction of real
// rejected. FAR-FRR is nonincreasing in tau; the EER point is the linear
// interpolation between the adjacent operating points (the distinct sample
// scores plus a sentinel above the max) where it crosses zero.
EerResult eer_threshold(std::span<const ScoredSample> samples);

struct ErrorRates {
    double apcer = 0.0; // spoof accepted
    double bpcer = 0.0; // real rejected
    double acer = 0.0;  // mean of the two
};

ErrorRates acer_at(std::span<const ScoredSample> samples, double tau);
double hter_at(std::span<const ScoredSample> samples, double tau);

struct DomainMetrics {
    int domain = 0;
    int n_real = 0, n_spoof = 0;
    bool has_both_classes = false;
    double auc = 0.0, acer = 0.0, hter = 0.0; // valid when has_both_classes
};

struct MetricsReport {
    int n_real = 0, n_spoof = 0;
    double auc = 0.0;
    double eer = 0.0;
    double tau = 0.0;
    double apcer = 0.0, bpcer = 0.0, acer = 0.0;
    double hter = 0.0;
    std::string threshold_rule;
    std::vector<DomainMetrics> per_domain;
};

// Full report at a caller-chosen threshold (from a dev split or fixed).
MetricsReport compute_metrics(std::span<const ScoredSample> samples, double tau,
                              const std::string& threshold_rule);

nlohmann::json metrics_to_json(const MetricsReport& r);
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);

} // namespace liveness
