#include "liveness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "liveness/common.hpp"

namespace liveness {

namespace {

void check_two_classes(std::span<const ScoredSample> samples) {
    int n_real = 0, n_spoof = 0;
    for (const auto& s : samples) {
        require(std::isfinite(s.score), "metrics: non-finite score");
        require(s.label == 0 || s.label == 1, "metrics: label must be 0 or 1");
        (s.label == 1 ? n_real : n_spoof)++;
    }
    require(n_real > 0 && n_spoof > 0, "metrics: need at least one sample of each class");
}

} // namespace

double roc_auc(std::span<const ScoredSample> samples) {
    check_two_classes(samples);
    const size_t n = samples.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (samples[a].score != samples[b].score) return samples[a].score < samples[b].score;
        return a < b;
    });
    // average ranks over tied score groups
    std::vector<double> rank(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && samples[order[j + 1]].score == samples[order[i]].score) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    double rank_sum_real = 0.0;
    int64_t n_real = 0, n_spoof = 0;
    for (size_t k = 0; k < n; ++k) {
        if (samples[k].label == 1) {
            rank_sum_real += rank[k];
            ++n_real;
        } else {
            ++n_spoof;
        }
    }
    const double u = rank_sum_real - static_cast<double>(n_real) * (n_real + 1) / 2.0;
    return u / (static_cast<double>(n_real) * static_cast<double>(n_spoof));
}

EerResult eer_threshold(std::span<const ScoredSample> samples) {
    check_two_classes(samples);
    std::vector<double> reals, spoofs;
    for (const auto& s : samples) (s.label == 1 ? reals : spoofs).push_back(s.score);
    std::sort(reals.begin(), reals.end());
    std::sort(spoofs.begin(), spoofs.end());
    std::vector<double> taus;
    for (const auto& s : samples) taus.push_back(s.score);
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    taus.push_back(taus.back() + 1.0); // sentinel: FAR=0, FRR=1

    auto far_at = [&](double t) {
        // fraction of spoof scores >= t
        const auto it = std::lower_bound(spoofs.begin(), spoofs.end(), t);
        return static_cast<double>(spoofs.end() - it) / static_cast<double>(spoofs.size());
    };
    auto frr_at = [&](double t) {
        // fraction of real scores < t
        const auto it = std::lower_bound(reals.begin(), reals.end(), t);
        return static_cast<double>(it - reals.begin()) / static_cast<double>(reals.size());
    };

    // FAR-FRR is nonincreasing, starts at +1 and ends at -1; interpolate
    // inside the first segment where it reaches zero or below.
    double prev_far = far_at(taus[0]), prev_frr = frr_at(taus[0]);
    for (size_t k = 1; k < taus.size(); ++k) {
        const double far = far_at(taus[k]), frr = frr_at(taus[k]);
        const double d_prev = prev_far - prev_frr;
        const double d = far - frr;
        if (d <= 0.0) {
            const double s = d_prev / (d_prev - d);
            EerResult r;
            r.eer = prev_far + s * (far - prev_far);
            r.tau = taus[k - 1] + s * (taus[k] - taus[k - 1]);
            return r;
        }
        prev_far = far;
        prev_frr = frr;
    }
    throw std::logic_error("eer_threshold: no crossing found");
}

ErrorRates acer_at(std::span<const ScoredSample> samples, double tau) {
    check_two_classes(samples);
    int64_t n_real = 0, n_spoof = 0, spoof_accepted = 0, real_rejected = 0;
    for (const auto& s : samples) {
        if (s.label == 1) {
            ++n_real;
            if (s.score < tau) ++real_rejected;
        } else {
            ++n_spoof;
            if (s.score >= tau) ++spoof_accepted;
        }
    }
    ErrorRates r;
    r.apcer = static_cast<double>(spoof_accepted) / static_cast<double>(n_spoof);
    r.bpcer = static_cast<double>(real_rejected) / static_cast<double>(n_real);
    r.acer = (r.apcer + r.bpcer) / 2.0;
    return r;
}

double hter_at(std::span<const ScoredSample> samples, double tau) {
    // FAR = apcer, FRR = bpcer under this labeling
    return acer_at(samples, tau).acer;
}

MetricsReport compute_metrics(std::span<const ScoredSample> samples, double tau,
                              const std::string& threshold_rule) {
    MetricsReport r;
    r.tau = tau;
    r.threshold_rule = threshold_rule;
    for (const auto& s : samples) (s.label == 1 ? r.n_real : r.n_spoof)++;
    r.auc = roc_auc(samples);
    r.eer = eer_threshold(samples).eer;
    const ErrorRates er = acer_at(samples, tau);
    r.apcer = er.apcer;
    r.bpcer = er.bpcer;
    r.acer = er.acer;
    r.hter = hter_at(samples, tau);

    std::map<int, std::vector<ScoredSample>> by_domain;
    for (const auto& s : samples) by_domain[s.domain].push_back(s);
    for (const auto& [domain, group] : by_domain) {
        DomainMetrics dm;
        dm.domain = domain;
        for (const auto& s : group) (s.label == 1 ? dm.n_real : dm.n_spoof)++;
        dm.has_both_classes = dm.n_real > 0 && dm.n_spoof > 0;
        if (dm.has_both_classes) {
            dm.auc = roc_auc(group);
            const ErrorRates der = acer_at(group, tau);
            dm.acer = der.acer;
            dm.hter = hter_at(group, tau);
        }
        r.per_domain.push_back(dm);
    }
    return r;
}

nlohmann::json metrics_to_json(const MetricsReport& r) {
    nlohmann::json j{
        {"n_real", r.n_real},   {"n_spoof", r.n_spoof}, {"auc", r.auc},
        {"eer", r.eer},         {"tau", r.tau},         {"apcer", r.apcer},
        {"bpcer", r.bpcer},     {"acer", r.acer},       {"hter", r.hter},
        {"threshold_rule", r.threshold_rule},
    };
    j["per_domain"] = nlohmann::json::array();
    for (const auto& dm : r.per_domain) {
        nlohmann::json d{{"domain", dm.domain},
                         {"n_real", dm.n_real},
                         {"n_spoof", dm.n_spoof},
                         {"has_both_classes", dm.has_both_classes}};
        if (dm.has_both_classes) {
            d["auc"] = dm.auc;
            d["acer"] = dm.acer;
            d["hter"] = dm.hter;
        }
        j["per_domain"].push_back(d);
    }
    return j;
}

std::string metrics_csv_header() {
    return "n_real,n_spoof,auc,eer,tau,apcer,bpcer,acer,hter,threshold_rule";
}

std::string metrics_csv_row(const MetricsReport& r) {
    std::ostringstream os;
    os.precision(10);
    os << r.n_real << ',' << r.n_spoof << ',' << r.auc << ',' << r.eer << ',' << r.tau << ','
       << r.apcer << ',' << r.bpcer << ',' << r.acer << ',' << r.hter << ',' << r.threshold_rule;
    return os.str();
}

} // namespace liveness
