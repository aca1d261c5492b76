#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "magnitude/campaign.hpp"
#include "magnitude/metric.hpp"

namespace magnitude::io {

enum class FileMode { Distance, Similarity };

// A loaded space file. Similarity files carry exact rationals; distance
// files carry float distances (the exponential map is irrational).
struct SpaceFile {
    FileMode mode = FileMode::Similarity;
    std::optional<SimilaritySpace<Rational>> exact;
    std::optional<FiniteMetricSpace<double>> metric;

    std::size_t size() const;
    // Float similarity view of either mode.
    SimilaritySpace<double> float_similarity() const;
    // Exact view; distance files cannot provide one.
    const SimilaritySpace<Rational>& require_exact() const;
    // Distance view; similarity files cannot provide one.
    const FiniteMetricSpace<double>& require_metric() const;
};

SpaceFile load_space(const std::string& path);
SpaceFile parse_space(const nlohmann::json& doc, const std::string& origin);

nlohmann::json similarity_json(const SimilaritySpace<Rational>& s);
nlohmann::json distance_json(const FiniteMetricSpace<double>& m);
void save_json(const std::string& path, const nlohmann::json& doc);

// Deterministic report serialization: timing and thread counts are omitted
// on purpose so reports depend only on (input, seed, mode).
nlohmann::json campaign_json(const verify::CampaignReport& report);
std::string campaign_csv(const verify::CampaignReport& report);

} // namespace magnitude::io
