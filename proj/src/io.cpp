#include "magnitude/io.hpp"

#include <fstream>
#include <sstream>

namespace magnitude::io {

using nlohmann::json;

std::size_t SpaceFile::size() const {
    return mode == FileMode::Similarity ? exact->size() : metric->size();
}

SimilaritySpace<double> SpaceFile::float_similarity() const {
    if (mode == FileMode::Similarity) return to_float(*exact);
    return from_distances(*metric);
}

const SimilaritySpace<Rational>& SpaceFile::require_exact() const {
    if (mode != FileMode::Similarity)
        throw InputError("exact mode requires a similarity-mode space file "
                         "(distance entries have irrational similarities)");
    return *exact;
}

const FiniteMetricSpace<double>& SpaceFile::require_metric() const {
    if (mode != FileMode::Distance)
        throw InputError("this operation requires a distance-mode space file");
    return *metric;
}

SpaceFile parse_space(const json& doc, const std::string& origin) {
    if (!doc.is_object()) throw InputError(origin + ": top-level JSON object expected");
    for (const char* key : {"mode", "n", "matrix"})
        if (!doc.contains(key))
            throw InputError(origin + ": missing required key '" + key + "'");

    const std::string mode = doc["mode"].get<std::string>();
    if (mode != "distance" && mode != "similarity")
        throw InputError(origin + ": mode must be 'distance' or 'similarity'");
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0)
        throw InputError(origin + ": n must be a positive integer");
    const std::size_t n = doc["n"].get<std::size_t>();

    const json& rows = doc["matrix"];
    if (!rows.is_array() || rows.size() != n)
        throw InputError(origin + ": matrix must be an array of " + std::to_string(n) +
                         " rows");

    Labels labels;
    if (doc.contains("labels") && !doc["labels"].is_null()) {
        for (const auto& l : doc["labels"]) labels.push_back(l.get<std::string>());
        if (labels.size() != n) throw InputError(origin + ": labels length differs from n");
    }

    SpaceFile file;
    try {
        if (mode == "similarity") {
            Matrix<Rational> z(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!rows[i].is_array() || rows[i].size() != n)
                    throw InputError(origin + ": row " + std::to_string(i + 1) +
                                     " must have " + std::to_string(n) + " entries");
                for (std::size_t j = 0; j < n; ++j) {
                    const json& cell = rows[i][j];
                    if (cell.is_string())
                        z(i, j) = parse_rational(cell.get<std::string>());
                    else if (cell.is_number_integer())
                        z(i, j) = Rational(cell.get<long>());
                    else
                        throw InputError(origin + ": similarity entries must be \"p/q\" strings");
                }
            }
            file.mode = FileMode::Similarity;
            file.exact = SimilaritySpace<Rational>(std::move(z), std::move(labels));
        } else {
            Matrix<double> d(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!rows[i].is_array() || rows[i].size() != n)
                    throw InputError(origin + ": row " + std::to_string(i + 1) +
                                     " must have " + std::to_string(n) + " entries");
                for (std::size_t j = 0; j < n; ++j) {
                    if (!rows[i][j].is_number())
                        throw InputError(origin + ": distance entries must be numbers");
                    d(i, j) = rows[i][j].get<double>();
                }
            }
            file.mode = FileMode::Distance;
            file.metric = FiniteMetricSpace<double>(std::move(d), std::move(labels));
        }
    } catch (const ValidationError& e) {
        throw InputError(origin + ": " + e.what());
    }
    return file;
}

SpaceFile load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError(path + ": JSON parse error: " + e.what());
    }
    return parse_space(doc, path);
}

json similarity_json(const SimilaritySpace<Rational>& s) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.size(); ++j) row.push_back(fraction_string(s.z(i, j)));
        rows.push_back(std::move(row));
    }
    json doc{{"mode", "similarity"}, {"n", s.size()}, {"matrix", std::move(rows)}};
    if (!s.labels().empty()) doc["labels"] = s.labels();
    return doc;
}

json distance_json(const FiniteMetricSpace<double>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.d(i, j));
        rows.push_back(std::move(row));
    }
    json doc{{"mode", "distance"}, {"n", m.size()}, {"matrix", std::move(rows)}};
    if (!m.labels().empty()) doc["labels"] = m.labels();
    return doc;
}

void save_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw InputError(path + ": cannot open for writing");
    out << doc.dump(2) << "\n";
}

json campaign_json(const verify::CampaignReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"sample", v.sample}, {"what", v.what}});
    json histogram = json::object();
    for (const auto& [label, count] : report.histogram) histogram[label] = count;
    return json{{"theorem", report.theorem},
                {"samples", report.samples},
                {"seed", report.seed},
                {"attempts", report.attempts},
                {"acceptance_rate",
                 report.attempts == 0
                     ? 1.0
                     : static_cast<double>(report.samples) / static_cast<double>(report.attempts)},
                {"violations", std::move(violations)},
                {"case_histogram", std::move(histogram)},
                {"passed", report.passed()}};
}

std::string campaign_csv(const verify::CampaignReport& report) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    };
    std::ostringstream out;
    out << "field,value\n";
    out << "theorem," << report.theorem << "\n";
    out << "samples," << report.samples << "\n";
    out << "seed," << report.seed << "\n";
    out << "attempts," << report.attempts << "\n";
    out << "violations," << report.violations.size() << "\n";
    out << "passed," << (report.passed() ? "true" : "false") << "\n";
    for (const auto& [label, count] : report.histogram)
        out << "case:" << label << "," << count << "\n";
    for (const auto& v : report.violations)
        out << "violation:" << v.sample << "," << quote(v.what) << "\n";
    return out.str();
}

} // namespace magnitude::io
