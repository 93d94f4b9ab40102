#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tweetguard/classifier.hpp"
#include "tweetguard/corpus.hpp"
#include "tweetguard/preprocess.hpp"
#include "tweetguard/vectorizer.hpp"

namespace tweetguard {

/// Version written into every artifact; loading any other version fails.
inline constexpr int kArtifactVersion = 1;
inline constexpr std::string_view kArtifactFormat = "tweetguard-pipeline";

/// Preprocessing, fitted vectorizer and classifier, as one deployable unit.
struct Pipeline {
    StopwordList stopwords = StopwordList::english();
    TfidfModel vectorizer;
    Classifier classifier;
    std::uint64_t seed = 42;

    /// Throws VersionMismatch when the classifier was not fitted on this
    /// vectorizer's feature space.
    void check_compatible() const;

    SparseVector features(std::string_view text) const;
    Prediction classify_text(std::string_view text) const;
};

Pipeline train_pipeline(const std::vector<LabeledTweet>& data, const NgramRange& range, Norm norm,
                        const ClassifierSpec& spec, std::uint64_t seed = 42,
                        const StopwordList& stopwords = StopwordList::english());

// JSON persistence. Doubles are written in shortest round-trip form, so
// save -> load reproduces every value exactly.
nlohmann::json tfidf_to_json(const TfidfModel& model);
TfidfModel tfidf_from_json(const nlohmann::json& j);
nlohmann::json classifier_to_json(const Classifier& model);
Classifier classifier_from_json(const nlohmann::json& j);

nlohmann::json pipeline_to_json(const Pipeline& p);
Pipeline pipeline_from_json(const nlohmann::json& j);

void save_pipeline(const std::filesystem::path& path, const Pipeline& p);
Pipeline load_pipeline(const std::filesystem::path& path);

}  // namespace tweetguard
