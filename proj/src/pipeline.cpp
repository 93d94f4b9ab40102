#include "tweetguard/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "tweetguard/error.hpp"

namespace tweetguard {

using nlohmann::json;

void Pipeline::check_compatible() const {
    if (n_features(classifier) != vectorizer.n_features()) {
        throw VersionMismatch("classifier expects " + std::to_string(n_features(classifier)) +
                              " features but the vectorizer produces " + std::to_string(vectorizer.n_features()));
    }
}

SparseVector Pipeline::features(std::string_view text) const {
    return transform(preprocess(text, stopwords), vectorizer);
}

Prediction Pipeline::classify_text(std::string_view text) const { return classify(classifier, features(text)); }

Pipeline train_pipeline(const std::vector<LabeledTweet>& data, const NgramRange& range, Norm norm,
                        const ClassifierSpec& spec, std::uint64_t seed, const StopwordList& stopwords) {
    if (data.empty()) throw Error("cannot train on an empty dataset");
    std::vector<TokenSeq> docs;
    std::vector<Label> y;
    docs.reserve(data.size());
    y.reserve(data.size());
    for (const auto& t : data) {
        docs.push_back(preprocess(t.text, stopwords));
        y.push_back(t.label);
    }
    Pipeline p;
    p.stopwords = stopwords;
    p.seed = seed;
    p.vectorizer = fit(docs, range, norm);
    std::vector<SparseVector> X;
    X.reserve(docs.size());
    for (const auto& d : docs) X.push_back(transform(d, p.vectorizer));
    p.classifier = fit_classifier(spec, X, y, p.vectorizer.n_features());
    return p;
}

namespace {

void require_finite(const std::vector<double>& v, std::string_view what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw Error("cannot serialize non-finite value in " + std::string(what));
    }
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("artifact: missing field `") + key + "`");
    return *it;
}

std::vector<std::string> label_names(const std::vector<Label>& labels) {
    std::vector<std::string> out;
    for (Label l : labels) out.emplace_back(to_string(l));
    return out;
}

}  // namespace

json tfidf_to_json(const TfidfModel& model) {
    require_finite(model.idf, "idf");
    return json{{"ngram_range", {model.ngram_range.min_n, model.ngram_range.max_n}},
                {"norm", to_string(model.norm)},
                {"n_docs", model.vocabulary.n_docs()},
                {"terms", model.vocabulary.terms()},
                {"doc_freq", model.vocabulary.doc_freq()},
                {"idf", model.idf}};
}

TfidfModel tfidf_from_json(const json& j) {
    try {
        TfidfModel m;
        const auto& range = field(j, "ngram_range");
        m.ngram_range = {range.at(0).get<int>(), range.at(1).get<int>()};
        validate(m.ngram_range);
        m.norm = norm_from_string(field(j, "norm").get<std::string>());
        m.vocabulary = Vocabulary(field(j, "terms").get<std::vector<std::string>>(),
                                  field(j, "doc_freq").get<std::vector<std::size_t>>(),
                                  field(j, "n_docs").get<std::size_t>());
        m.idf = field(j, "idf").get<std::vector<double>>();
        if (m.idf.size() != m.vocabulary.size()) throw Error("artifact: idf length does not match vocabulary");
        return m;
    } catch (const json::exception& e) {
        throw Error(std::string("artifact: malformed vectorizer: ") + e.what());
    }
}

json classifier_to_json(const Classifier& model) {
    if (const auto* nb = std::get_if<NbModel>(&model)) {
        json rows = json::array();
        for (const auto& row : nb->feature_log_prob) {
            require_finite(row, "feature_log_prob");
            rows.push_back(row);
        }
        return json{{"kind", "nb"},
                    {"alpha", nb->alpha},
                    {"n_features", nb->n_features},
                    {"class_log_prior", nb->class_log_prior},
                    {"feature_log_prob", rows}};
    }
    if (const auto* lin = std::get_if<LinearModel>(&model)) {
        for (const auto& w : lin->weights) require_finite(w, "weights");
        require_finite(lin->bias, "bias");
        std::vector<bool> conv = lin->class_converged;
        return json{{"kind", to_string(lin->kind)},
                    {"C", lin->C},
                    {"solver",
                     {{"kind", to_string(lin->solver.kind)},
                      {"tol", lin->solver.tol},
                      {"max_iter", lin->solver.max_iter},
                      {"seed", lin->solver.seed}}},
                    {"n_features", lin->n_features},
                    {"classes", label_names(lin->classes)},
                    {"weights", lin->weights},
                    {"bias", lin->bias},
                    {"converged", conv},
                    {"iterations", lin->iterations},
                    {"objective", lin->objective}};
    }
    const auto& maj = std::get<MajorityModel>(model);
    return json{{"kind", "majority"}, {"label", to_string(maj.label)}, {"n_features", maj.n_features}};
}

Classifier classifier_from_json(const json& j) {
    try {
        const auto kind = field(j, "kind").get<std::string>();
        if (kind == "nb") {
            NbModel m;
            m.alpha = field(j, "alpha").get<double>();
            m.n_features = field(j, "n_features").get<std::size_t>();
            m.class_log_prior = field(j, "class_log_prior").get<std::array<double, kNumLabels>>();
            const auto& rows = field(j, "feature_log_prob");
            if (rows.size() != kNumLabels) throw Error("artifact: feature_log_prob must have 3 rows");
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                m.feature_log_prob[c] = rows.at(c).get<std::vector<double>>();
                if (m.feature_log_prob[c].size() != m.n_features) throw Error("artifact: feature_log_prob width");
            }
            return m;
        }
        if (kind == "logistic" || kind == "svm") {
            LinearModel m;
            m.kind = kind == "logistic" ? LinearKind::Logistic : LinearKind::Svm;
            m.C = field(j, "C").get<double>();
            const auto& s = field(j, "solver");
            m.solver.kind = solver_from_string(field(s, "kind").get<std::string>());
            m.solver.tol = field(s, "tol").get<double>();
            m.solver.max_iter = field(s, "max_iter").get<std::size_t>();
            m.solver.seed = field(s, "seed").get<std::uint64_t>();
            m.n_features = field(j, "n_features").get<std::size_t>();
            for (const auto& name : field(j, "classes").get<std::vector<std::string>>()) {
                m.classes.push_back(label_from_name(name));
            }
            m.weights = field(j, "weights").get<std::vector<std::vector<double>>>();
            m.bias = field(j, "bias").get<std::vector<double>>();
            m.class_converged = field(j, "converged").get<std::vector<bool>>();
            m.iterations = field(j, "iterations").get<std::vector<std::size_t>>();
            m.objective = field(j, "objective").get<std::vector<double>>();
            if (m.weights.size() != m.classes.size() || m.bias.size() != m.classes.size()) {
                throw Error("artifact: weights/bias do not match classes");
            }
            for (const auto& w : m.weights) {
                if (w.size() != m.n_features) throw Error("artifact: weight vector width");
            }
            return m;
        }
        if (kind == "majority") {
            return MajorityModel{label_from_name(field(j, "label").get<std::string>()),
                                 field(j, "n_features").get<std::size_t>()};
        }
        throw Error("artifact: unknown classifier kind \"" + kind + "\"");
    } catch (const json::exception& e) {
        throw Error(std::string("artifact: malformed classifier: ") + e.what());
    }
}

json pipeline_to_json(const Pipeline& p) {
    return json{{"format", kArtifactFormat},
                {"version", kArtifactVersion},
                {"seed", p.seed},
                {"stopwords", {{"version", p.stopwords.version()}, {"words", p.stopwords.words()}}},
                {"vectorizer", tfidf_to_json(p.vectorizer)},
                {"classifier", classifier_to_json(p.classifier)}};
}

Pipeline pipeline_from_json(const json& j) {
    if (!j.is_object() || j.value("format", std::string()) != kArtifactFormat) {
        throw Error("not a " + std::string(kArtifactFormat) + " artifact");
    }
    const int version = j.value("version", -1);
    if (version != kArtifactVersion) {
        throw VersionMismatch("artifact version " + std::to_string(version) + " is not supported (expected " +
                              std::to_string(kArtifactVersion) + ")");
    }
    Pipeline p;
    try {
        p.seed = field(j, "seed").get<std::uint64_t>();
        const auto& sw = field(j, "stopwords");
        p.stopwords = StopwordList(field(sw, "words").get<std::vector<std::string>>(),
                                   field(sw, "version").get<std::string>());
    } catch (const json::exception& e) {
        throw Error(std::string("artifact: ") + e.what());
    }
    p.vectorizer = tfidf_from_json(field(j, "vectorizer"));
    p.classifier = classifier_from_json(field(j, "classifier"));
    p.check_compatible();
    return p;
}

void save_pipeline(const std::filesystem::path& path, const Pipeline& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << pipeline_to_json(p).dump() << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

Pipeline load_pipeline(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(path.string() + ": invalid JSON artifact");
    }
    return pipeline_from_json(j);
}

}  // namespace tweetguard
