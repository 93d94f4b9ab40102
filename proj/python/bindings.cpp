#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "tweetguard/cli.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/metrics.hpp"
#include "tweetguard/pipeline.hpp"
#include "tweetguard/porter.hpp"
#include "tweetguard/preprocess.hpp"

namespace py = pybind11;
namespace tg = tweetguard;

namespace {

tg::ClassifierSpec make_spec(const std::string& model, double alpha, double C, const std::string& solver) {
    if (model == "nb") return tg::NbSpec{alpha};
    if (model == "logistic") return tg::LogisticSpec{C, tg::default_solver(tg::solver_from_string(solver))};
    if (model == "svm") return tg::SvmSpec{C};
    if (model == "majority") return tg::MajoritySpec{};
    throw tg::Error("unknown model '" + model + "' (expected nb, logistic, svm or majority)");
}

std::vector<tg::Label> to_labels(const std::vector<std::string>& names) {
    std::vector<tg::Label> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(tg::label_from_name(n));
    return out;
}

py::dict prediction_dict(const tg::Prediction& p) {
    py::dict scores;
    for (const auto& [label, s] : p.scores) scores[py::str(std::string(tg::to_string(label)))] = s;
    py::dict d;
    d["label"] = std::string(tg::to_string(p.label));
    d["scores"] = scores;
    return d;
}

py::dict score_dict(const tg::ClassScore& s) {
    py::dict d;
    d["precision"] = s.precision;
    d["recall"] = s.recall;
    d["f1"] = s.f1;
    d["support"] = s.support;
    return d;
}

}  // namespace

PYBIND11_MODULE(_tweetguard, m) {
    m.doc() = "Native core of tweetguard";

    // Translators run newest first, so the subclass is registered last.
    const auto& error = py::register_exception<tg::Error>(m, "Error", PyExc_ValueError);
    py::register_exception<tg::VersionMismatch>(m, "VersionMismatch", error.ptr());

    m.def("clean", [](const std::string& s) { return tg::clean(s); }, py::arg("text"));
    m.def("tokenize", [](const std::string& s) { return tg::tokenize(s); }, py::arg("cleaned"));
    m.def("porter_stem", [](const std::string& s) { return tg::porter_stem(s); }, py::arg("token"));
    m.def(
        "preprocess", [](const std::string& s) { return tg::preprocess(s, tg::StopwordList::english()); },
        py::arg("text"), "clean, tokenize, drop English stopwords and stem");
    m.def("stopwords", [] { return tg::StopwordList::english().words(); });

    py::class_<tg::Pipeline>(m, "Pipeline")
        .def_static("load", &tg::load_pipeline, py::arg("path"))
        .def_static("from_json",
                    [](const std::string& s) { return tg::pipeline_from_json(nlohmann::json::parse(s)); })
        .def_static(
            "train",
            [](const std::vector<std::string>& texts, const std::vector<std::string>& labels,
               std::pair<int, int> ngram, const std::string& norm, const std::string& model, double alpha,
               double C, const std::string& solver, std::uint64_t seed) {
                if (texts.size() != labels.size()) throw tg::Error("texts and labels differ in length");
                const auto y = to_labels(labels);
                std::vector<tg::LabeledTweet> data;
                data.reserve(texts.size());
                for (std::size_t i = 0; i < texts.size(); ++i) data.push_back({std::nullopt, texts[i], y[i]});
                py::gil_scoped_release release;
                return tg::train_pipeline(data, tg::NgramRange{ngram.first, ngram.second},
                                          tg::norm_from_string(norm), make_spec(model, alpha, C, solver), seed);
            },
            py::arg("texts"), py::arg("labels"), py::arg("ngram") = std::pair{1, 3}, py::arg("norm") = "l2",
            py::arg("model") = "logistic", py::arg("alpha") = 1.0, py::arg("C") = 1.0,
            py::arg("solver") = "quasi_newton", py::arg("seed") = 42)
        .def("save", [](const tg::Pipeline& p, const std::filesystem::path& path) { tg::save_pipeline(path, p); })
        .def("to_json", [](const tg::Pipeline& p) { return tg::pipeline_to_json(p).dump(); })
        .def("classify", [](const tg::Pipeline& p, const std::string& text) { return prediction_dict(p.classify_text(text)); },
             py::arg("text"))
        .def("predict",
             [](const tg::Pipeline& p, const std::vector<std::string>& texts) {
                 std::vector<std::string> out;
                 out.reserve(texts.size());
                 for (const auto& t : texts) out.emplace_back(tg::to_string(p.classify_text(t).label));
                 return out;
             })
        .def_property_readonly("seed", [](const tg::Pipeline& p) { return p.seed; })
        .def_property_readonly("kind", [](const tg::Pipeline& p) { return std::string(tg::kind_name(p.classifier)); })
        .def_property_readonly("n_features", [](const tg::Pipeline& p) { return tg::n_features(p.classifier); });

    m.def(
        "evaluate",
        [](const std::vector<std::string>& y_true, const std::vector<std::string>& y_pred) {
            const auto cm = tg::confusion_matrix(to_labels(y_true), to_labels(y_pred));
            const auto report = tg::scores(cm);
            py::dict per_class;
            for (std::size_t c = 0; c < report.per_class.size(); ++c)
                per_class[py::str(std::string(tg::to_string(tg::label_from_index(static_cast<int>(c)))))] =
                    score_dict(report.per_class[c]);
            std::vector<std::vector<std::uint64_t>> counts(cm.n_classes(), std::vector<std::uint64_t>(cm.n_classes()));
            for (std::size_t t = 0; t < cm.n_classes(); ++t)
                for (std::size_t p = 0; p < cm.n_classes(); ++p) counts[t][p] = cm.at(t, p);
            py::dict d;
            d["per_class"] = per_class;
            d["macro"] = score_dict(report.macro);
            d["weighted"] = score_dict(report.weighted);
            d["accuracy"] = report.accuracy;
            d["confusion"] = counts;
            d["text"] = tg::format_scores(report);
            return d;
        },
        py::arg("y_true"), py::arg("y_pred"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::istringstream in(stdin_text);
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = tg::run_cli(args, in, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "", "Runs the command line in-process; returns (code, stdout, stderr).");
}
