#include "tweetguard/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "tweetguard/corpus.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/gateway.hpp"
#include "tweetguard/metrics.hpp"
#include "tweetguard/model_selection.hpp"
#include "tweetguard/pipeline.hpp"
#include "tweetguard/text_util.hpp"

namespace tweetguard {
namespace {

struct Context {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool verbose = false;

    void log(const std::string& msg) const {
        if (verbose) err << "[tweetguard] " << msg << '\n';
    }
};

std::array<std::size_t, kNumLabels> class_counts(const std::vector<LabeledTweet>& data) {
    std::array<std::size_t, kNumLabels> c{};
    for (const auto& t : data) ++c[static_cast<std::size_t>(to_index(t.label))];
    return c;
}

NgramRange parse_range(const std::string& s) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) {
            const int n = std::stoi(s);
            return {1, n};
        }
        NgramRange r{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
        validate(r);
        return r;
    } catch (const std::logic_error&) {
        throw Error("invalid n-gram range \"" + s + "\" (expected MIN,MAX)");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    return f;
}

// --- prepare -------------------------------------------------------------

struct PrepareArgs {
    std::vector<std::string> inputs;
    std::string format = "auto";
    std::uint64_t seed = 42;
    double train_fraction = 0.7;
    std::string out_train;
    std::string out_test;
};

int cmd_prepare(const PrepareArgs& a, Context& ctx) {
    std::vector<LabeledTweet> merged;
    for (const auto& path : a.inputs) {
        const RecordFormat fmt = a.format == "auto"  ? format_from_path(path)
                                 : a.format == "csv" ? RecordFormat::Csv
                                                     : RecordFormat::Jsonl;
        std::vector<LabeledTweet> part;
        try {
            part = to_labeled(load_records(path, fmt));
        } catch (const Error& e) {
            throw Error(path + ": " + e.what());
        }
        ctx.log("loaded " + std::to_string(part.size()) + " records from " + path);
        merged.insert(merged.end(), part.begin(), part.end());
    }
    const auto split = shuffle_split(merged, {a.train_fraction, a.seed});
    write_csv(a.out_train, split.train);
    write_csv(a.out_test, split.test);

    ctx.out << "seed " << a.seed << ", train fraction " << a.train_fraction << '\n';
    ctx.out << std::left << std::setw(8) << "split";
    for (Label l : kAllLabels) ctx.out << std::right << std::setw(11) << to_string(l);
    ctx.out << std::setw(9) << "total" << '\n';
    for (const auto& [name, part] : {std::pair{"train", &split.train}, std::pair{"test", &split.test}}) {
        const auto c = class_counts(*part);
        ctx.out << std::left << std::setw(8) << name;
        for (auto v : c) ctx.out << std::right << std::setw(11) << v;
        ctx.out << std::setw(9) << part->size() << '\n';
    }
    return 0;
}

// --- grid ----------------------------------------------------------------

struct GridArgs {
    std::string train;
    std::string grid;
    std::string report;
    std::string table;
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
};

int cmd_grid(const GridArgs& a, Context& ctx) {
    auto grid = load_grid_config(a.grid);
    if (a.seed) grid.seed = *a.seed;
    if (a.jobs != 1) grid.jobs = a.jobs;
    const auto data = load_labeled(a.train);
    ctx.log("evaluating " + std::to_string(grid.specs.size()) + " cells with " + std::to_string(grid.k) + "-fold CV");
    const auto report = grid_search(grid, data);

    {
        auto f = open_out(a.report);
        write_report_csv(f, report);
    }
    if (!a.table.empty()) {
        auto f = open_out(a.table);
        write_table_csv(f, report);
    }
    write_table_csv(ctx.out, report);
    const auto& best = report.best();
    ctx.out << "best: " << describe(best.spec) << " mean accuracy " << std::fixed << std::setprecision(3)
            << best.mean << " (seed " << report.seed << ")\n";
    return 0;
}

// --- train ---------------------------------------------------------------

struct TrainArgs {
    std::string train;
    std::string out;
    std::string ngram = "1,3";
    std::string norm = "l2";
    std::string model = "logistic";
    double alpha = 1.0;
    double C = 1.0;
    std::string solver = "quasi_newton";
    double tol = 1e-6;
    std::size_t max_iter = 0;
    std::uint64_t seed = 42;
};

ClassifierSpec build_classifier(const TrainArgs& a) {
    if (a.model == "nb") return NbSpec{a.alpha};
    if (a.model == "logistic") {
        auto solver = default_solver(solver_from_string(a.solver));
        solver.tol = a.tol;
        if (a.max_iter) solver.max_iter = a.max_iter;
        solver.seed = a.seed;
        return LogisticSpec{a.C, solver};
    }
    if (a.model == "svm") {
        SvmSpec s;
        s.C = a.C;
        s.tol = a.tol;
        if (a.max_iter) s.max_iter = a.max_iter;
        return s;
    }
    if (a.model == "majority") return MajoritySpec{};
    throw Error("unknown model \"" + a.model + "\"");
}

int cmd_train(const TrainArgs& a, Context& ctx) {
    const auto spec = build_classifier(a);
    const auto range = parse_range(a.ngram);
    const auto norm = norm_from_string(a.norm);
    const auto data = load_labeled(a.train);
    const auto pipeline = train_pipeline(data, range, norm, spec, a.seed);
    save_pipeline(a.out, pipeline);

    ctx.out << "trained " << describe(PipelineSpec{range, norm, spec}) << " on " << data.size() << " records, "
            << pipeline.vectorizer.n_features() << " features (seed " << a.seed << ")\n";
    if (const auto* lin = std::get_if<LinearModel>(&pipeline.classifier); lin && !lin->converged()) {
        ctx.err << "warning: solver did not converge within max_iter for at least one class\n";
    }
    return 0;
}

// --- eval ----------------------------------------------------------------

struct EvalArgs {
    std::string model;
    std::string data;
    std::string scores_csv;
    std::string confusion_csv;
};

int cmd_eval(const EvalArgs& a, Context& ctx) {
    const auto pipeline = load_pipeline(a.model);
    const auto data = load_labeled(a.data);
    if (data.empty()) throw Error(a.data + ": no records");
    std::vector<Label> truth, pred;
    for (const auto& t : data) {
        truth.push_back(t.label);
        pred.push_back(pipeline.classify_text(t.text).label);
    }
    const auto cm = confusion_matrix(truth, pred);
    const auto report = scores(cm);

    ctx.out << "Classification scores (" << data.size() << " records)\n" << format_scores(report) << '\n';
    ctx.out << "Confusion matrix (counts)\n";
    write_confusion_csv(ctx.out, cm);
    ctx.out << "\nConfusion matrix (row-normalized)\n" << format_confusion(cm);

    if (!a.scores_csv.empty()) {
        auto f = open_out(a.scores_csv);
        write_scores_csv(f, report);
    }
    if (!a.confusion_csv.empty()) {
        auto f = open_out(a.confusion_csv);
        write_confusion_csv(f, cm);
    }
    return 0;
}

// --- classify ------------------------------------------------------------

struct ClassifyArgs {
    std::string model;
    std::optional<std::string> text;
    bool json = false;
};

void print_prediction(const Prediction& p, bool as_json, std::ostream& out) {
    if (!as_json) {
        out << to_string(p.label) << '\n';
        return;
    }
    nlohmann::json scores = nlohmann::json::object();
    for (const auto& [l, v] : p.scores) scores[std::string(to_string(l))] = v;
    out << nlohmann::json{{"label", to_string(p.label)}, {"scores", scores}}.dump() << '\n';
}

int cmd_classify(const ClassifyArgs& a, Context& ctx) {
    if (a.text && a.text->empty()) throw Error("--text is empty");
    const auto pipeline = load_pipeline(a.model);
    if (a.text) {
        print_prediction(pipeline.classify_text(*a.text), a.json, ctx.out);
        return 0;
    }
    std::string line;
    while (std::getline(ctx.in, line)) {
        if (trim(line).empty()) continue;
        print_prediction(pipeline.classify_text(line), a.json, ctx.out);
    }
    return 0;
}

// --- serve ---------------------------------------------------------------

struct ServeArgs {
    std::string model;
    std::string input = "-";
    std::optional<int> port;
    std::string host = "127.0.0.1";
    std::string output = "-";
    std::string mode = "annotate";
    std::string blocked = "hateful,offensive";
    std::string stats;
    bool simulate_twitter = false;
    std::size_t rate_capacity = 15;
    double rate_window = 900.0;
};

int cmd_serve(const ServeArgs& a, Context& ctx) {
    const auto pipeline = load_pipeline(a.model);
    StreamPolicy policy;
    policy.mode = stream_mode_from_string(a.mode);
    policy.blocked = parse_blocked(a.blocked);

    std::unique_ptr<std::ifstream> file_in;
    std::unique_ptr<LineSource> source;
    if (a.port) {
        if (*a.port < 0 || *a.port > 65535) throw Error("--port out of range");
        auto tcp = std::make_unique<TcpLineSource>(static_cast<std::uint16_t>(*a.port), a.host);
        ctx.log("listening on " + a.host + ":" + std::to_string(tcp->port()));
        source = std::move(tcp);
    } else if (a.input == "-") {
        source = std::make_unique<StreamLineSource>(ctx.in);
    } else {
        file_in = std::make_unique<std::ifstream>(a.input, std::ios::binary);
        if (!*file_in) throw Error("cannot open " + a.input);
        source = std::make_unique<StreamLineSource>(*file_in);
    }

    std::unique_ptr<std::ofstream> file_out;
    std::ostream* sink = &ctx.out;
    if (a.output != "-") {
        file_out = std::make_unique<std::ofstream>(open_out(a.output));
        sink = file_out.get();
    }

    std::optional<RateLimiter> limiter;
    SteadyClock clock;
    RateControl rate;
    if (a.simulate_twitter) {
        if (a.rate_capacity == 0) throw Error("--rate-capacity must be at least 1");
        limiter.emplace(a.rate_capacity, Seconds{a.rate_window});
        rate = {&*limiter, &clock};
    }

    auto emit_stats = [&](const StreamStats& s) {
        const auto doc = s.to_json().dump();
        if (a.stats.empty()) {
            ctx.err << doc << '\n';
        } else {
            auto f = open_out(a.stats);
            f << doc << '\n';
        }
    };
    try {
        emit_stats(run_stream(*source, *sink, policy, pipeline, rate));
    } catch (const StreamError& e) {
        ctx.err << "error: " << e.what() << '\n' << e.stats().to_json().dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Context ctx{in, out, err};
    CLI::App app{"tweetguard: hate speech / offensive language classification with n-gram TFIDF features"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", ctx.verbose, "Log progress to stderr");

    PrepareArgs prep;
    auto* sp = app.add_subcommand("prepare", "Merge labeled datasets, map labels and write a shuffled train/test split");
    sp->add_option("-i,--input", prep.inputs, "Input dataset (csv or jsonl); repeatable")->required();
    sp->add_option("--format", prep.format, "Input format")->check(CLI::IsMember({"auto", "csv", "jsonl"}));
    sp->add_option("--seed", prep.seed, "Shuffle seed");
    sp->add_option("--train-fraction", prep.train_fraction, "Fraction of records in the training split");
    sp->add_option("--out-train", prep.out_train, "Training split output (csv)")->required();
    sp->add_option("--out-test", prep.out_test, "Test split output (csv)")->required();

    GridArgs grid;
    auto* sg = app.add_subcommand("grid", "k-fold cross-validated grid search");
    sg->add_option("--train", grid.train, "Training data (csv or jsonl)")->required();
    sg->add_option("--grid", grid.grid, "Grid configuration (JSON)")->required();
    sg->add_option("--report", grid.report, "Ranked report output (csv)")->required();
    sg->add_option("--table", grid.table, "Feature-by-model accuracy table output (csv)");
    sg->add_option("--jobs", grid.jobs, "Worker threads (0 = all cores)");
    sg->add_option("--seed", grid.seed, "Override the fold seed from the grid file");

    TrainArgs train;
    auto* st = app.add_subcommand("train", "Fit a pipeline and write the model artifact");
    st->add_option("--train", train.train, "Training data (csv or jsonl)")->required();
    st->add_option("-o,--out", train.out, "Model artifact output (JSON)")->required();
    st->add_option("--ngram", train.ngram, "N-gram range MIN,MAX");
    st->add_option("--norm", train.norm, "TFIDF normalization")->check(CLI::IsMember({"l1", "l2", "none"}));
    st->add_option("--model", train.model, "Classifier")->check(CLI::IsMember({"nb", "logistic", "svm", "majority"}));
    st->add_option("--alpha", train.alpha, "Naive Bayes smoothing prior");
    st->add_option("--C", train.C, "Inverse regularization strength (logistic, svm)");
    st->add_option("--solver", train.solver, "Logistic solver: quasi_newton, newton, stochastic_average");
    st->add_option("--tol", train.tol, "Gradient infinity-norm tolerance");
    st->add_option("--max-iter", train.max_iter, "Iteration (epoch) limit; 0 = solver default");
    st->add_option("--seed", train.seed, "Seed for the stochastic solver, recorded in the artifact");

    EvalArgs eval;
    auto* se = app.add_subcommand("eval", "Score a model artifact against labeled data");
    se->add_option("--model", eval.model, "Model artifact")->required();
    se->add_option("--data", eval.data, "Labeled data (csv or jsonl)")->required();
    se->add_option("--scores-csv", eval.scores_csv, "Write per-class scores as csv");
    se->add_option("--confusion-csv", eval.confusion_csv, "Write confusion counts as csv");

    ClassifyArgs cls;
    auto* sc = app.add_subcommand("classify", "Label --text or each line of stdin");
    sc->add_option("--model", cls.model, "Model artifact")->required();
    sc->add_option("--text", cls.text, "Text to classify (otherwise stdin lines)");
    sc->add_flag("--json", cls.json, "Print label and scores as JSON");

    ServeArgs serve;
    auto* sv = app.add_subcommand("serve", "Annotate or filter a JSONL record stream");
    sv->add_option("--model", serve.model, "Model artifact")->required();
    sv->add_option("--input", serve.input, "JSONL input file, or - for stdin");
    sv->add_option("--port", serve.port, "Listen for newline-delimited JSON on this TCP port instead");
    sv->add_option("--host", serve.host, "Listen address for --port");
    sv->add_option("--output", serve.output, "Output file, or - for stdout");
    sv->add_option("--mode", serve.mode, "annotate or filter")->check(CLI::IsMember({"annotate", "filter"}));
    sv->add_option("--blocked", serve.blocked, "Comma-separated labels dropped in filter mode");
    sv->add_option("--stats", serve.stats, "Write final stream statistics JSON here (default stderr)");
    sv->add_flag("--simulate-twitter", serve.simulate_twitter, "Apply the read rate limiter to source reads");
    sv->add_option("--rate-capacity", serve.rate_capacity, "Reads allowed per window");
    sv->add_option("--rate-window", serve.rate_window, "Window length in seconds");

    std::vector<std::string> argv_storage{"tweetguard"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sp) return cmd_prepare(prep, ctx);
        if (*sg) return cmd_grid(grid, ctx);
        if (*st) return cmd_train(train, ctx);
        if (*se) return cmd_eval(eval, ctx);
        if (*sc) return cmd_classify(cls, ctx);
        if (*sv) return cmd_serve(serve, ctx);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace tweetguard
