#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tweetguard/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = tweetguard::run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t count_lines(const fs::path& p) {
    const auto s = slurp(p);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("tg_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const std::string kCorpus = TG_REPO_DATA_DIR "/corpus";

std::vector<std::string> prepare_args(const TempDir& d) {
    return {"prepare",     "-i", kCorpus + "/source_a.csv", "-i",         kCorpus + "/source_b.jsonl",
            "-i",          kCorpus + "/source_c.csv",       "--out-train", d / "train.csv",
            "--out-test",  d / "test.csv"};
}

}  // namespace

TEST_CASE("help exits 0 and documents the flags") {
    auto r = cli({"--help"});
    CHECK(r.code == 0);
    for (const char* sub : {"prepare", "grid", "train", "eval", "classify", "serve"}) CHECK(r.out.find(sub) != std::string::npos);
    r = cli({"serve", "--help"});
    CHECK(r.code == 0);
    for (const char* flag : {"--mode", "--blocked", "--simulate-twitter", "--port", "--stats"})
        CHECK(r.out.find(flag) != std::string::npos);
    r = cli({"train", "--help"});
    for (const char* flag : {"--ngram", "--norm", "--model", "--alpha", "--C", "--solver", "--seed"})
        CHECK(r.out.find(flag) != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"bogus"}).code == 1);
    CHECK(cli({"train", "--train"}).code == 1);
    CHECK(cli({"classify", "--model", "x.json", "--text", ""}).code == 1);
}

TEST_CASE("prepare conserves records and is deterministic") {
    TempDir d;
    auto r = cli(prepare_args(d));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("hateful") != std::string::npos);
    const std::size_t total = count_lines(kCorpus + "/source_a.csv") - 1 + count_lines(kCorpus + "/source_b.jsonl") +
                              count_lines(kCorpus + "/source_c.csv") - 1;
    CHECK(count_lines(d / "train.csv") - 1 + count_lines(d / "test.csv") - 1 == total);
    const auto train = slurp(d / "train.csv"), test = slurp(d / "test.csv");
    REQUIRE(cli(prepare_args(d)).code == 0);
    CHECK(slurp(d / "train.csv") == train);
    CHECK(slurp(d / "test.csv") == test);
}

TEST_CASE("unknown labels name the file and line") {
    TempDir d;
    {
        std::ofstream f(d / "bad.csv");
        f << "id,text,label\n1,fine,clean\n2,hmm,spam\n";
    }
    const auto r = cli({"prepare", "-i", d / "bad.csv", "--out-train", d / "a.csv", "--out-test", d / "b.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad.csv") != std::string::npos);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("spam") != std::string::npos);
}

TEST_CASE("grid with more folds than samples exits 1") {
    TempDir d;
    {
        std::ofstream f(d / "nine.csv");
        f << "id,text,label\n";
        for (int i = 0; i < 9; ++i) f << i << ",text " << i << "," << (i % 3 == 0 ? "clean" : "offensive") << "\n";
    }
    const auto r = cli({"grid", "--train", d / "nine.csv", "--grid", TG_REPO_DATA_DIR "/grids/table1.json", "--report",
                        d / "r.csv"});
    CHECK(r.code == 1);
}

TEST_CASE("train, eval, classify and serve end to end") {
    TempDir d;
    REQUIRE(cli(prepare_args(d)).code == 0);
    const std::vector<std::string> train{"train", "--train", d / "train.csv", "--model", "nb", "--alpha", "0.1",
                                         "--out", d / "m.json"};
    REQUIRE(cli(train).code == 0);
    const auto artifact = slurp(d / "m.json");
    REQUIRE(cli(train).code == 0);
    CHECK(slurp(d / "m.json") == artifact);
    CHECK(artifact.find("\"seed\":42") != std::string::npos);

    const auto e1 = cli({"eval", "--model", d / "m.json", "--data", d / "test.csv"});
    const auto e2 = cli({"eval", "--model", d / "m.json", "--data", d / "test.csv"});
    REQUIRE(e1.code == 0);
    CHECK(e1.out == e2.out);
    CHECK(e1.out.find("Classified as") != std::string::npos);
    CHECK(e1.out.find("weighted avg") != std::string::npos);

    auto c = cli({"classify", "--model", d / "m.json", "--text", "have a lovely walk in the park"});
    CHECK(c.code == 0);
    CHECK(c.out == "clean\n");
    c = cli({"classify", "--model", d / "m.json", "--json"}, "shut up you idiot\n\nlovely park\n");
    CHECK(c.code == 0);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 2);

    const std::string stream = R"({"id":"1","text":"have a lovely walk in the park","lang":"en"})"
                               "\nnot json\n"
                               R"({"id":"2","text":"shut up you stupid idiot"})"
                               "\n";
    auto s = cli({"serve", "--model", d / "m.json", "--mode", "filter", "--stats", d / "stats.json"}, stream);
    CHECK(s.code == 0);
    CHECK(s.out.find("\"lang\":\"en\"") != std::string::npos);
    CHECK(s.out.find("\"id\":\"2\"") == std::string::npos);
    const auto stats = nlohmann::json::parse(slurp(d / "stats.json"));
    CHECK(stats["lines_read"] == 3);
    CHECK(stats["skipped_invalid"] == 1);
    CHECK(stats["emitted"] == 1);
    CHECK(stats["suppressed"] == 1);
}

TEST_CASE("artifacts from another version are refused") {
    TempDir d;
    REQUIRE(cli(prepare_args(d)).code == 0);
    REQUIRE(cli({"train", "--train", d / "train.csv", "--model", "nb", "--out", d / "m.json"}).code == 0);
    auto j = nlohmann::json::parse(slurp(d / "m.json"));
    j["version"] = 99;
    {
        std::ofstream f(d / "old.json");
        f << j.dump();
    }
    const auto r = cli({"classify", "--model", d / "old.json", "--text", "hello"});
    CHECK(r.code == 1);
    CHECK(r.err.find("version") != std::string::npos);
}
