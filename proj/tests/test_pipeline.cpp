#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include <sys/wait.h>

#include "pei/pipeline.hpp"
#include "test_util.hpp"

using namespace pei;

namespace {

csv::DatedSeries series(std::initializer_list<std::pair<const char*, double>> pts) {
    csv::DatedSeries s;
    for (const auto& [d, v] : pts) {
        s.dates.push_back(Date::parse(d));
        s.values.push_back(v);
    }
    return s;
}

std::string demo_config() { return std::string(PEI_SOURCE_DIR) + "/data/demo/demo.conf"; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PEI_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Align, ZeroFillWeekend) {
    const auto index = series({{"2020-03-06", 1.0}, {"2020-03-07", 2.0}, {"2020-03-08", 3.0}, {"2020-03-09", 4.0}});
    const auto stock = series({{"2020-03-06", 0.5}, {"2020-03-09", -0.2}});
    const auto p = align({{"index", index}, {"stock", stock}}, AlignmentPolicy::ZeroFill);
    ASSERT_EQ(p.dates.size(), 4u);
    EXPECT_EQ(p.at("stock"), (std::vector<double>{0.5, 0.0, 0.0, -0.2}));
    EXPECT_EQ(p.at("index"), index.values);
}

TEST(Align, DropClosedDaysKeepsSharedDates) {
    const auto a = series({{"2020-01-01", 1}, {"2020-01-02", 2}, {"2020-01-03", 3}});
    const auto b = series({{"2020-01-02", 5}, {"2020-01-04", 6}});
    const auto c = series({{"2020-01-02", 7}, {"2020-01-03", 8}});
    const auto p = align({{"a", a}, {"b", b}, {"c", c}}, AlignmentPolicy::DropClosedDays);
    ASSERT_EQ(p.dates.size(), 1u);
    EXPECT_EQ(p.dates[0], Date(2020, 1, 2));
    EXPECT_EQ(p.at("c"), (std::vector<double>{7}));
    EXPECT_EQ(panel_table(p).header, (csv::Row{"date", "a", "b", "c"}));
}

TEST(Align, Errors) {
    const auto a = series({{"2020-01-01", 1}});
    const auto b = series({{"2020-01-02", 1}});
    EXPECT_THROW(align({{"a", a}, {"b", b}}, AlignmentPolicy::DropClosedDays), ValidationError);
    csv::DatedSeries unsorted = series({{"2020-01-02", 1}, {"2020-01-01", 2}});
    EXPECT_THROW(align({{"u", unsorted}}, AlignmentPolicy::ZeroFill), ArgumentError);
    EXPECT_THROW(parse_alignment_policy("fill"), ValidationError);
}

TEST(Config, LoadsAndResolvesPaths) {
    const auto cfg = load_config(demo_config());
    EXPECT_EQ(cfg.from, Date(2020, 1, 1));
    EXPECT_EQ(cfg.to, Date(2020, 4, 16));
    EXPECT_EQ(cfg.alignment_policy, AlignmentPolicy::DropClosedDays);
    EXPECT_TRUE(std::filesystem::exists(cfg.corpus_path));
    EXPECT_TRUE(std::filesystem::exists(cfg.dictionary_path));
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, RejectsShortLagWindow) {
    testutil::TempDir dir;
    std::string text = testutil::slurp(demo_config());
    text += "\nccf_max_lag = 7\n";
    const auto path = dir.file("c.conf", text);
    bool rejected = false;
    try {
        load_config(path).validate();
    } catch (const ValidationError&) {
        rejected = true;
    }
    EXPECT_TRUE(rejected);
}

TEST(Config, RejectsUnknownKeyAndBadWindow) {
    testutil::TempDir dir;
    EXPECT_THROW(load_config(dir.file("a.conf", "colour = red\n")), ValidationError);
    EXPECT_THROW(load_config(dir.file("b.conf", "corpus = x\nfrom = 2020-02-01\nto = 2020-01-01\n")), ValidationError);
    EXPECT_THROW(load_config(dir.path("missing.conf")), IoError);
}

TEST(GroupMap, ResolvesNames) {
    testutil::TempDir dir;
    const auto path = dir.file("g.csv", "group,region\nnorth,A\nnorth,B\nsouth,C\n");
    const auto spec = load_group_map(path, {"C", "B", "A"});
    ASSERT_EQ(spec.groups.size(), 2u);
    EXPECT_EQ(spec.groups[0].second, (std::vector<std::size_t>{2, 1}));
    EXPECT_THROW(load_group_map(dir.file("h.csv", "group,region\nx,Z\n"), {"A"}), ValidationError);
}

TEST(Classification, CountRow) {
    const auto t = classification_table({{"A", {true, false, true}}, {"B", {true, true, false}}});
    EXPECT_EQ(t.header, (csv::Row{"region", "right_volatility_bias", "short_negative", "long_positive"}));
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows[2], (csv::Row{"Count", "2", "1", "1"}));
}

TEST(Report, DemoIsDeterministic) {
    testutil::TempDir a, b;
    const auto cfg = load_config(demo_config());
    const auto ra = run_pipeline(cfg, a.path());
    const auto rb = run_pipeline(cfg, b.path());
    ASSERT_EQ(ra.files, rb.files);
    int csvs = 0;
    for (const auto& f : ra.files) {
        EXPECT_EQ(testutil::slurp(a.path(f)), testutil::slurp(b.path(f))) << f;
        if (f.ends_with(".csv")) ++csvs;
    }
    EXPECT_GE(csvs, 12);
    const auto params = csv::read(a.path("dcc_params.csv"));
    EXPECT_EQ(params.rows.size(), 17u);
    const auto cls = csv::read(a.path("classify.csv"));
    EXPECT_EQ(cls.rows.back()[0], "Count");
}

TEST(Cli, ExitCodes) {
    testutil::TempDir dir;
    EXPECT_EQ(run_cli("report --config " + demo_config() + " --out " + dir.path("r")), 0);
    EXPECT_EQ(run_cli("report --config " + dir.path("nope.conf")), 4);

    const auto bad = dir.file("bad.conf", testutil::slurp(demo_config()) + "\nccf_max_lag = 7\n");
    EXPECT_EQ(run_cli("report --config " + bad + " --out " + dir.path("r2")), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);

    std::string flat = "date,value\n";
    for (int d = 1; d <= 60; ++d) flat += (Date(2020, 1, 1) + d).str() + ",1\n";
    EXPECT_EQ(run_cli("garch --series " + dir.file("flat.csv", flat)), 2);

    const auto ok = dir.file("x.csv", "date,value\n2020-01-01,1\n2020-01-02,3\n");
    EXPECT_EQ(run_cli("ccf --y " + ok + " --x " + dir.file("y.csv", "date,value\n2020-01-01,x\n")), 2);
}

TEST(Cli, SubcommandsOnDemo) {
    testutil::TempDir dir;
    const std::string data = std::string(PEI_SOURCE_DIR) + "/data/demo/";
    const std::string text = "--corpus " + data + "corpus.jsonl --lexicon " + data + "lexicon.txt --stopwords " + data +
                             "stopwords.txt";
    EXPECT_EQ(run_cli("ingest --corpus " + data + "corpus.jsonl --regions Central,Hubei --out " + dir.path("c.jsonl")), 0);
    EXPECT_EQ(load_corpus(dir.path("c.jsonl")).regions(), (std::set<std::string>{"Central", "Hubei"}));
    EXPECT_EQ(run_cli("freq " + text + " --top 5 --out " + dir.path("f.csv")), 0);
    EXPECT_EQ(csv::read(dir.path("f.csv")).rows.size(), 5u);
    EXPECT_EQ(run_cli("weights " + text + " --dictionary " + PEI_SOURCE_DIR + "/data/dictionary.csv --out " +
                      dir.path("w.csv")),
              0);
    EXPECT_EQ(run_cli("index " + text + " --weights " + dir.path("w.csv") + " --out " + dir.path("i.csv")), 0);
    EXPECT_EQ(run_cli("classify --index " + dir.path("i.csv") + " --out " + dir.path("k.csv")), 0);
    EXPECT_EQ(csv::read(dir.path("k.csv")).rows.back()[0], "Count");
    EXPECT_EQ(run_cli("adf --series " + data + "stock.csv --spec all --out " + dir.path("a.csv")), 0);
    EXPECT_EQ(csv::read(dir.path("a.csv")).rows.size(), 3u);
    EXPECT_EQ(run_cli("garch --series " + data + "stock.csv --out " + dir.path("g.csv")), 0);
    EXPECT_EQ(csv::read(dir.path("g.csv")).rows.size(), 5u);
}
