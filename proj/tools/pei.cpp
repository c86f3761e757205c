// Command-line front end. Exit codes: 0 success, 2 validation error,
// 3 estimation error, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pei/pipeline.hpp"

namespace {

using namespace pei;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

struct Window {
    std::string from;
    std::string to;

    void add(CLI::App* cmd, bool required) {
        auto* a = cmd->add_option("--from", from, "first day (YYYY-MM-DD)");
        auto* b = cmd->add_option("--to", to, "last day (YYYY-MM-DD)");
        if (required) {
            a->required();
            b->required();
        }
    }
    // Missing bounds default to the corpus extent.
    std::pair<Date, Date> resolve(const Corpus& c) const {
        if ((from.empty() || to.empty()) && c.empty())
            throw ValidationError("corpus is empty; --from and --to are required");
        return {from.empty() ? *c.date_min() : Date::parse(from), to.empty() ? *c.date_max() : Date::parse(to)};
    }
};

std::vector<double> read_values(const std::string& path) { return csv::read_dated_series(path).values; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Policy effectiveness index and volatility analysis"};
    app.require_subcommand(1);

    std::string corpus_path, lexicon_path, stopword_path, dictionary_path, out_path;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a corpus file and optionally write a filtered copy");
    Window ingest_window;
    std::string ingest_regions;
    ingest->add_option("--corpus", corpus_path, "corpus file (one JSON record per line)")->required();
    ingest_window.add(ingest, false);
    ingest->add_option("--regions", ingest_regions, "comma-separated regions to keep");
    ingest->add_option("--out", out_path, "write the filtered corpus here");

    // freq
    auto* freq = app.add_subcommand("freq", "term frequencies as token,count CSV");
    std::size_t freq_top = 100;
    freq->add_option("--corpus", corpus_path)->required();
    freq->add_option("--lexicon", lexicon_path)->required();
    freq->add_option("--stopwords", stopword_path);
    freq->add_option("--top", freq_top, "number of tokens")->capture_default_str();
    freq->add_option("--out", out_path);

    // lda
    auto* lda = app.add_subcommand("lda", "LDA topics in 'topic_i: w*token+...' form");
    LdaOptions lda_opt;
    std::size_t lda_top = 10;
    lda->add_option("--corpus", corpus_path)->required();
    lda->add_option("--lexicon", lexicon_path)->required();
    lda->add_option("--stopwords", stopword_path);
    lda->add_option("--k", lda_opt.topics, "topic count")->capture_default_str();
    lda->add_option("--iters", lda_opt.iterations, "Gibbs sweeps")->capture_default_str();
    lda->add_option("--seed", lda_opt.seed)->capture_default_str();
    lda->add_option("--alpha", lda_opt.alpha, "document-topic prior (default 50/K)");
    lda->add_option("--beta", lda_opt.beta, "topic-word prior")->capture_default_str();
    lda->add_option("--top", lda_top, "words per topic")->capture_default_str();
    lda->add_option("--out", out_path);

    // weights
    auto* weights = app.add_subcommand("weights", "entropy weights as keyword,type,d,w CSV");
    Window weights_window;
    weights->add_option("--corpus", corpus_path)->required();
    weights->add_option("--lexicon", lexicon_path)->required();
    weights->add_option("--stopwords", stopword_path);
    weights->add_option("--dictionary", dictionary_path, "keyword,type CSV")->required();
    weights_window.add(weights, false);
    weights->add_option("--out", out_path);

    // index
    auto* index = app.add_subcommand("index", "daily index per region (date,region,value)");
    Window index_window;
    std::string index_weights, index_wide;
    index->add_option("--corpus", corpus_path)->required();
    index->add_option("--lexicon", lexicon_path)->required();
    index->add_option("--stopwords", stopword_path);
    index->add_option("--dictionary", dictionary_path, "keyword,type CSV (weights recomputed)");
    index->add_option("--weights", index_weights, "precomputed keyword,type,d,w CSV");
    index_window.add(index, false);
    index->add_option("--out", out_path);
    index->add_option("--wide", index_wide, "also write the date,<region...> pivot here");

    // adf
    auto* adf = app.add_subcommand("adf", "augmented Dickey-Fuller test");
    std::vector<std::string> adf_series;
    std::string adf_spec = "c";
    int adf_lags = -1;
    adf->add_option("--series", adf_series, "date,value CSV files")->required();
    adf->add_option("--spec", adf_spec, "nc, c, ct or all")->capture_default_str();
    adf->add_option("--lags", adf_lags, "lag order (default floor((n-1)^(1/3)))");
    adf->add_option("--out", out_path);

    // ccf
    auto* ccf_cmd = app.add_subcommand("ccf", "lagged cross-correlation rho[k] = corr(y_t, x_{t-k})");
    std::string ccf_y, ccf_x;
    int max_lag = 14;
    ccf_cmd->add_option("--y", ccf_y, "follower series (date,value)")->required();
    ccf_cmd->add_option("--x", ccf_x, "leader series (date,value)")->required();
    ccf_cmd->add_option("--max-lag", max_lag)->capture_default_str();
    ccf_cmd->add_option("--out", out_path);

    // classify
    auto* classify = app.add_subcommand("classify", "cross-correlation shape properties of each region vs central");
    std::string classify_index, central = "Central";
    int short_majority = 5;
    classify->add_option("--index", classify_index, "long index CSV (date,region,value)")->required();
    classify->add_option("--central", central)->capture_default_str();
    classify->add_option("--max-lag", max_lag)->capture_default_str();
    classify->add_option("--short-majority", short_majority, "negative lags needed among 0..7")->capture_default_str();
    classify->add_option("--out", out_path);

    // garch
    auto* garch = app.add_subcommand("garch", "AR(1)+GARCH(1,1) fit of one series");
    std::string garch_series, garch_name;
    garch->add_option("--series", garch_series, "date,value CSV")->required();
    garch->add_option("--name", garch_name, "row label (default: file stem)");
    garch->add_option("--out", out_path);

    // dcc
    auto* dcc = app.add_subcommand("dcc", "two-stage DCC(1,1)-GARCH fit");
    std::string dcc_series, dcc_names, dcc_policy = "zero_fill", dcc_cov;
    dcc->add_option("--series", dcc_series, "comma-separated date,value CSV files")->required();
    dcc->add_option("--names", dcc_names, "comma-separated row labels (default: file stems)");
    dcc->add_option("--align", dcc_policy, "zero_fill or drop_closed_days")->capture_default_str();
    dcc->add_option("--out", out_path, "parameter table CSV");
    dcc->add_option("--cov-out", dcc_cov, "covariance path CSV (date,pair,value)");

    // groups
    auto* groups = app.add_subcommand("groups", "group volatility from a DCC fit of many series");
    std::string groups_panel, groups_map;
    groups->add_option("--series", groups_panel, "wide CSV date,<name...>")->required();
    groups->add_option("--groups", groups_map, "group,region CSV")->required();
    groups->add_option("--out", out_path);

    // report
    auto* report = app.add_subcommand("report", "run the whole pipeline from a config file");
    std::string config_path, out_dir = "report";
    report->add_option("--config", config_path)->required();
    report->add_option("--out", out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto stem = [](const std::string& p) { return std::filesystem::path(p).stem().string(); };

    try {
        if (*ingest) {
            Corpus c = load_corpus(corpus_path);
            if (!ingest_window.from.empty() || !ingest_window.to.empty() || !ingest_regions.empty()) {
                const auto [from, to] = ingest_window.resolve(c);
                std::optional<std::set<std::string>> regions;
                if (!ingest_regions.empty()) {
                    const auto list = split_list(ingest_regions);
                    regions.emplace(list.begin(), list.end());
                }
                c = filter_corpus(c, from, to, regions);
            }
            if (!out_path.empty()) save_corpus(c, out_path);
            std::map<std::string, std::size_t> per_region;
            for (const auto& d : c) ++per_region[d.region];
            csv::Table t{{"region", "documents"}, {}};
            for (const auto& [r, n] : per_region) t.rows.push_back({r, std::to_string(n)});
            std::cout << csv::to_string(t);
            std::cerr << c.size() << " documents";
            if (!c.empty()) std::cerr << ", " << c.date_min()->str() << " to " << c.date_max()->str();
            std::cerr << '\n';
        } else if (*freq) {
            const Corpus c = load_corpus(corpus_path);
            const Lexicon lex = load_lexicon(lexicon_path, stopword_path);
            csv::Table t{{"token", "count"}, {}};
            for (const auto& [tok, n] : top_terms(term_frequencies(c, lex), freq_top)) t.rows.push_back({tok, std::to_string(n)});
            emit(out_path, csv::to_string(t));
        } else if (*lda) {
            const Corpus c = load_corpus(corpus_path);
            const Lexicon lex = load_lexicon(lexicon_path, stopword_path);
            std::vector<std::vector<std::string>> docs;
            for (const auto& d : c) docs.push_back(document_tokens(d, lex));
            const auto model = fit_lda(docs, lda_opt);
            print_warnings(model.warnings);
            std::string text;
            for (int k = 0; k < model.topics; ++k) text += format_topic(model, k, lda_top) + "\n";
            emit(out_path, text);
        } else if (*weights) {
            const Corpus c = load_corpus(corpus_path);
            const Lexicon lex = load_lexicon(lexicon_path, stopword_path);
            const auto [from, to] = weights_window.resolve(c);
            std::vector<std::string> warnings;
            const auto entries = load_dictionary(dictionary_path, &warnings);
            const auto dict = corpus_dictionary(filter_corpus(c, from, to), lex, entries, from, to, &warnings);
            print_warnings(warnings);
            emit(out_path, csv::to_string(weights_table(dict)));
        } else if (*index) {
            const Corpus c = load_corpus(corpus_path);
            const Lexicon lex = load_lexicon(lexicon_path, stopword_path);
            const auto [from, to] = index_window.resolve(c);
            KeywordDictionary dict;
            if (!index_weights.empty()) {
                dict = parse_weights_table(csv::read(index_weights));
            } else if (!dictionary_path.empty()) {
                std::vector<std::string> warnings;
                dict = corpus_dictionary(filter_corpus(c, from, to), lex, load_dictionary(dictionary_path, &warnings),
                                         from, to, &warnings);
                print_warnings(warnings);
            } else {
                throw ValidationError("index: one of --weights or --dictionary is required");
            }
            const auto series = region_indices(c, lex, dict, from, to);
            emit(out_path, csv::to_string(index_long_table(series)));
            if (!index_wide.empty()) csv::write(index_wide, index_wide_table(series));
        } else if (*adf) {
            std::vector<std::pair<std::string, std::vector<AdfResult>>> rows;
            for (const auto& path : adf_series) {
                const auto values = read_values(path);
                const std::optional<int> lags = adf_lags >= 0 ? std::optional<int>(adf_lags) : std::nullopt;
                std::vector<AdfResult> results;
                if (adf_spec == "all") {
                    for (auto s : {AdfSpec::NC, AdfSpec::C, AdfSpec::CT}) results.push_back(adf_test(values, s, lags));
                } else {
                    results.push_back(adf_test(values, parse_adf_spec(adf_spec), lags));
                }
                rows.emplace_back(stem(path), std::move(results));
            }
            emit(out_path, csv::to_string(adf_long_table(rows)));
        } else if (*ccf_cmd) {
            const auto y = csv::read_dated_series(ccf_y);
            const auto x = csv::read_dated_series(ccf_x);
            if (y.dates != x.dates) throw ValidationError("ccf: series must share the same dates");
            const auto c = ccf(y.values, x.values, max_lag);
            csv::Table t{{"lag", "rho", "band"}, {}};
            for (int k = -max_lag; k <= max_lag; ++k) t.rows.push_back({std::to_string(k), csv::num(c.at(k)), csv::num(c.band)});
            emit(out_path, csv::to_string(t));
        } else if (*classify) {
            if (max_lag < 8) throw ValidationError("classify: --max-lag must be >= 8");
            std::vector<std::string> warnings;
            const auto series = parse_index_long(csv::read(classify_index));
            const auto rows = ccf_against_central(series, central, max_lag, &warnings);
            print_warnings(warnings);
            ClassifyOptions opt;
            opt.short_majority = short_majority;
            std::vector<std::pair<std::string, CcfClassification>> cls;
            for (const auto& [name, c] : rows) cls.emplace_back(name, classify_ccf(c, opt));
            emit(out_path, csv::to_string(classification_table(cls)));
        } else if (*garch) {
            const auto fit = fit_ar1_garch11(read_values(garch_series));
            emit(out_path, csv::to_string(to_csv(garch_param_table(fit, garch_name.empty() ? stem(garch_series) : garch_name))));
        } else if (*dcc) {
            const auto files = split_list(dcc_series);
            auto names = split_list(dcc_names);
            if (names.empty())
                for (const auto& f : files) names.push_back(stem(f));
            if (names.size() != files.size()) throw ValidationError("dcc: --names must match --series");
            std::vector<NamedSeries> inputs;
            for (std::size_t i = 0; i < files.size(); ++i) inputs.emplace_back(names[i], csv::read_dated_series(files[i]));
            const auto panel = align(inputs, parse_alignment_policy(dcc_policy));
            std::vector<std::vector<double>> series;
            for (const auto& [n, v] : panel.series) series.push_back(v);
            const auto fit = fit_dcc_garch(series, names);
            emit(out_path, csv::to_string(to_csv(param_table(fit))));
            if (!dcc_cov.empty()) {
                const std::vector<Date> dates(panel.dates.begin() + 1, panel.dates.end());
                csv::write(dcc_cov, dated_long_table("pair", dates, covariance_pairs(fit.H_path, names)));
            }
        } else if (*groups) {
            const auto panel = parse_panel(csv::read(groups_panel));
            std::vector<std::string> names;
            std::vector<std::vector<double>> series;
            for (const auto& [n, v] : panel.series) {
                names.push_back(n);
                series.push_back(v);
            }
            const GroupSpec spec = load_group_map(groups_map, names);
            const auto fit = fit_dcc_garch(series, names);
            const std::vector<Date> dates(panel.dates.begin() + 1, panel.dates.end());
            emit(out_path, csv::to_string(dated_long_table("group", dates, group_volatility(fit.H_path, spec))));
        } else if (*report) {
            const auto cfg = load_config(config_path);
            const auto bundle = run_pipeline(cfg, out_dir);
            print_warnings(bundle.warnings);
            for (const auto& f : bundle.files) std::cout << f << '\n';
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const EstimationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
