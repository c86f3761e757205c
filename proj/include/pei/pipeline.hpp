#pragma once

// End-to-end orchestration: configuration, series alignment and the report
// bundle written by `pei report`.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pei/corpus.hpp"
#include "pei/csv.hpp"
#include "pei/date.hpp"
#include "pei/diagnostics.hpp"
#include "pei/error.hpp"
#include "pei/index.hpp"
#include "pei/svg_chart.hpp"
#include "pei/textproc.hpp"
#include "pei/topics.hpp"
#include "pei/volatility.hpp"

namespace pei {

// ---- alignment -------------------------------------------------------------

enum class AlignmentPolicy { DropClosedDays, ZeroFill };

inline const char* to_string(AlignmentPolicy p) {
    return p == AlignmentPolicy::DropClosedDays ? "drop_closed_days" : "zero_fill";
}

inline AlignmentPolicy parse_alignment_policy(const std::string& s) {
    if (s == "drop_closed_days") return AlignmentPolicy::DropClosedDays;
    if (s == "zero_fill") return AlignmentPolicy::ZeroFill;
    throw ValidationError("unknown alignment policy '" + s + "' (expected drop_closed_days or zero_fill)");
}

struct AlignedPanel {
    AlignmentPolicy policy = AlignmentPolicy::ZeroFill;
    std::vector<Date> dates;
    std::vector<std::pair<std::string, std::vector<double>>> series;  // input order

    const std::vector<double>& at(const std::string& name) const {
        for (const auto& [n, v] : series)
            if (n == name) return v;
        throw ArgumentError("panel has no series '" + name + "'");
    }
};

using NamedSeries = std::pair<std::string, csv::DatedSeries>;

// drop_closed_days keeps dates present in every series; zero_fill keeps the
// union of dates and fills gaps with 0.
inline AlignedPanel align(const std::vector<NamedSeries>& inputs, AlignmentPolicy policy) {
    if (inputs.empty()) throw ArgumentError("align: no series");
    std::vector<std::map<Date, double>> lookup;
    for (const auto& [name, s] : inputs) {
        if (s.dates.size() != s.values.size()) throw ArgumentError("align: '" + name + "' has ragged columns");
        std::map<Date, double> m;
        for (std::size_t i = 0; i < s.dates.size(); ++i) {
            if (i > 0 && !(s.dates[i - 1] < s.dates[i]))
                throw ArgumentError("align: '" + name + "' is not sorted by date");
            m.emplace(s.dates[i], s.values[i]);
        }
        lookup.push_back(std::move(m));
    }
    std::set<Date> dates;
    if (policy == AlignmentPolicy::ZeroFill) {
        for (const auto& m : lookup)
            for (const auto& kv : m) dates.insert(kv.first);
    } else {
        for (const auto& kv : lookup.front()) {
            bool everywhere = true;
            for (const auto& m : lookup) everywhere = everywhere && m.contains(kv.first);
            if (everywhere) dates.insert(kv.first);
        }
        if (dates.empty()) throw ValidationError("alignment: series share no dates");
    }
    AlignedPanel p;
    p.policy = policy;
    p.dates.assign(dates.begin(), dates.end());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        std::vector<double> v;
        v.reserve(p.dates.size());
        for (Date d : p.dates) {
            auto it = lookup[k].find(d);
            v.push_back(it == lookup[k].end() ? 0.0 : it->second);
        }
        p.series.emplace_back(inputs[k].first, std::move(v));
    }
    return p;
}

inline csv::Table panel_table(const AlignedPanel& p) {
    csv::Table t{{"date"}, {}};
    for (const auto& [name, v] : p.series) t.header.push_back(name);
    for (std::size_t i = 0; i < p.dates.size(); ++i) {
        csv::Row r{p.dates[i].str()};
        for (const auto& [name, v] : p.series) r.push_back(csv::num(v[i]));
        t.rows.push_back(std::move(r));
    }
    return t;
}

// Wide `date,<name...>` table back into a panel.
inline AlignedPanel parse_panel(const csv::Table& t, AlignmentPolicy policy = AlignmentPolicy::ZeroFill) {
    if (t.header.size() < 2 || t.header[0] != "date") throw ValidationError("expected header date,<series...>");
    AlignedPanel p;
    p.policy = policy;
    for (std::size_t j = 1; j < t.header.size(); ++j) p.series.emplace_back(t.header[j], std::vector<double>{});
    std::size_t line = 1;
    for (const auto& r : t.rows) {
        ++line;
        if (r.size() != t.header.size()) throw ValidationError("line " + std::to_string(line) + ": wrong field count");
        p.dates.push_back(Date::parse(r[0]));
        for (std::size_t j = 1; j < r.size(); ++j) p.series[j - 1].second.push_back(csv::parse_double(r[j], line));
    }
    return p;
}

// ---- configuration ---------------------------------------------------------

struct LdaConfig {
    int topics = 5;
    double alpha = -1.0;  // 50 / topics
    double beta = 0.01;
    int iterations = 500;
    std::uint64_t seed = 1;
    int top_words = 10;
};

struct PipelineConfig {
    std::string corpus_path;
    std::string lexicon_path;
    std::string stopword_path;  // optional
    std::string dictionary_path;
    std::string group_map_path;
    std::string covid_path;
    std::string stock_path;
    Date from;
    Date to;
    std::string central_region = "Central";
    int ccf_max_lag = 14;
    int freq_top = 100;
    LdaConfig lda;
    AlignmentPolicy alignment_policy = AlignmentPolicy::ZeroFill;

    void validate() const {
        if (to < from) throw ValidationError("config: window start " + from.str() + " is after end " + to.str());
        if (ccf_max_lag < 8) throw ValidationError("config: ccf_max_lag must be >= 8");
        if (lda.topics < 1) throw ValidationError("config: lda_topics must be >= 1");
        if (lda.iterations < 1) throw ValidationError("config: lda_iterations must be >= 1");
        for (const auto* p : {&corpus_path, &lexicon_path, &dictionary_path, &group_map_path, &covid_path, &stock_path})
            if (p->empty()) throw ValidationError("config: missing required path");
    }
};

// Flat `key = value` text; '#' starts a comment. Relative paths resolve
// against the config file's directory.
inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& v) {
        const std::filesystem::path p(v);
        return (p.is_absolute() ? p : base / p).lexically_normal().string();
    };
    PipelineConfig cfg;
    bool have_from = false, have_to = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto as_int = [&] {
            try {
                std::size_t used = 0;
                const int v = std::stoi(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
                return v;
            } catch (const std::exception&) {
                throw ValidationError("config line " + std::to_string(line_no) + ": '" + key + "' needs an integer");
            }
        };
        auto as_double = [&] {
            try {
                return csv::parse_double(value, static_cast<std::size_t>(line_no));
            } catch (const ValidationError&) {
                throw ValidationError("config line " + std::to_string(line_no) + ": '" + key + "' needs a number");
            }
        };
        if (key == "corpus") cfg.corpus_path = resolve(value);
        else if (key == "lexicon") cfg.lexicon_path = resolve(value);
        else if (key == "stopwords") cfg.stopword_path = value.empty() ? "" : resolve(value);
        else if (key == "dictionary") cfg.dictionary_path = resolve(value);
        else if (key == "groups") cfg.group_map_path = resolve(value);
        else if (key == "covid") cfg.covid_path = resolve(value);
        else if (key == "stock") cfg.stock_path = resolve(value);
        else if (key == "from") { cfg.from = Date::parse(value); have_from = true; }
        else if (key == "to") { cfg.to = Date::parse(value); have_to = true; }
        else if (key == "central_region") cfg.central_region = value;
        else if (key == "ccf_max_lag") cfg.ccf_max_lag = as_int();
        else if (key == "freq_top") cfg.freq_top = as_int();
        else if (key == "lda_topics") cfg.lda.topics = as_int();
        else if (key == "lda_alpha") cfg.lda.alpha = as_double();
        else if (key == "lda_beta") cfg.lda.beta = as_double();
        else if (key == "lda_iterations") cfg.lda.iterations = as_int();
        else if (key == "lda_seed") cfg.lda.seed = static_cast<std::uint64_t>(as_int());
        else if (key == "lda_top_words") cfg.lda.top_words = as_int();
        else if (key == "alignment") cfg.alignment_policy = parse_alignment_policy(value);
        else throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!have_from || !have_to) throw ValidationError("config: 'from' and 'to' are required");
    cfg.validate();
    return cfg;
}

// ---- shared building blocks --------------------------------------------------

inline std::vector<std::string> keyword_list(const std::vector<DictionaryEntry>& entries) {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.keyword);
    return out;
}

// Static dictionary: one weight per keyword from the all-region daily counts
// over the window.
inline KeywordDictionary corpus_dictionary(const Corpus& corpus, const Lexicon& lex,
                                           const std::vector<DictionaryEntry>& entries, Date from, Date to,
                                           std::vector<std::string>* warnings = nullptr) {
    const auto m = pooled_keyword_counts(corpus, lex, keyword_list(entries), from, to);
    return build_dictionary(m, entries, warnings);
}

inline std::vector<IndexSeries> region_indices(const Corpus& corpus, const Lexicon& lex, const KeywordDictionary& dict,
                                               Date from, Date to) {
    std::vector<std::string> keywords;
    for (const auto& k : dict.keywords) keywords.push_back(k.keyword);
    std::vector<IndexSeries> out;
    for (const auto& region : corpus.regions())
        out.push_back(effectiveness_index(daily_keyword_counts(corpus, lex, keywords, region, from, to), dict, region));
    return out;
}

inline csv::Table adf_long_table(const std::vector<std::pair<std::string, std::vector<AdfResult>>>& rows) {
    csv::Table t{{"series", "spec", "statistic", "p_value", "lags"}, {}};
    for (const auto& [name, results] : rows)
        for (const auto& r : results)
            t.rows.push_back({name, to_string(r.spec), csv::num(r.statistic), csv::num(r.p_value), std::to_string(r.lags)});
    return t;
}

// Series | NCtype(p) | Ctype(p) | CTtype(p) with cells like "-3.5538(0.01)".
inline csv::Table adf_summary_table(const std::vector<std::pair<std::string, std::vector<AdfResult>>>& rows) {
    csv::Table t{{"Series", "NCtype(p)", "Ctype(p)", "CTtype(p)"}, {}};
    for (const auto& [name, results] : rows) {
        csv::Row r{name};
        for (const auto& a : results) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.4f(%.2f)", a.statistic, a.p_value);
            r.push_back(buf);
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

inline std::vector<AdfResult> adf_all_specs(std::span<const double> x) {
    return {adf_test(x, AdfSpec::NC), adf_test(x, AdfSpec::C), adf_test(x, AdfSpec::CT)};
}

inline csv::Table ccf_table(const std::vector<std::pair<std::string, CcfResult>>& rows) {
    csv::Table t{{"region", "lag", "rho", "band"}, {}};
    for (const auto& [name, c] : rows)
        for (int k = -c.max_lag; k <= c.max_lag; ++k)
            t.rows.push_back({name, std::to_string(k), csv::num(c.at(k)), csv::num(c.band)});
    return t;
}

// One row per region plus a trailing "Count" row of column totals.
inline csv::Table classification_table(const std::vector<std::pair<std::string, CcfClassification>>& rows) {
    csv::Table t{{"region", "right_volatility_bias", "short_negative", "long_positive"}, {}};
    int a = 0, b = 0, c = 0;
    auto flag = [](bool v) { return std::string(v ? "1" : "0"); };
    for (const auto& [name, k] : rows) {
        t.rows.push_back({name, flag(k.right_volatility_bias), flag(k.short_negative), flag(k.long_positive)});
        a += k.right_volatility_bias;
        b += k.short_negative;
        c += k.long_positive;
    }
    t.rows.push_back({"Count", std::to_string(a), std::to_string(b), std::to_string(c)});
    return t;
}

// CCF of every non-central region against the central series, then shape
// classification. Constant regions are skipped with a warning.
inline std::vector<std::pair<std::string, CcfResult>> ccf_against_central(const std::vector<IndexSeries>& series,
                                                                          const std::string& central, int max_lag,
                                                                          std::vector<std::string>* warnings) {
    const IndexSeries* c = nullptr;
    for (const auto& s : series)
        if (s.region == central) c = &s;
    if (!c) throw ValidationError("central region '" + central + "' has no index series");
    std::vector<std::pair<std::string, CcfResult>> out;
    for (const auto& s : series) {
        if (s.region == central) continue;
        const bool constant = std::all_of(s.values.begin(), s.values.end(),
                                          [&](double v) { return v == s.values.front(); });
        if (constant) {
            if (warnings) warnings->push_back("ccf: region '" + s.region + "' has a constant index; skipped");
            continue;
        }
        out.emplace_back(s.region, ccf(s.values, c->values, max_lag));
    }
    return out;
}

// CSV `group,region`; groups keep first-appearance order.
inline GroupSpec load_group_map(const std::string& path, const std::vector<std::string>& series_names) {
    const auto t = csv::read(path);
    if (t.header != csv::Row{"group", "region"}) throw ValidationError("'" + path + "': expected header group,region");
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < series_names.size(); ++i) index_of.emplace(series_names[i], i);
    GroupSpec spec;
    std::size_t line = 1;
    for (const auto& r : t.rows) {
        ++line;
        if (r.size() != 2) throw ValidationError("'" + path + "' line " + std::to_string(line) + ": expected group,region");
        auto it = index_of.find(r[1]);
        if (it == index_of.end())
            throw ValidationError("'" + path + "' line " + std::to_string(line) + ": unknown region '" + r[1] + "'");
        auto g = std::find_if(spec.groups.begin(), spec.groups.end(), [&](const auto& p) { return p.first == r[0]; });
        if (g == spec.groups.end()) {
            spec.groups.emplace_back(r[0], std::vector<std::size_t>{});
            g = std::prev(spec.groups.end());
        }
        g->second.push_back(it->second);
    }
    return spec;
}

inline csv::Table dated_long_table(const std::string& key_column, const std::vector<Date>& dates,
                                   const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    csv::Table t{{"date", key_column, "value"}, {}};
    for (std::size_t i = 0; i < dates.size(); ++i)
        for (const auto& [name, v] : series) t.rows.push_back({dates[i].str(), name, csv::num(v[i])});
    return t;
}

// ---- report ----------------------------------------------------------------

struct ReportBundle {
    std::vector<std::string> files;  // relative to the output directory
    std::vector<std::string> warnings;
};

namespace detail {

template <class F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const EstimationError& e) {
        throw EstimationError(stage + ": " + e.what(), e.best_loglik());
    } catch (const IoError& e) {
        throw IoError(stage + ": " + e.what());
    } catch (const DegenerateSeriesError& e) {
        throw DegenerateSeriesError(stage + ": " + e.what());
    } catch (const ArgumentError& e) {
        throw ArgumentError(stage + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(stage + ": " + e.what());
    }
}

inline std::string file_stem(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

}  // namespace detail

inline ReportBundle run_pipeline(const PipelineConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    using detail::in_stage;
    cfg.validate();
    ReportBundle bundle;
    fs::create_directories(fs::path(out_dir) / "charts");
    auto out_path = [&](const std::string& rel) {
        bundle.files.push_back(rel);
        return (fs::path(out_dir) / rel).string();
    };
    auto write_csv = [&](const std::string& rel, const csv::Table& t) { csv::write(out_path(rel), t); };
    auto chart = [&](const std::string& title, const std::vector<Date>& dates, const std::vector<double>& v) {
        svg::write_line_chart(out_path("charts/" + detail::file_stem(title) + ".svg"), title, dates, v);
    };

    const Corpus corpus = in_stage("ingest", [&] { return filter_corpus(load_corpus(cfg.corpus_path), cfg.from, cfg.to); });
    const Lexicon lex = in_stage("lexicon", [&] { return load_lexicon(cfg.lexicon_path, cfg.stopword_path); });

    in_stage("freq", [&] {
        csv::Table t{{"token", "count"}, {}};
        for (const auto& [tok, n] : top_terms(term_frequencies(corpus, lex), static_cast<std::size_t>(cfg.freq_top)))
            t.rows.push_back({tok, std::to_string(n)});
        write_csv("freq.csv", t);
    });

    in_stage("lda", [&] {
        std::vector<std::vector<std::string>> docs;
        for (const auto& d : corpus) docs.push_back(document_tokens(d, lex));
        const auto model = fit_lda(docs, {cfg.lda.topics, cfg.lda.alpha, cfg.lda.beta, cfg.lda.iterations, cfg.lda.seed});
        for (const auto& w : model.warnings) bundle.warnings.push_back("lda: " + w);
        std::ofstream out(out_path("topics.txt"), std::ios::binary);
        for (int k = 0; k < model.topics; ++k)
            out << format_topic(model, k, static_cast<std::size_t>(cfg.lda.top_words)) << '\n';
        if (!out) throw IoError("cannot write topics.txt");
    });

    const auto dict = in_stage("weights", [&] {
        std::vector<std::string> warnings;
        const auto entries = load_dictionary(cfg.dictionary_path, &warnings);
        auto d = corpus_dictionary(corpus, lex, entries, cfg.from, cfg.to, &warnings);
        for (auto& w : warnings) bundle.warnings.push_back("weights: " + w);
        write_csv("weights.csv", weights_table(d));
        return d;
    });

    const auto indices = in_stage("index", [&] {
        auto s = region_indices(corpus, lex, dict, cfg.from, cfg.to);
        write_csv("index_long.csv", index_long_table(s));
        write_csv("index_wide.csv", index_wide_table(s));
        for (const auto& x : s) chart("index " + x.region, x.dates, x.values);
        return s;
    });

    const auto panel = in_stage("align", [&] {
        const IndexSeries* central = nullptr;
        for (const auto& s : indices)
            if (s.region == cfg.central_region) central = &s;
        if (!central) throw ValidationError("central region '" + cfg.central_region + "' not in corpus");
        std::vector<NamedSeries> inputs{{cfg.central_region, {central->dates, central->values}},
                                        {"covid", csv::read_dated_series(cfg.covid_path)},
                                        {"stock", csv::read_dated_series(cfg.stock_path)}};
        auto p = align(inputs, cfg.alignment_policy);
        write_csv("panel.csv", panel_table(p));
        for (const auto& [name, v] : p.series) chart("panel " + name, p.dates, v);
        return p;
    });

    in_stage("adf", [&] {
        std::vector<std::pair<std::string, std::vector<AdfResult>>> rows;
        for (const auto& [name, v] : panel.series) rows.emplace_back(name, adf_all_specs(v));
        write_csv("adf.csv", adf_long_table(rows));
        write_csv("adf_table.csv", adf_summary_table(rows));
    });

    in_stage("ccf", [&] {
        const auto rows = ccf_against_central(indices, cfg.central_region, cfg.ccf_max_lag, &bundle.warnings);
        write_csv("ccf.csv", ccf_table(rows));
        std::vector<std::pair<std::string, CcfClassification>> cls;
        for (const auto& [name, c] : rows) cls.emplace_back(name, classify_ccf(c));
        write_csv("classify.csv", classification_table(cls));
    });

    in_stage("dcc", [&] {
        std::vector<std::vector<double>> series;
        std::vector<std::string> names;
        for (const auto& [name, v] : panel.series) {
            names.push_back(name);
            series.push_back(v);
        }
        const auto fit = fit_dcc_garch(series, names);
        write_csv("dcc_params.csv", to_csv(param_table(fit)));
        const std::vector<Date> dates(panel.dates.begin() + 1, panel.dates.end());
        const auto pairs = covariance_pairs(fit.H_path, names);
        write_csv("covariance.csv", dated_long_table("pair", dates, pairs));
        for (const auto& [label, v] : pairs) chart("covariance " + label, dates, v);
    });

    in_stage("groups", [&] {
        std::vector<std::string> names;
        std::vector<std::vector<double>> series;
        for (const auto& s : indices) {
            names.push_back(s.region);
            series.push_back(s.values);
        }
        const GroupSpec spec = load_group_map(cfg.group_map_path, names);
        const auto fit = fit_dcc_garch(series, names);
        const auto vols = group_volatility(fit.H_path, spec);
        const std::vector<Date> dates(indices.front().dates.begin() + 1, indices.front().dates.end());
        write_csv("group_volatility.csv", dated_long_table("group", dates, vols));
        for (const auto& [g, v] : vols) chart("group " + g, dates, v);
    });

    {
        std::ofstream out(out_path("warnings.txt"), std::ios::binary);
        for (const auto& w : bundle.warnings) out << w << '\n';
    }
    return bundle;
}

}  // namespace pei
