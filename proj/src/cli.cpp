#include "hyperbib/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperbib/collab.hpp"
#include "hyperbib/corpus.hpp"
#include "hyperbib/metrics.hpp"
#include "hyperbib/record_io.hpp"
#include "hyperbib/report.hpp"
#include "hyperbib/sensitivity.hpp"
#include "hyperbib/synth.hpp"

namespace hyperbib::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string format = "jsonl";
    std::optional<int> year_from;
    std::optional<int> year_to;
    std::vector<std::string> periods;
    std::optional<int> citation_cutoff;
    std::string span = "publication";
    std::vector<std::int64_t> thresholds = kDefaultThresholds;
    std::string mode = "exceeds";
    std::string share_base = "slice";
    int decimals = 2;
    std::int64_t split_at = 50;
    std::int64_t hyper_threshold = 1000;
    bool counts = false;
    std::int64_t min_size = 50;
    double rel_tol = 0.05;
    std::size_t min_members = 5;
    bool group_by_label = false;
    bool by_collab = false;
    std::string preset = "table2-ukraine";
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string dedup = "keep-first";
    bool strict = false;
    unsigned threads = 1;
};

// Fatal condition with a message for the user; maps to exit status 1.
struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
std::string join(const std::vector<T>& items, const char* sep = ",") {
    std::ostringstream s;
    for (std::size_t i = 0; i < items.size(); ++i) s << (i ? sep : "") << items[i];
    return s.str();
}

template <typename T>
std::string opt(const std::optional<T>& v) {
    if (!v) return "none";
    std::ostringstream s;
    s << *v;
    return s.str();
}

CommentLines config_comments(const RunConfig& c) {
    return {
        "hyperbib " + c.command,
        "input=" + (c.inputs.empty() ? std::string("none") : join(c.inputs)) + " format=" + c.format +
            " dedup=" + c.dedup + " strict=" + (c.strict ? "true" : "false"),
        "from=" + opt(c.year_from) + " to=" + opt(c.year_to) + " periods=" + (c.periods.empty() ? "none" : join(c.periods)) +
            " citation_cutoff=" + opt(c.citation_cutoff) + " span=" + c.span,
        "thresholds=" + join(c.thresholds) + " mode=" + c.mode + " share_base=" + c.share_base +
            " decimals=" + std::to_string(c.decimals),
        "split_at=" + std::to_string(c.split_at) + " hyper_threshold=" + std::to_string(c.hyper_threshold) +
            " counts=" + (c.counts ? "true" : "false"),
        "min_size=" + std::to_string(c.min_size) + " rel_tol=" + format_real(c.rel_tol) +
            " min_members=" + std::to_string(c.min_members) + " group_by_label=" + (c.group_by_label ? "true" : "false") +
            " by_collab=" + (c.by_collab ? "true" : "false"),
        "preset=" + c.preset + " seed=" + opt(c.seed),
    };
}

std::pair<int, int> parse_period(const std::string& text) {
    auto dash = text.find('-', 1);
    try {
        if (dash == std::string::npos) throw std::invalid_argument("no dash");
        std::size_t used = 0;
        int a = std::stoi(text.substr(0, dash), &used);
        if (used != dash) throw std::invalid_argument("trailing");
        int b = std::stoi(text.substr(dash + 1), &used);
        if (used != text.size() - dash - 1) throw std::invalid_argument("trailing");
        if (a > b) throw std::invalid_argument("reversed");
        return {a, b};
    } catch (const std::exception&) {
        throw Failure("invalid period '" + text + "' (expected FROM-TO, e.g. 1991-2020)");
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw Failure("write failed for '" + path.string() + "'");
}

template <typename Writer>
void emit(const RunConfig& c, const std::string& name, Writer&& writer, std::ostream& out) {
    std::ostringstream body;
    writer(body);
    fs::path path = fs::path(c.out_dir) / name;
    write_file(path, body.str());
    out << "wrote " << path.string() << '\n';
}

void ensure_out_dir(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.out_dir, ec);
    if (ec || !fs::is_directory(c.out_dir)) throw Failure("cannot create output directory '" + c.out_dir + "'");
}

std::string file_safe(const std::string& label) {
    std::string s = label;
    for (auto& ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.')) ch = '_';
    return s;
}

void report_errors(const std::vector<RecordError>& errors, const std::string& source, std::ostream& err) {
    for (const auto& e : errors)
        err << source << ':' << e.line_number << ": " << to_string(e.severity) << ' ' << to_string(e.reason) << ": "
            << e.detail << '\n';
}

DedupPolicy parse_dedup(const std::string& name) {
    if (name == "keep-first") return DedupPolicy::KeepFirst;
    if (name == "reject") return DedupPolicy::Reject;
    throw Failure("unknown dedup policy '" + name + "'");
}

struct Loaded {
    Corpus corpus;
    std::size_t error_count = 0;
    std::size_t warning_count = 0;
};

Loaded load(const RunConfig& c, std::ostream& err) {
    if (c.inputs.empty()) throw Failure("no --input given");
    const RecordFormat format = parse_format(c.format);
    std::vector<PublicationRecord> records;
    Loaded loaded;
    auto tally = [&](const std::vector<RecordError>& errors) {
        for (const auto& e : errors) ++(e.severity == Severity::Error ? loaded.error_count : loaded.warning_count);
    };
    for (const auto& path : c.inputs) {
        ParseResult parsed;
        try {
            parsed = parse_file(path, format, c.threads);
        } catch (const InputError& e) {
            throw Failure(e.what());
        }
        report_errors(parsed.errors, path, err);
        tally(parsed.errors);
        records.insert(records.end(), std::make_move_iterator(parsed.records.begin()),
                       std::make_move_iterator(parsed.records.end()));
    }
    // Line numbers from build_corpus refer to positions in the merged list;
    // parse-time checks already covered record validity.
    auto built = build_corpus(std::move(records), parse_dedup(c.dedup), join(c.inputs));
    std::vector<RecordError> dups;
    for (const auto& e : built.errors)
        if (e.reason == ErrorReason::DuplicateId) dups.push_back(e);
    report_errors(dups, "record#", err);
    tally(dups);

    if (c.strict && (loaded.error_count + loaded.warning_count) > 0)
        throw Failure("--strict: " + std::to_string(loaded.error_count + loaded.warning_count) + " record problem(s)");
    loaded.corpus = std::move(built.corpus);
    return loaded;
}

Corpus slice(const RunConfig& c, const Corpus& corpus) {
    if (!c.year_from && !c.year_to) return corpus;
    int from = c.year_from.value_or(kMinYear), to = c.year_to.value_or(kMaxYear);
    if (from > to) throw Failure("--from is after --to");
    return filter_period(corpus, from, to);
}

Corpus require_records(Corpus corpus, const std::string& what) {
    if (corpus.empty()) throw Failure("no valid records in " + what);
    return corpus;
}

std::optional<YearSpan> analysis_span(const RunConfig& c, const Corpus& corpus, std::optional<std::pair<int, int>> period) {
    if (c.span == "publication") return std::nullopt;
    if (c.span != "analysis") throw Failure("unknown --span '" + c.span + "' (expected publication or analysis)");
    if (period) return YearSpan{period->first, period->second};
    int from = c.year_from.value_or(corpus.records().front().year);
    int to = c.year_to.value_or(from);
    if (!c.year_to)
        for (const auto& r : corpus) to = std::max(to, r.year);
    if (!c.year_from)
        for (const auto& r : corpus) from = std::min(from, r.year);
    return YearSpan{from, to};
}

void cmd_summary(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Corpus corpus = require_records(load(c, err).corpus, "input");
    ensure_out_dir(c);
    if (c.periods.empty()) {
        Corpus s = require_records(slice(c, corpus), "the selected period");
        std::string name = (c.year_from || c.year_to)
                               ? "summary_" + std::to_string(c.year_from.value_or(kMinYear)) + "-" +
                                     std::to_string(c.year_to.value_or(kMaxYear)) + ".tsv"
                               : "summary_all.tsv";
        auto set = indicator_set(s, c.citation_cutoff, analysis_span(c, s, std::nullopt));
        emit(c, name, [&](std::ostream& o) { write_indicator_tsv(o, set, config_comments(c)); }, out);
        return;
    }
    for (const auto& p : c.periods) {
        auto period = parse_period(p);
        Corpus s = require_records(filter_period(corpus, period.first, period.second), "period " + p);
        auto set = indicator_set(s, c.citation_cutoff, analysis_span(c, s, period));
        auto comments = config_comments(c);
        comments.push_back("period=" + p);
        emit(c, "summary_" + p + ".tsv", [&](std::ostream& o) { write_indicator_tsv(o, set, comments); }, out);
    }
}

void cmd_sensitivity(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.thresholds.empty()) throw Failure("--thresholds is empty");
    Corpus all = require_records(load(c, err).corpus, "input");
    Corpus s = require_records(slice(c, all), "the selected period");
    const auto mode = parse_threshold_mode(c.mode);
    const auto span = analysis_span(c, s, std::nullopt);
    SensitivityTable table;
    if (mode == ThresholdMode::AtMost) {
        table = exclusion_report(s, c.thresholds, c.citation_cutoff, c.decimals, span);
    } else {
        if (c.share_base != "slice" && c.share_base != "input")
            throw Failure("unknown --share-base '" + c.share_base + "' (expected slice or input)");
        std::vector<ThresholdSpec> specs;
        for (auto n : c.thresholds) specs.push_back({n, mode});
        table = sensitivity_table(s, c.share_base == "input" ? all : s, specs, c.citation_cutoff, c.decimals, span);
    }
    ensure_out_dir(c);
    emit(c, "sensitivity.tsv", [&](std::ostream& o) { write_sensitivity_tsv(o, table, config_comments(c)); }, out);
}

void cmd_dist(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Corpus s = require_records(slice(c, load(c, err).corpus), "the selected period");
    ensure_out_dir(c);
    const auto comments = config_comments(c);
    auto dist = author_count_distribution(s, !c.counts);
    emit(c, "author_distribution.tsv", [&](std::ostream& o) { write_distribution(o, dist, comments); }, out);

    auto split = yearly_counts(s, c.split_at);
    const std::string at = std::to_string(c.split_at);
    emit(c, "yearly_counts_small.tsv",
         [&](std::ostream& o) { write_year_series(o, split.small_teams, "publications_authors_le_" + at, comments); }, out);
    emit(c, "yearly_counts_large.tsv",
         [&](std::ostream& o) { write_year_series(o, split.large_teams, "publications_authors_gt_" + at, comments); }, out);
    auto mean_all = yearly_mean_citations(s);
    auto mean_small = yearly_mean_citations(s, c.split_at);
    emit(c, "yearly_mean_citations_all.tsv",
         [&](std::ostream& o) { write_year_series(o, mean_all, "mean_citations", comments); }, out);
    emit(c, "yearly_mean_citations_small.tsv",
         [&](std::ostream& o) { write_year_series(o, mean_small, "mean_citations_authors_le_" + at, comments); }, out);
}

void cmd_citedist(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Corpus s = require_records(slice(c, load(c, err).corpus), "the selected period");
    ensure_out_dir(c);
    auto freq = citation_frequency(s, c.hyper_threshold);
    emit(c, "citation_frequency.tsv", [&](std::ostream& o) { write_citation_frequency(o, freq, config_comments(c)); },
         out);
}

void cmd_detect(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Corpus s = require_records(slice(c, load(c, err).corpus), "the selected period");
    DetectOptions options{c.min_size, c.rel_tol, c.min_members, c.group_by_label};
    auto clusters = detect_clusters(s, options);
    ensure_out_dir(c);
    const auto comments = config_comments(c);
    emit(c, "clusters.tsv", [&](std::ostream& o) { write_cluster_report(o, clusters, comments); }, out);
    for (const auto& cl : clusters) {
        auto per_year = cluster_yearly_counts(cl, s);
        auto cc = comments;
        cc.push_back("cluster=" + cl.label);
        emit(c, "cluster_" + file_safe(cl.label) + ".tsv",
             [&](std::ostream& o) { write_year_series(o, per_year, "publications", cc); }, out);
        Corpus members = cluster_members(cl, s);
        bool dated = std::all_of(members.begin(), members.end(),
                                 [](const PublicationRecord& r) { return r.citations_by_year.has_value(); });
        if (dated) {
            auto h = cluster_h_index_series(cl, s);
            emit(c, "cluster_" + file_safe(cl.label) + "_h_index.tsv",
                 [&](std::ostream& o) { write_h_index_series(o, h, cc); }, out);
        }
    }
    out << clusters.size() << " cluster(s)\n";
}

void cmd_dynamics(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Corpus s = require_records(slice(c, load(c, err).corpus), "the selected period");
    try {
        auto series = h_index_series(s);
        std::map<std::string, HIndexSeries> groups;
        if (c.by_collab) {
            std::map<std::string, std::vector<PublicationRecord>> members;
            for (const auto& r : s)
                if (r.collab_label) members[*r.collab_label].push_back(r);
            for (auto& [label, recs] : members) groups[label] = h_index_series(Corpus(std::move(recs)));
        }
        ensure_out_dir(c);
        const auto comments = config_comments(c);
        emit(c, "h_index_series.tsv", [&](std::ostream& o) { write_h_index_series(o, series, comments); }, out);
        for (const auto& [label, g] : groups) {
            auto cc = comments;
            cc.push_back("collab=" + label);
            emit(c, "h_index_" + file_safe(label) + ".tsv", [&](std::ostream& o) { write_h_index_series(o, g, cc); }, out);
        }
    } catch (const PreconditionError& e) {
        throw Failure("dynamics needs citations_by_year on every record; missing for: " + join(e.record_ids(), " "));
    }
}

void cmd_synth(const RunConfig& c, std::ostream& out, std::ostream&) {
    GeneratorSpec spec = preset(c.preset);
    if (c.seed) spec.seed = *c.seed;
    Generated g = generate_corpus(spec, c.threads);
    ensure_out_dir(c);
    const auto comments = config_comments(c);
    auto header = [&](std::ostream& o) {
        for (const auto& line : comments) o << "# " << line << '\n';
    };
    emit(c, "corpus.jsonl",
         [&](std::ostream& o) {
             header(o);
             write_jsonl(o, g.corpus);
         },
         out);
    emit(c, "ground_truth.jsonl",
         [&](std::ostream& o) {
             header(o);
             write_ground_truth(o, g.truth);
         },
         out);
    emit(c, "ground_truth.tsv",
         [&](std::ostream& o) {
             header(o);
             o << "label\tpubs\tpub_share\tcites\tcite_share\n";
             for (const auto& [label, t] : g.truth.labels)
                 o << label << '\t' << t.publications << '\t' << t.publication_share.str() << '\t' << t.citations << '\t'
                   << (t.citation_share ? t.citation_share->str() : "NA") << '\n';
         },
         out);
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    RunConfig relaxed = c;
    relaxed.strict = false;
    Loaded loaded = load(relaxed, err);
    out << "records\t" << loaded.corpus.size() << '\n'
        << "errors\t" << loaded.error_count << '\n'
        << "warnings\t" << loaded.warning_count << '\n';
    if (c.strict && loaded.error_count + loaded.warning_count > 0) return 1;
    return 0;
}

void add_input_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--input,-i", c.inputs, "Record file(s)")->required();
    sub->add_option("--format", c.format, "Record format")->check(CLI::IsMember({"jsonl", "csv"}));
    sub->add_option("--dedup", c.dedup, "Duplicate-id policy")->check(CLI::IsMember({"keep-first", "reject"}));
    sub->add_flag("--strict", c.strict, "Treat any record error or warning as fatal");
    sub->add_option("--threads", c.threads, "Parser threads")->check(CLI::Range(1u, 256u));
}

void add_period_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--from", c.year_from, "First publication year (inclusive)");
    sub->add_option("--to", c.year_to, "Last publication year (inclusive)");
}

void add_out_option(CLI::App* sub, RunConfig& c) { sub->add_option("--out,-o", c.out_dir, "Output directory"); }

void add_citation_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--citation-cutoff", c.citation_cutoff, "Latest publication year entering citation statistics");
    sub->add_option("--span", c.span, "Per-year mean denominator")->check(CLI::IsMember({"publication", "analysis"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Hyperauthorship-aware bibliometric analysis", "hyperbib"};
    app.require_subcommand(1);

    auto* summary = app.add_subcommand("summary", "Indicator table per period slice");
    add_input_options(summary, c);
    add_period_options(summary, c);
    add_citation_options(summary, c);
    add_out_option(summary, c);
    summary->add_option("--period", c.periods, "Period slice FROM-TO (repeatable)");

    auto* sensitivity = app.add_subcommand("sensitivity", "Author-count threshold table");
    add_input_options(sensitivity, c);
    add_period_options(sensitivity, c);
    add_citation_options(sensitivity, c);
    add_out_option(sensitivity, c);
    sensitivity->add_option("--thresholds", c.thresholds, "Author-count thresholds")->delimiter(',');
    sensitivity->add_option("--mode", c.mode, "Threshold mode")->check(CLI::IsMember({"exceeds", "at_most"}));
    sensitivity->add_option("--share-base", c.share_base, "Share denominator: the period slice or the whole input")
        ->check(CLI::IsMember({"slice", "input"}));
    sensitivity->add_option("--decimals", c.decimals, "Decimals for percentages")->check(CLI::Range(0, 9));

    auto* dist = app.add_subcommand("dist", "Author-count distribution and yearly aggregates");
    add_input_options(dist, c);
    add_period_options(dist, c);
    add_out_option(dist, c);
    dist->add_flag("--counts", c.counts, "Emit raw counts instead of normalized frequencies");
    dist->add_option("--split-at", c.split_at, "Large-team threshold for yearly series")->check(CLI::PositiveNumber);

    auto* citedist = app.add_subcommand("citedist", "Citation-frequency distribution");
    add_input_options(citedist, c);
    add_period_options(citedist, c);
    add_out_option(citedist, c);
    citedist->add_option("--hyper-threshold", c.hyper_threshold, "Author count above which a paper is hyperauthored")
        ->check(CLI::PositiveNumber);

    auto* detect = app.add_subcommand("detect", "Detect stable large-collaboration clusters");
    add_input_options(detect, c);
    add_period_options(detect, c);
    add_out_option(detect, c);
    detect->add_option("--min-size", c.min_size, "Only records with more authors are considered");
    detect->add_option("--rel-tol", c.rel_tol, "Relative linkage tolerance")->check(CLI::Range(0.0, 1.0));
    detect->add_option("--min-members", c.min_members, "Minimum cluster size")->check(CLI::PositiveNumber);
    detect->add_flag("--group-by-label", c.group_by_label, "Group records by collab label before linkage");

    auto* dynamics = app.add_subcommand("dynamics", "Cumulative h-index series");
    add_input_options(dynamics, c);
    add_period_options(dynamics, c);
    add_out_option(dynamics, c);
    dynamics->add_flag("--by-collab", c.by_collab, "Also emit one series per collab label");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
    add_out_option(synth, c);
    synth->add_option("--preset", c.preset, "Generator preset")->check(CLI::IsMember(preset_names()));
    synth->add_option("--seed", c.seed, "Random seed");
    synth->add_option("--threads", c.threads, "Generator threads")->check(CLI::Range(1u, 256u));

    auto* validate = app.add_subcommand("validate", "Parse and report record problems");
    add_input_options(validate, c);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage_out, usage_err;
        int code = app.exit(e, usage_out, usage_err);
        out << usage_out.str();
        err << usage_err.str();
        return code == 0 ? 0 : 2;
    }

    c.command = app.get_subcommands().front()->get_name();
    try {
        if (c.command == "summary") cmd_summary(c, out, err);
        else if (c.command == "sensitivity") cmd_sensitivity(c, out, err);
        else if (c.command == "dist") cmd_dist(c, out, err);
        else if (c.command == "citedist") cmd_citedist(c, out, err);
        else if (c.command == "detect") cmd_detect(c, out, err);
        else if (c.command == "dynamics") cmd_dynamics(c, out, err);
        else if (c.command == "synth") cmd_synth(c, out, err);
        else if (c.command == "validate") return cmd_validate(c, out, err);
    } catch (const Failure& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace hyperbib::cli
