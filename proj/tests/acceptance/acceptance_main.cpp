// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperbib/cli.hpp"
#include "hyperbib/collab.hpp"
#include "hyperbib/metrics.hpp"
#include "hyperbib/record_io.hpp"
#include "hyperbib/report.hpp"
#include "hyperbib/sensitivity.hpp"
#include "hyperbib/synth.hpp"

namespace fs = std::filesystem;
using namespace hyperbib;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& what) {
        if (pass) detail = what;
        pass = false;
    }
};

std::int64_t brute_h(const std::vector<std::int64_t>& c) {
    std::int64_t best = 0;
    for (std::int64_t h = 0; h <= static_cast<std::int64_t>(c.size()); ++h) {
        std::int64_t at_least = std::count_if(c.begin(), c.end(), [h](std::int64_t x) { return x >= h; });
        if (at_least >= h) best = h;
    }
    return best;
}

std::int64_t corpus_h(const Corpus& c) {
    std::vector<std::int64_t> cites;
    for (const auto& r : c) cites.push_back(r.citation_total);
    return h_index(cites);
}

// Small corpora with a natural bulk and two planted bands, varied per seed.
GeneratorSpec property_spec(std::uint64_t seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.n_natural = 200 + seed % 400;
    spec.team = {1, 1.0 + static_cast<double>(seed % 5) * 0.5};
    spec.citations = {1.6 + static_cast<double>(seed % 4) * 0.2, 2000};
    spec.planted = {{"BAND_A", 5 + seed % 20, 300.0 + static_cast<double>(seed % 7) * 100, 0.04, 2005, 2019, 3},
                    {"BAND_B", 5 + seed % 11, 2900, 0.04, 2008, 2019, 6}};
    return spec;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    if (!fs::exists(dir)) return files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        files[fs::relative(e.path(), dir).string()] = s.str();
    }
    return files;
}

int cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

Outcome h_index_oracle() {
    Outcome o;
    std::mt19937_64 gen(20240101);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::int64_t> c(gen() % 201);
        const std::int64_t cap = trial % 3 == 0 ? 20 : 10000;
        for (auto& x : c) x = static_cast<std::int64_t>(gen() % (cap + 1));
        if (h_index(c) != brute_h(c)) o.fail("trial " + std::to_string(trial));
    }
    if (o.pass) o.detail = "1000 multisets agree";
    return o;
}

Outcome table2_arithmetic() {
    Outcome o;
    const std::pair<std::int64_t, std::string> cases[] = {{2511, "1.03"}, {927, "0.38"}, {1755, "0.72"}};
    for (const auto& [part, want] : cases) {
        auto got = share(part, 243581, 2).str();
        o.detail += std::to_string(part) + "->" + got + " ";
        if (got != want) o.fail(std::to_string(part) + " gave " + got);
    }
    return o;
}

Outcome table2_consistency() {
    Outcome o;
    // 6.2 * 243581 = 1510202.2; with one decimal the mean fixes the total to 15102022 / 10.
    const std::int64_t total_tenths = 62 * 243581;
    const std::int64_t part_tenths = 143027 * 10;
    auto pct = share(part_tenths, total_tenths, 2);
    o.detail = "citation share " + pct.str() + "%";
    if (std::abs(pct.value() - 9.5) > 0.3) o.fail(o.detail);
    return o;
}

Outcome exclusion_shares() {
    Outcome o;
    struct Case {
        std::int64_t total, kept;
        int decimals;
        std::string want;
    };
    const Case cases[] = {{7359, 6435, 0, "13"}, {7359, 5804, 0, "21"}, {3598, 3305, 1, "8.1"}, {3598, 3481, 1, "3.3"}};
    for (const auto& c : cases) {
        auto got = share(c.total - c.kept, c.total, c.decimals).str();
        o.detail += got + "% ";
        if (got != c.want) o.fail(std::to_string(c.kept) + "/" + std::to_string(c.total) + " gave " + got);
    }
    // Same figures through the report itself.
    std::vector<PublicationRecord> recs;
    for (int i = 0; i < 3598; ++i) {
        std::int64_t authors = i < 117 ? 1500 : (i < 293 ? 200 : 4);
        recs.push_back({"r" + std::to_string(i), 2000 + i % 20, authors, i % 9});
    }
    auto t = exclusion_report(Corpus(recs), {1000, 50}, std::nullopt, 1);
    if (t.rows[0].excluded_share->str() != "3.3" || t.rows[1].excluded_share->str() != "8.1")
        o.fail("exclusion_report disagrees");
    return o;
}

Outcome partition_and_monotonicity() {
    Outcome o;
    const std::vector<std::int64_t> ns = {1, 2, 3, 5, 10, 50, 100, 300, 500, 1000, 2000, 3000, 5000};
    std::size_t checks = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Corpus c = generate_corpus(property_spec(seed)).corpus;
        std::int64_t total = 0;
        for (const auto& r : c) total += r.citation_total;
        std::size_t prev_pubs = 0;
        std::int64_t prev_cites = 0, prev_h = 0;
        for (auto n : ns) {
            Corpus lo = filter_by_authors(c, {n, ThresholdMode::AtMost});
            Corpus hi = filter_by_authors(c, {n, ThresholdMode::Exceeds});
            std::set<std::string> ids;
            std::int64_t cites = 0;
            for (const auto* part : {&lo, &hi})
                for (const auto& r : *part) {
                    ids.insert(r.id);
                    cites += r.citation_total;
                }
            if (ids.size() != c.size() || lo.size() + hi.size() != c.size() || cites != total)
                o.fail("partition broken at seed " + std::to_string(seed) + " n=" + std::to_string(n));
            std::int64_t lo_cites = 0;
            for (const auto& r : lo) lo_cites += r.citation_total;
            std::int64_t h = corpus_h(lo);
            if (lo.size() < prev_pubs || lo_cites < prev_cites || h < prev_h)
                o.fail("monotonicity broken at seed " + std::to_string(seed) + " n=" + std::to_string(n));
            prev_pubs = lo.size();
            prev_cites = lo_cites;
            prev_h = h;
            ++checks;
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " (corpus, n) pairs, zero violations";
    return o;
}

std::string library_reports(const Corpus& c) {
    std::ostringstream s;
    write_indicator_tsv(s, indicator_set(c));
    write_sensitivity_tsv(s, sensitivity_table(c, c, {{50, ThresholdMode::Exceeds}, {1000, ThresholdMode::Exceeds}}));
    write_sensitivity_tsv(s, exclusion_report(c, {50, 1000}));
    write_distribution(s, author_count_distribution(c, true));
    write_distribution(s, author_count_distribution(c, false));
    write_citation_frequency(s, citation_frequency(c, 1000));
    auto split = yearly_counts(c, 50);
    write_year_series(s, split.small_teams, "publications");
    write_year_series(s, split.large_teams, "publications");
    write_year_series(s, yearly_mean_citations(c), "mean_citations");
    write_h_index_series(s, h_index_series(c));
    auto clusters = detect_clusters(c);
    write_cluster_report(s, clusters);
    for (const auto& cl : clusters) {
        write_year_series(s, cluster_yearly_counts(cl, c), "publications");
        write_h_index_series(s, cluster_h_index_series(cl, c));
    }
    write_jsonl(s, c);
    return s.str();
}

Outcome normalization_and_permutation() {
    Outcome o;
    double worst = 0;
    std::vector<Corpus> corpora;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) corpora.push_back(generate_corpus(property_spec(seed)).corpus);
    for (const auto& name : preset_names()) corpora.push_back(generate_corpus(preset(name)).corpus);
    for (const auto& c : corpora) {
        auto d = author_count_distribution(c, true);
        double sum = 0;
        for (const auto& [k, f] : d.support) sum += f;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    if (worst > 1e-12) o.fail("normalization error " + std::to_string(worst));

    // Library writers on shuffled record vectors.
    std::mt19937_64 gen(7);
    for (std::size_t i = 0; i < 20; ++i) {
        const Corpus& c = corpora[i];
        std::vector<PublicationRecord> recs(c.begin(), c.end());
        const std::string want = library_reports(c);
        for (int rep = 0; rep < 3; ++rep) {
            std::shuffle(recs.begin(), recs.end(), gen);
            if (library_reports(build_corpus(recs, DedupPolicy::KeepFirst, "shuffled").corpus) != want) o.fail("library report differs after permutation");
        }
    }

    // CLI outputs for a shuffled input file under the same path.
    const fs::path root = fs::temp_directory_path() / "hyperbib_acceptance_perm";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string input = (root / "in.jsonl").string();
    auto write_input = [&](std::vector<PublicationRecord> recs) {
        std::ofstream f(input, std::ios::binary);
        for (const auto& r : recs) f << to_jsonl_line(r) << '\n';
    };
    auto run_all = [&](const std::string& out) {
        const std::vector<std::vector<std::string>> cmds = {
            {"summary", "--period", "1991-2005", "--period", "2006-2019"},
            {"sensitivity"},
            {"sensitivity", "--mode", "at_most", "--thresholds", "50,1000"},
            {"dist"},
            {"citedist"},
            {"detect"},
            {"dynamics", "--by-collab"},
        };
        for (auto args : cmds) {
            args.insert(args.end(), {"--input", input, "--out", out});
            if (cli(args) != 0) o.fail("cli command failed: " + args[0]);
        }
        return snapshot(out);
    };
    const Corpus& base = corpora[3];
    std::vector<PublicationRecord> recs(base.begin(), base.end());
    write_input(recs);
    auto want = run_all((root / "a").string());
    std::shuffle(recs.begin(), recs.end(), gen);
    write_input(recs);
    auto got = run_all((root / "b").string());
    if (want.empty() || want != got) o.fail("CLI output differs after permutation");
    fs::remove_all(root);

    if (o.pass) {
        std::ostringstream d;
        d << corpora.size() << " corpora, max |sum-1| = " << worst << "; " << want.size()
          << " CLI files identical under permutation";
        o.detail = d.str();
    }
    return o;
}

Outcome planted_recovery() {
    Outcome o;
    double worst = 1;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto spec = preset("table2-ukraine");
        spec.seed = seed;
        auto g = generate_corpus(spec);
        auto clusters = detect_clusters(g.corpus);
        if (clusters.size() != 3) {
            o.fail("seed " + std::to_string(seed) + ": " + std::to_string(clusters.size()) + " clusters");
            continue;
        }
        std::map<std::string, std::set<std::string>> truth;
        for (const auto& [id, label] : g.truth.origin)
            if (label) truth[*label].insert(id);
        for (const auto& [label, ids] : truth) {
            double best = 0;
            for (const auto& cl : clusters) {
                std::set<std::string> members(cl.member_ids.begin(), cl.member_ids.end());
                std::size_t inter = 0;
                for (const auto& id : ids) inter += members.count(id);
                const std::size_t uni = ids.size() + members.size() - inter;
                best = std::max(best, static_cast<double>(inter) / static_cast<double>(uni));
            }
            worst = std::min(worst, best);
            if (best < 0.95) o.fail("seed " + std::to_string(seed) + " label " + label + " accuracy " + std::to_string(best));
        }
    }
    if (o.pass) o.detail = "3 clusters on 20 seeds, min Jaccard accuracy " + std::to_string(worst);
    return o;
}

Outcome distortion() {
    Outcome o;
    int decreases = 0;
    double worst_gap = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto spec = preset("table2-ukraine");
        spec.seed = seed;
        auto g = generate_corpus(spec);
        const auto& cms = g.truth.labels.at("CMS");
        if (cms.publication_share.str() != "0.38") o.fail("CMS share " + cms.publication_share.str());
        auto t = sensitivity_table(g.corpus, g.corpus, {{2000, ThresholdMode::Exceeds}});
        const auto& row = t.rows[0];
        if (!row.citation_share || !cms.citation_share) {
            o.fail("missing citation share");
            continue;
        }
        const double gap = std::abs(row.citation_share->value() - cms.citation_share->value());
        worst_gap = std::max(worst_gap, gap);
        if (gap > 0.2) o.fail("seed " + std::to_string(seed) + " gap " + std::to_string(gap));
        Corpus natural = g.corpus.select([&](const PublicationRecord& r) { return !g.truth.origin.at(r.id); });
        if (corpus_h(natural) < corpus_h(g.corpus)) ++decreases;
    }
    if (decreases < 18) o.fail("h decreased on only " + std::to_string(decreases) + "/20 seeds");
    if (o.pass) {
        std::ostringstream d;
        d << "max citation share gap " << worst_gap << " pp; h decreased on " << decreases << "/20 seeds";
        o.detail = d.str();
    }
    return o;
}

Outcome dynamics() {
    Outcome o;
    std::size_t series = 0;
    auto check = [&](const HIndexSeries& s, std::int64_t want, const std::string& where) {
        ++series;
        for (std::size_t i = 1; i < s.points.size(); ++i)
            if (s.points[i].second < s.points[i - 1].second || s.points[i].first != s.points[i - 1].first + 1)
                o.fail(where + ": not non-decreasing");
        if (s.points.empty() || s.points.back().second != want) o.fail(where + ": final value differs");
    };
    std::vector<Corpus> corpora;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) corpora.push_back(generate_corpus(property_spec(seed)).corpus);
    for (const auto& name : preset_names()) corpora.push_back(generate_corpus(preset(name)).corpus);
    for (std::size_t i = 0; i < corpora.size(); ++i) {
        const Corpus& c = corpora[i];
        check(h_index_series(c), corpus_h(c), "corpus " + std::to_string(i));
        for (const auto& cl : detect_clusters(c))
            check(cluster_h_index_series(cl, c), corpus_h(cluster_members(cl, c)), "cluster " + cl.label);
    }
    if (o.pass) o.detail = std::to_string(series) + " series checked";
    return o;
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "hyperbib_acceptance_det";
    fs::remove_all(root);
    fs::create_directories(root);
    // Outputs of command i, run r land in c<i>_r<r>; later commands read the first synth corpus.
    auto out_dir = [&](std::size_t i, int rep) { return (root / ("c" + std::to_string(i) + "_r" + std::to_string(rep))).string(); };
    const std::string input = out_dir(0, 0) + "/corpus.jsonl";
    const std::vector<std::vector<std::string>> cmds = {
        {"synth", "--preset", "fig4-tail", "--seed", "11"},
        {"synth", "--preset", "table2-ukraine", "--threads", "4"},
        {"validate", "--input", input},
        {"summary", "--input", input, "--period", "1991-2010", "--period", "2011-2019"},
        {"summary", "--input", input, "--citation-cutoff", "2015", "--span", "analysis", "--from", "2000", "--to", "2019"},
        {"sensitivity", "--input", input},
        {"sensitivity", "--input", input, "--mode", "at_most", "--thresholds", "50,1000", "--decimals", "1"},
        {"dist", "--input", input},
        {"dist", "--input", input, "--counts", "--split-at", "100"},
        {"citedist", "--input", input},
        {"detect", "--input", input},
        {"detect", "--input", input, "--group-by-label"},
        {"dynamics", "--input", input, "--by-collab"},
    };
    std::size_t files = 0;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        std::map<std::string, std::string> runs[2];
        for (int rep = 0; rep < 2; ++rep) {
            auto args = cmds[i];
            if (args[0] != "validate") args.insert(args.end(), {"--out", out_dir(i, rep)});
            std::ostringstream sout, serr;
            const int code = cli::run(args, sout, serr);
            if (code != 0) o.fail(args[0] + " exited " + std::to_string(code) + ": " + serr.str());
            runs[rep] = snapshot(out_dir(i, rep));
            std::string text = sout.str();
            const std::string dir = out_dir(i, rep);
            for (auto at = text.find(dir); at != std::string::npos; at = text.find(dir, at)) text.replace(at, dir.size(), "<out>");
            runs[rep]["<stdout>"] = text;
        }
        if (runs[0].size() <= 1 && cmds[i][0] != "validate") o.fail(cmds[i][0] + " produced no output");
        if (runs[0] != runs[1]) o.fail(cmds[i][0] + " (command " + std::to_string(i + 1) + ") is not byte-identical");
        files += runs[0].size();
    }
    fs::remove_all(root);
    if (o.pass) o.detail = std::to_string(cmds.size()) + " commands, " + std::to_string(files) + " outputs identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"h-index oracle", h_index_oracle},
        {"publication share arithmetic", table2_arithmetic},
        {"citation share consistency", table2_consistency},
        {"exclusion shares", exclusion_shares},
        {"partition and monotonicity", partition_and_monotonicity},
        {"normalization and permutation invariance", normalization_and_permutation},
        {"planted cluster recovery", planted_recovery},
        {"hyperauthorship distortion", distortion},
        {"h-index dynamics", dynamics},
        {"CLI determinism", determinism},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << ms
                  << " ms): " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    const auto total = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed in "
              << total << " ms" << std::endl;
    return failures == 0 ? 0 : 1;
}
