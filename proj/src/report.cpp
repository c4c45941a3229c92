#include "hyperbib/report.hpp"

#include <charconv>
#include <functional>
#include <ostream>
#include <utility>

namespace hyperbib {

namespace {

constexpr const char* kMissing = "NA";

void write_comments(std::ostream& out, const CommentLines& comments) {
    for (const auto& line : comments) out << "# " << line << '\n';
}

std::string opt_real(const std::optional<CitationIndicators>& c, double CitationIndicators::*field) {
    return c ? format_real((*c).*field) : kMissing;
}

std::string opt_int(const std::optional<CitationIndicators>& c, std::int64_t CitationIndicators::*field) {
    return c ? std::to_string((*c).*field) : kMissing;
}

using Column = std::pair<const char*, std::function<std::string(const IndicatorSet&)>>;

// Row order follows the summary tables: counts, authorship, citations, rates.
const std::vector<Column>& indicator_columns() {
    static const std::vector<Column> columns = {
        {"publications", [](const IndicatorSet& s) { return std::to_string(s.publication_count); }},
        {"mean_authors", [](const IndicatorSet& s) { return format_real(s.mean_authors); }},
        {"median_authors", [](const IndicatorSet& s) { return format_real(s.median_authors); }},
        {"single_author_share", [](const IndicatorSet& s) { return format_real(s.single_author_share); }},
        {"max_authors", [](const IndicatorSet& s) { return std::to_string(s.max_authors); }},
        {"mean_citations", [](const IndicatorSet& s) { return opt_real(s.citations, &CitationIndicators::mean_citations); }},
        {"median_citations",
         [](const IndicatorSet& s) { return opt_real(s.citations, &CitationIndicators::median_citations); }},
        {"max_citations", [](const IndicatorSet& s) { return opt_int(s.citations, &CitationIndicators::max_citations); }},
        {"uncited_share", [](const IndicatorSet& s) { return opt_real(s.citations, &CitationIndicators::uncited_share); }},
        {"h_index", [](const IndicatorSet& s) { return opt_int(s.citations, &CitationIndicators::h_index); }},
        {"mean_publications_per_year", [](const IndicatorSet& s) { return format_real(s.mean_publications_per_year); }},
        {"mean_citations_per_year",
         [](const IndicatorSet& s) { return opt_real(s.citations, &CitationIndicators::mean_citations_per_year); }},
        {"citation_publications",
         [](const IndicatorSet& s) { return s.citations ? std::to_string(s.citations->publication_count) : kMissing; }},
        {"total_citations", [](const IndicatorSet& s) { return opt_int(s.citations, &CitationIndicators::total_citations); }},
        {"year_first", [](const IndicatorSet& s) { return std::to_string(s.year_first); }},
        {"year_last", [](const IndicatorSet& s) { return std::to_string(s.year_last); }},
        {"citation_cutoff_year",
         [](const IndicatorSet& s) { return s.citation_cutoff_year ? std::to_string(*s.citation_cutoff_year) : kMissing; }},
    };
    return columns;
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
    if (ec != std::errc{}) return kMissing;
    std::string s(buf, ptr);
    return s == "-0.000000" ? "0.000000" : s;
}

void write_indicator_tsv(std::ostream& out, const IndicatorSet& set, const CommentLines& comments) {
    write_comments(out, comments);
    out << "metric\tvalue\n";
    for (const auto& [name, get] : indicator_columns()) out << name << '\t' << get(set) << '\n';
}

void write_year_series(std::ostream& out, const YearSeries& series, const std::string& value_name,
                       const CommentLines& comments) {
    write_comments(out, comments);
    out << "# year\t" << value_name << '\n';
    for (const auto& [year, value] : series.points) out << year << '\t' << format_real(value) << '\n';
}

void write_h_index_series(std::ostream& out, const HIndexSeries& series, const CommentLines& comments) {
    write_comments(out, comments);
    out << "# year\th_index\n";
    for (const auto& [year, h] : series.points) out << year << '\t' << h << '\n';
}

void write_sensitivity_tsv(std::ostream& out, const SensitivityTable& table, const CommentLines& comments) {
    const bool exclusion = !table.rows.empty() && table.rows.front().excluded_share.has_value();
    write_comments(out, comments);

    out << (exclusion ? "n\tmode\tpubs\texcluded_share\tcites" : "n\tmode\tpubs\tpub_share\tcites\tcite_share");
    for (const auto& [name, get] : indicator_columns()) out << '\t' << name;
    out << '\n';

    auto indicators = [&](const std::optional<IndicatorSet>& set) {
        for (const auto& [name, get] : indicator_columns()) out << '\t' << (set ? get(*set) : kMissing);
        out << '\n';
    };
    auto base_share = [&](std::int64_t part, std::int64_t whole) -> std::string {
        if (whole <= 0 || part > whole) return kMissing;
        return share(part, whole, table.decimals).str();
    };

    const auto baseline_pubs = static_cast<std::int64_t>(table.baseline.publication_count);
    out << "all\t-\t" << baseline_pubs << '\t';
    if (exclusion) {
        out << "-\t" << table.corpus_citation_count;
    } else {
        out << base_share(baseline_pubs, static_cast<std::int64_t>(table.base_publication_count)) << '\t'
            << table.corpus_citation_count << '\t' << base_share(table.corpus_citation_count, table.base_citation_count);
    }
    indicators(table.baseline);

    for (const auto& row : table.rows) {
        out << row.spec.n << '\t' << to_string(row.spec.mode) << '\t' << row.selected_publication_count << '\t';
        if (exclusion) {
            out << (row.excluded_share ? row.excluded_share->str() : kMissing) << '\t' << row.selected_citation_count;
        } else {
            out << row.publication_share.str() << '\t' << row.selected_citation_count << '\t'
                << (row.citation_share ? row.citation_share->str() : kMissing);
        }
        indicators(row.indicators);
    }
}

void write_distribution(std::ostream& out, const AuthorCountDistribution& dist, const CommentLines& comments) {
    write_comments(out, comments);
    out << "# total " << dist.total << '\n';
    out << "# authors\t" << (dist.normalized ? "frequency" : "count") << '\n';
    for (const auto& [k, f] : dist.support) {
        out << k << '\t';
        if (dist.normalized) {
            // 17 significant digits round-trip the double exactly.
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, f, std::chars_format::general, 17);
            out << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
        } else {
            out << static_cast<std::int64_t>(f);
        }
        out << '\n';
    }
}

void write_citation_frequency(std::ostream& out, const CitationFrequency& freq, const CommentLines& comments) {
    write_comments(out, comments);
    out << "# citations\tpublications\thyperauthored_share\n";
    for (const auto& p : freq) out << p.citations << '\t' << p.publications << '\t' << format_real(p.hyperauthored_share) << '\n';
}

void write_cluster_report(std::ostream& out, const std::vector<CollaborationCluster>& clusters,
                          const CommentLines& comments) {
    write_comments(out, comments);
    out << "label\tmembers\tcentroid\tband_min\tband_max\tyear_first\tyear_last\n";
    for (const auto& c : clusters)
        out << c.label << '\t' << c.member_ids.size() << '\t' << format_real(c.centroid_size) << '\t' << c.band_min << '\t'
            << c.band_max << '\t' << c.year_first << '\t' << c.year_last << '\n';
}

}  // namespace hyperbib
