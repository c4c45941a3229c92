#include "hyperbib/sensitivity.hpp"

#include <stdexcept>
#include <string>

namespace hyperbib {

ThresholdMode parse_threshold_mode(std::string_view name) {
    if (name == "exceeds") return ThresholdMode::Exceeds;
    if (name == "at_most") return ThresholdMode::AtMost;
    throw std::invalid_argument("unknown threshold mode '" + std::string(name) + "' (expected exceeds or at_most)");
}

std::string_view to_string(ThresholdMode mode) {
    return mode == ThresholdMode::Exceeds ? "exceeds" : "at_most";
}

Corpus filter_by_authors(const Corpus& corpus, const ThresholdSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("threshold n must be >= 1");
    return corpus.select([&](const PublicationRecord& r) { return spec.selects(r.author_count); });
}

namespace {

std::int64_t citation_sum(const Corpus& corpus) {
    std::int64_t sum = 0;
    for (const auto& r : corpus) sum += r.citation_total;
    return sum;
}

}  // namespace

SensitivityTable sensitivity_table(const Corpus& corpus, const Corpus& base, const std::vector<ThresholdSpec>& thresholds,
                                   std::optional<int> citation_cutoff_year, int decimals,
                                   std::optional<YearSpan> analysis_span) {
    if (thresholds.empty()) throw std::invalid_argument("sensitivity_table: no thresholds given");
    for (const auto& r : corpus)
        if (base.find(r.id) == nullptr)
            throw std::invalid_argument("sensitivity_table: record '" + r.id + "' is not in the base corpus");
    if (base.empty()) throw std::invalid_argument("sensitivity_table: base corpus is empty");

    SensitivityTable table;
    table.baseline = indicator_set(corpus, citation_cutoff_year, analysis_span);
    table.base_publication_count = base.size();
    table.base_citation_count = citation_sum(base);
    table.corpus_citation_count = citation_sum(corpus);
    table.decimals = decimals;
    const auto base_pubs = static_cast<std::int64_t>(table.base_publication_count);

    for (const auto& spec : thresholds) {
        Corpus selected = filter_by_authors(corpus, spec);
        SensitivityRow row;
        row.spec = spec;
        row.selected_publication_count = selected.size();
        row.selected_citation_count = citation_sum(selected);
        row.publication_share = share(static_cast<std::int64_t>(selected.size()), base_pubs, decimals);
        if (table.base_citation_count > 0)
            row.citation_share = share(row.selected_citation_count, table.base_citation_count, decimals);
        if (!selected.empty()) row.indicators = indicator_set(selected, citation_cutoff_year, analysis_span);
        table.rows.push_back(std::move(row));
    }
    return table;
}

SensitivityTable exclusion_report(const Corpus& corpus, const std::vector<std::int64_t>& thresholds,
                                  std::optional<int> citation_cutoff_year, int decimals,
                                  std::optional<YearSpan> analysis_span) {
    std::vector<ThresholdSpec> specs;
    for (auto n : thresholds) specs.push_back({n, ThresholdMode::AtMost});
    SensitivityTable table = sensitivity_table(corpus, corpus, specs, citation_cutoff_year, decimals, analysis_span);
    const auto total = static_cast<std::int64_t>(corpus.size());
    for (auto& row : table.rows)
        row.excluded_share = share(total - static_cast<std::int64_t>(row.selected_publication_count), total, decimals);
    return table;
}

}  // namespace hyperbib
