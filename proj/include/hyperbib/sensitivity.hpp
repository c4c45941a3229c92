#ifndef HYPERBIB_SENSITIVITY_HPP
#define HYPERBIB_SENSITIVITY_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hyperbib/corpus.hpp"
#include "hyperbib/metrics.hpp"

namespace hyperbib {

enum class ThresholdMode {
    Exceeds,  ///< author_count > n
    AtMost,   ///< author_count <= n
};

ThresholdMode parse_threshold_mode(std::string_view name);
std::string_view to_string(ThresholdMode mode);

struct ThresholdSpec {
    std::int64_t n = 1;
    ThresholdMode mode = ThresholdMode::Exceeds;

    bool selects(std::int64_t author_count) const {
        return mode == ThresholdMode::Exceeds ? author_count > n : author_count <= n;
    }
    bool operator==(const ThresholdSpec&) const = default;
};

inline const std::vector<std::int64_t> kDefaultThresholds = {50, 300, 500, 1000, 2000};

struct SensitivityRow {
    ThresholdSpec spec;
    std::size_t selected_publication_count = 0;
    std::int64_t selected_citation_count = 0;
    Percent publication_share;
    /// Absent when the base corpus has no citations at all.
    std::optional<Percent> citation_share;
    /// Share of the analysed corpus left out by an at_most filter.
    std::optional<Percent> excluded_share;
    /// Absent when nothing is selected.
    std::optional<IndicatorSet> indicators;
};

struct SensitivityTable {
    std::vector<SensitivityRow> rows;
    IndicatorSet baseline;
    std::size_t base_publication_count = 0;
    std::int64_t base_citation_count = 0;
    /// Citations summed over the analysed corpus (before any threshold).
    std::int64_t corpus_citation_count = 0;
    int decimals = 2;
};

/// Throws std::invalid_argument when spec.n < 1.
Corpus filter_by_authors(const Corpus& corpus, const ThresholdSpec& spec);

/// One row per threshold, in the order given. Counts and shares are relative
/// to `base`, which must contain every record of `corpus`. Selected citation
/// counts sum citation_total and ignore the cutoff; the cutoff only affects
/// each row's IndicatorSet and the baseline.
SensitivityTable sensitivity_table(const Corpus& corpus, const Corpus& base, const std::vector<ThresholdSpec>& thresholds,
                                   std::optional<int> citation_cutoff_year = std::nullopt, int decimals = 2,
                                   std::optional<YearSpan> analysis_span = std::nullopt);

/// at_most-n rows over `corpus` with the excluded share
/// share(count(author_count > n), count(corpus)).
SensitivityTable exclusion_report(const Corpus& corpus, const std::vector<std::int64_t>& thresholds,
                                  std::optional<int> citation_cutoff_year = std::nullopt, int decimals = 2,
                                  std::optional<YearSpan> analysis_span = std::nullopt);

}  // namespace hyperbib

#endif  // HYPERBIB_SENSITIVITY_HPP
