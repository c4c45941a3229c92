#ifndef HYPERBIB_METRICS_HPP
#define HYPERBIB_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperbib/corpus.hpp"

namespace hyperbib {

/// A percentage rounded half-up to a fixed number of decimals, stored exactly
/// as an integer count of 10^-decimals percent.
struct Percent {
    std::int64_t scaled = 0;
    int decimals = 0;

    double value() const;
    std::string str() const;
    bool operator==(const Percent&) const = default;
};

/// 100 * part / whole, rounded half-up to `decimals` places.
/// Throws std::invalid_argument when whole == 0, part > whole, or decimals
/// is outside 0..9.
Percent share(std::int64_t part, std::int64_t whole, int decimals);

/// Largest h such that at least h of the values are >= h.
std::int64_t h_index(std::span<const std::int64_t> citation_counts);

double median(std::vector<std::int64_t> values);

/// Indicators computed over the records that enter citation statistics.
struct CitationIndicators {
    std::size_t publication_count = 0;
    std::int64_t total_citations = 0;
    double mean_citations = 0;
    double median_citations = 0;
    std::int64_t max_citations = 0;
    double uncited_share = 0;
    std::int64_t h_index = 0;
    double mean_citations_per_year = 0;

    bool operator==(const CitationIndicators&) const = default;
};

struct IndicatorSet {
    std::size_t publication_count = 0;
    double mean_authors = 0;
    double median_authors = 0;
    std::int64_t max_authors = 0;
    double single_author_share = 0;
    int year_first = 0;
    int year_last = 0;
    double mean_publications_per_year = 0;
    std::optional<int> citation_cutoff_year;
    /// Absent when the cutoff leaves no publication to count citations for.
    std::optional<CitationIndicators> citations;

    bool operator==(const IndicatorSet&) const = default;
};

/// Denominator for the per-year means.
struct YearSpan {
    int first = 0;
    int last = 0;
    int length() const { return last - first + 1; }
};

/// Author statistics over all records; citation statistics over records
/// published no later than `citation_cutoff_year` (all records when absent).
///
/// Per-year means divide by the publication span of the records involved
/// (min..max year) unless `analysis_span` is given, in which case both means
/// divide by its length. Throws std::invalid_argument on an empty corpus.
IndicatorSet indicator_set(const Corpus& corpus, std::optional<int> citation_cutoff_year = std::nullopt,
                           std::optional<YearSpan> analysis_span = std::nullopt);

/// (year, value) points with strictly increasing years.
struct YearSeries {
    std::vector<std::pair<int, double>> points;

    bool empty() const { return points.empty(); }
    bool operator==(const YearSeries&) const = default;
};

struct HIndexSeries {
    std::vector<std::pair<int, std::int64_t>> points;

    bool empty() const { return points.empty(); }
    bool operator==(const HIndexSeries&) const = default;
};

/// Per-year publication counts; missing years inside a series' span are 0.
struct SplitYearCounts {
    YearSeries small_teams;  ///< author_count <= split_at
    YearSeries large_teams;  ///< author_count > split_at
};

SplitYearCounts yearly_counts(const Corpus& corpus, std::int64_t split_at);

/// Mean citation_total per publication year over records with
/// author_count <= max_author_count (all records when absent). Years with no
/// qualifying record are omitted.
YearSeries yearly_mean_citations(const Corpus& corpus, std::optional<std::int64_t> max_author_count = std::nullopt);

/// Thrown when an operation needs data a record does not carry.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(const std::string& what, std::vector<std::string> ids)
        : std::runtime_error(what), ids_(std::move(ids)) {}
    const std::vector<std::string>& record_ids() const { return ids_; }

private:
    std::vector<std::string> ids_;
};

/// Cumulative h-index: for each year y from the earliest publication year to
/// the latest citation (or publication) year, the h-index of records published
/// by y counting only citation events dated <= y. Throws PreconditionError
/// listing every record without citations_by_year.
HIndexSeries h_index_series(const Corpus& corpus);

}  // namespace hyperbib

#endif  // HYPERBIB_METRICS_HPP
