#ifndef HYPERBIB_REPORT_HPP
#define HYPERBIB_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperbib/collab.hpp"
#include "hyperbib/metrics.hpp"
#include "hyperbib/sensitivity.hpp"

// Plain-text writers for every report the toolkit emits. Each writer starts
// with the given comment lines (prefixed "# "), then a column header line
// and tab-separated rows. Reals use fixed notation with six decimals so
// output is byte-stable.

namespace hyperbib {

using CommentLines = std::vector<std::string>;

std::string format_real(double value);

void write_indicator_tsv(std::ostream& out, const IndicatorSet& set, const CommentLines& comments = {});
void write_year_series(std::ostream& out, const YearSeries& series, const std::string& value_name,
                       const CommentLines& comments = {});
void write_h_index_series(std::ostream& out, const HIndexSeries& series, const CommentLines& comments = {});

/// Threshold-table layout (n, pubs, pub_share, cites, cite_share, ...) unless
/// the rows carry excluded shares, which selects the exclusion layout
/// (n, pubs, excluded_share, cites, ...). The first row, labelled "all", is
/// the unfiltered baseline.
void write_sensitivity_tsv(std::ostream& out, const SensitivityTable& table, const CommentLines& comments = {});

void write_distribution(std::ostream& out, const AuthorCountDistribution& dist, const CommentLines& comments = {});
void write_citation_frequency(std::ostream& out, const CitationFrequency& freq, const CommentLines& comments = {});
void write_cluster_report(std::ostream& out, const std::vector<CollaborationCluster>& clusters,
                          const CommentLines& comments = {});

}  // namespace hyperbib

#endif  // HYPERBIB_REPORT_HPP
