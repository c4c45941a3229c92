#ifndef HYPERBIB_COLLAB_HPP
#define HYPERBIB_COLLAB_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperbib/corpus.hpp"
#include "hyperbib/metrics.hpp"

namespace hyperbib {

struct AuthorCountDistribution {
    /// (author count k, f(k)) for every observed k, ascending.
    std::vector<std::pair<std::int64_t, double>> support;
    bool normalized = false;
    std::size_t total = 0;
};

/// Throws std::invalid_argument on an empty corpus.
AuthorCountDistribution author_count_distribution(const Corpus& corpus, bool normalize);

struct CitationFrequencyPoint {
    std::int64_t citations = 0;
    std::size_t publications = 0;
    /// Fraction of those publications with author_count > the hyper threshold.
    double hyperauthored_share = 0;

    bool operator==(const CitationFrequencyPoint&) const = default;
};

using CitationFrequency = std::vector<CitationFrequencyPoint>;

CitationFrequency citation_frequency(const Corpus& corpus, std::int64_t hyper_threshold);

struct CollaborationCluster {
    std::string label;
    std::vector<std::string> member_ids;  ///< ascending
    double centroid_size = 0;
    std::int64_t band_min = 0;
    std::int64_t band_max = 0;
    int year_first = 0;
    int year_last = 0;

    bool operator==(const CollaborationCluster&) const = default;
};

struct DetectOptions {
    std::int64_t min_size = 50;
    double rel_tol = 0.05;
    std::size_t min_members = 5;
    /// Group records carrying a collab label by that label before linkage;
    /// only unlabelled records are then linked by size.
    bool group_by_label = false;
};

/// Finds stable large-team bands among records with author_count > min_size.
///
/// Sorted author counts are chained by single linkage: neighbours k1 <= k2
/// join when (k2 - k1) / k2 <= rel_tol. Chains with at least min_members
/// records become clusters. A cluster adopts its members' collab label when
/// they all carry the same one, otherwise it is labelled "C<rounded centroid>".
/// Output is ordered by descending centroid. Throws std::invalid_argument
/// unless 0 < rel_tol < 1 and min_members >= 1.
std::vector<CollaborationCluster> detect_clusters(const Corpus& corpus, const DetectOptions& options = {});

/// Member records of the cluster. Throws std::invalid_argument naming the
/// first member id missing from the corpus.
Corpus cluster_members(const CollaborationCluster& cluster, const Corpus& corpus);

/// Per-year member counts, zero-filled across the members' year span.
YearSeries cluster_yearly_counts(const CollaborationCluster& cluster, const Corpus& corpus);

/// Group h-index dynamics over the pooled member records.
HIndexSeries cluster_h_index_series(const CollaborationCluster& cluster, const Corpus& corpus);

}  // namespace hyperbib

#endif  // HYPERBIB_COLLAB_HPP
