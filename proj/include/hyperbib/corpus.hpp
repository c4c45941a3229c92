#ifndef HYPERBIB_CORPUS_HPP
#define HYPERBIB_CORPUS_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperbib/record.hpp"

namespace hyperbib {

/// Immutable set of publication records with unique ids.
///
/// Records are held in ascending id order regardless of the order they were
/// supplied in, so two corpora holding the same records compare equal and
/// every downstream report is independent of input order.
class Corpus {
public:
    Corpus() = default;

    /// Throws std::invalid_argument if two records share an id.
    explicit Corpus(std::vector<PublicationRecord> records, std::string provenance = {});

    std::span<const PublicationRecord> records() const { return records_; }
    const std::string& provenance() const { return provenance_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    auto begin() const { return records_.cbegin(); }
    auto end() const { return records_.cend(); }

    /// Lookup by id; nullptr when absent.
    const PublicationRecord* find(std::string_view id) const;

    /// Sub-corpus of the records satisfying pred.
    Corpus select(const std::function<bool(const PublicationRecord&)>& pred) const;

    /// Equality ignores provenance.
    bool operator==(const Corpus& other) const { return records_ == other.records_; }

private:
    std::vector<PublicationRecord> records_;
    std::string provenance_;
};

enum class DedupPolicy { KeepFirst, Reject };

struct BuildResult {
    Corpus corpus;
    std::vector<RecordError> errors;
};

/// Validates records and enforces id uniqueness. Invalid records are dropped
/// with an error; warnings are reported but the record is kept. Line numbers
/// in reported errors are 1-based positions in `records`.
BuildResult build_corpus(std::vector<PublicationRecord> records, DedupPolicy policy,
                         std::string provenance = {});

/// Records with year_min <= year <= year_max. Throws std::invalid_argument when
/// year_min > year_max.
Corpus filter_period(const Corpus& corpus, int year_min, int year_max);

}  // namespace hyperbib

#endif  // HYPERBIB_CORPUS_HPP
