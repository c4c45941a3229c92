#ifndef HYPERBIB_RECORD_HPP
#define HYPERBIB_RECORD_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperbib {

inline constexpr int kMinYear = 1800;
inline constexpr int kMaxYear = 2100;

/// One publication as it enters the toolkit.
struct PublicationRecord {
    std::string id;
    int year = 0;
    std::int64_t author_count = 0;
    std::int64_t citation_total = 0;
    /// Citation events keyed by calendar year; sums to citation_total when present.
    std::optional<std::map<int, std::int64_t>> citations_by_year;
    std::optional<std::string> title;
    std::optional<std::vector<std::string>> affiliations;
    std::optional<std::string> collab_label;

    bool operator==(const PublicationRecord&) const = default;
};

enum class ErrorReason {
    MissingField,
    BadType,
    RangeViolation,
    DuplicateId,
    CitationSumMismatch,
};

enum class Severity { Error, Warning };

std::string_view to_string(ErrorReason reason);
std::string_view to_string(Severity severity);

/// A per-line (or per-record) problem. Warnings accompany an accepted record;
/// errors mean the record was dropped.
struct RecordError {
    std::size_t line_number = 0;
    ErrorReason reason = ErrorReason::BadType;
    std::string detail;
    Severity severity = Severity::Error;

    bool operator==(const RecordError&) const = default;
};

/// Checks every record-level invariant. Returns the problems found; the
/// record is acceptable iff none of them has Severity::Error.
std::vector<RecordError> validate_record(const PublicationRecord& record, std::size_t line_number);

bool has_fatal(const std::vector<RecordError>& errors);

}  // namespace hyperbib

#endif  // HYPERBIB_RECORD_HPP
