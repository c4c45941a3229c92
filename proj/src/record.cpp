#include "hyperbib/record.hpp"

#include <algorithm>

namespace hyperbib {

std::string_view to_string(ErrorReason reason) {
    switch (reason) {
        case ErrorReason::MissingField: return "missing-field";
        case ErrorReason::BadType: return "bad-type";
        case ErrorReason::RangeViolation: return "range-violation";
        case ErrorReason::DuplicateId: return "duplicate-id";
        case ErrorReason::CitationSumMismatch: return "citation-sum-mismatch";
    }
    return "unknown";
}

std::string_view to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

std::vector<RecordError> validate_record(const PublicationRecord& record, std::size_t line_number) {
    std::vector<RecordError> out;
    auto fail = [&](ErrorReason reason, std::string detail, Severity severity = Severity::Error) {
        out.push_back(RecordError{line_number, reason, std::move(detail), severity});
    };

    if (record.id.empty()) fail(ErrorReason::MissingField, "id is empty");
    if (record.year < kMinYear || record.year > kMaxYear)
        fail(ErrorReason::RangeViolation, "year " + std::to_string(record.year) + " outside 1800-2100");
    if (record.author_count < 1)
        fail(ErrorReason::RangeViolation, "authors must be >= 1, got " + std::to_string(record.author_count));
    if (record.citation_total < 0)
        fail(ErrorReason::RangeViolation, "citations must be >= 0, got " + std::to_string(record.citation_total));

    if (record.affiliations) {
        if (std::any_of(record.affiliations->begin(), record.affiliations->end(),
                        [](const std::string& a) { return a.empty(); }))
            fail(ErrorReason::RangeViolation, "empty affiliation string");
    }

    if (record.citations_by_year) {
        std::int64_t sum = 0;
        bool range_ok = true;
        bool early = false;
        for (const auto& [year, count] : *record.citations_by_year) {
            if (year < kMinYear || year > kMaxYear) range_ok = false;
            if (count < 0) range_ok = false;
            if (year < record.year) early = true;
            sum += count;
        }
        if (!range_ok) {
            fail(ErrorReason::RangeViolation, "citations_by_year has a year outside 1800-2100 or a negative count");
        } else if (sum != record.citation_total) {
            fail(ErrorReason::CitationSumMismatch, "citations_by_year sums to " + std::to_string(sum) +
                                                       ", citations is " + std::to_string(record.citation_total));
        }
        if (early)
            fail(ErrorReason::RangeViolation, "citations_by_year has events before the publication year",
                 Severity::Warning);
    }
    return out;
}

bool has_fatal(const std::vector<RecordError>& errors) {
    return std::any_of(errors.begin(), errors.end(),
                       [](const RecordError& e) { return e.severity == Severity::Error; });
}

}  // namespace hyperbib
