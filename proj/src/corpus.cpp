#include "hyperbib/corpus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hyperbib {

Corpus::Corpus(std::vector<PublicationRecord> records, std::string provenance)
    : records_(std::move(records)), provenance_(std::move(provenance)) {
    std::sort(records_.begin(), records_.end(),
              [](const PublicationRecord& a, const PublicationRecord& b) { return a.id < b.id; });
    auto dup = std::adjacent_find(records_.begin(), records_.end(),
                                  [](const PublicationRecord& a, const PublicationRecord& b) { return a.id == b.id; });
    if (dup != records_.end()) throw std::invalid_argument("duplicate record id '" + dup->id + "'");
}

const PublicationRecord* Corpus::find(std::string_view id) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), id,
                               [](const PublicationRecord& r, std::string_view key) { return r.id < key; });
    if (it == records_.end() || it->id != id) return nullptr;
    return &*it;
}

Corpus Corpus::select(const std::function<bool(const PublicationRecord&)>& pred) const {
    Corpus out;
    out.provenance_ = provenance_;
    std::copy_if(records_.begin(), records_.end(), std::back_inserter(out.records_), pred);
    return out;
}

BuildResult build_corpus(std::vector<PublicationRecord> records, DedupPolicy policy, std::string provenance) {
    BuildResult result;
    std::vector<bool> keep(records.size(), true);
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto problems = validate_record(records[i], i + 1);
        if (has_fatal(problems)) keep[i] = false;
        result.errors.insert(result.errors.end(), problems.begin(), problems.end());
    }

    std::unordered_map<std::string, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (keep[i]) positions[records[i].id].push_back(i);

    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!keep[i]) continue;
        const auto& where = positions[records[i].id];
        if (where.size() < 2) continue;
        bool first = where.front() == i;
        if (policy == DedupPolicy::KeepFirst && first) continue;
        keep[i] = false;
        result.errors.push_back(RecordError{i + 1, ErrorReason::DuplicateId,
                                            "duplicate id '" + records[i].id + "'", Severity::Error});
    }

    std::vector<PublicationRecord> kept;
    kept.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        if (keep[i]) kept.push_back(std::move(records[i]));

    std::stable_sort(result.errors.begin(), result.errors.end(),
                     [](const RecordError& a, const RecordError& b) { return a.line_number < b.line_number; });
    result.corpus = Corpus(std::move(kept), std::move(provenance));
    return result;
}

Corpus filter_period(const Corpus& corpus, int year_min, int year_max) {
    if (year_min > year_max)
        throw std::invalid_argument("filter_period: year_min " + std::to_string(year_min) + " > year_max " +
                                    std::to_string(year_max));
    return corpus.select([=](const PublicationRecord& r) { return r.year >= year_min && r.year <= year_max; });
}

}  // namespace hyperbib
