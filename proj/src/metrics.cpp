#include "hyperbib/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hyperbib {

double Percent::value() const {
    double scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    return static_cast<double>(scaled) / scale;
}

std::string Percent::str() const {
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    std::string out = std::to_string(scaled / scale);
    if (decimals > 0) {
        std::string frac = std::to_string(scaled % scale);
        out += '.' + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
    }
    return out;
}

Percent share(std::int64_t part, std::int64_t whole, int decimals) {
    if (whole <= 0) throw std::invalid_argument("share: whole must be positive");
    if (part < 0 || part > whole) throw std::invalid_argument("share: part must lie in [0, whole]");
    if (decimals < 0 || decimals > 9) throw std::invalid_argument("share: decimals must lie in [0, 9]");
    __int128 scale = 100;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    __int128 num = static_cast<__int128>(part) * scale * 2 + whole;
    __int128 den = static_cast<__int128>(whole) * 2;
    return Percent{static_cast<std::int64_t>(num / den), decimals};
}

std::int64_t h_index(std::span<const std::int64_t> citation_counts) {
    const std::size_t n = citation_counts.size();
    // bucket[k] = number of values equal to k, with everything >= n folded into n
    std::vector<std::size_t> bucket(n + 1, 0);
    for (auto c : citation_counts) {
        auto k = c < 0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(c), n);
        ++bucket[k];
    }
    std::size_t at_least = 0;
    for (std::size_t h = n; h > 0; --h) {
        at_least += bucket[h];
        if (at_least >= h) return static_cast<std::int64_t>(h);
    }
    return 0;
}

double median(std::vector<std::int64_t> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sample");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double upper = static_cast<double>(values[mid]);
    if (values.size() % 2 == 1) return upper;
    double lower = static_cast<double>(*std::max_element(values.begin(), values.begin() + mid));
    return (lower + upper) / 2.0;
}

IndicatorSet indicator_set(const Corpus& corpus, std::optional<int> citation_cutoff_year,
                           std::optional<YearSpan> analysis_span) {
    if (corpus.empty()) throw std::invalid_argument("indicator_set: corpus is empty");

    IndicatorSet s;
    const auto n = corpus.size();
    s.publication_count = n;
    s.citation_cutoff_year = citation_cutoff_year;

    std::vector<std::int64_t> authors;
    authors.reserve(n);
    std::int64_t author_sum = 0, single = 0;
    int first = corpus.records().front().year, last = first;
    for (const auto& r : corpus) {
        authors.push_back(r.author_count);
        author_sum += r.author_count;
        if (r.author_count == 1) ++single;
        first = std::min(first, r.year);
        last = std::max(last, r.year);
    }
    s.mean_authors = static_cast<double>(author_sum) / static_cast<double>(n);
    s.max_authors = *std::max_element(authors.begin(), authors.end());
    s.median_authors = median(std::move(authors));
    s.single_author_share = static_cast<double>(single) / static_cast<double>(n);
    s.year_first = first;
    s.year_last = last;
    const int pub_span = analysis_span ? analysis_span->length() : last - first + 1;
    s.mean_publications_per_year = static_cast<double>(n) / pub_span;

    std::vector<std::int64_t> cites;
    std::int64_t cite_sum = 0, uncited = 0;
    int c_first = kMaxYear + 1, c_last = kMinYear - 1;
    for (const auto& r : corpus) {
        if (citation_cutoff_year && r.year > *citation_cutoff_year) continue;
        cites.push_back(r.citation_total);
        cite_sum += r.citation_total;
        if (r.citation_total == 0) ++uncited;
        c_first = std::min(c_first, r.year);
        c_last = std::max(c_last, r.year);
    }
    if (!cites.empty()) {
        CitationIndicators c;
        const auto m = cites.size();
        c.publication_count = m;
        c.total_citations = cite_sum;
        c.mean_citations = static_cast<double>(cite_sum) / static_cast<double>(m);
        c.max_citations = *std::max_element(cites.begin(), cites.end());
        c.uncited_share = static_cast<double>(uncited) / static_cast<double>(m);
        c.h_index = h_index(cites);
        c.median_citations = median(std::move(cites));
        const int cite_span = analysis_span ? analysis_span->length() : c_last - c_first + 1;
        c.mean_citations_per_year = static_cast<double>(cite_sum) / cite_span;
        s.citations = c;
    }
    return s;
}

namespace {

YearSeries fill_gaps(const std::map<int, std::int64_t>& counts) {
    YearSeries out;
    if (counts.empty()) return out;
    const int first = counts.begin()->first, last = counts.rbegin()->first;
    for (int y = first; y <= last; ++y) {
        auto it = counts.find(y);
        out.points.emplace_back(y, it == counts.end() ? 0.0 : static_cast<double>(it->second));
    }
    return out;
}

}  // namespace

SplitYearCounts yearly_counts(const Corpus& corpus, std::int64_t split_at) {
    if (split_at < 1) throw std::invalid_argument("yearly_counts: split_at must be >= 1");
    std::map<int, std::int64_t> small, large;
    for (const auto& r : corpus) ++(r.author_count <= split_at ? small : large)[r.year];
    return {fill_gaps(small), fill_gaps(large)};
}

YearSeries yearly_mean_citations(const Corpus& corpus, std::optional<std::int64_t> max_author_count) {
    std::map<int, std::pair<std::int64_t, std::int64_t>> acc;  // year -> (sum, count)
    for (const auto& r : corpus) {
        if (max_author_count && r.author_count > *max_author_count) continue;
        auto& [sum, count] = acc[r.year];
        sum += r.citation_total;
        ++count;
    }
    YearSeries out;
    for (const auto& [year, sc] : acc)
        out.points.emplace_back(year, static_cast<double>(sc.first) / static_cast<double>(sc.second));
    return out;
}

HIndexSeries h_index_series(const Corpus& corpus) {
    std::vector<std::string> missing;
    for (const auto& r : corpus)
        if (!r.citations_by_year) missing.push_back(r.id);
    if (!missing.empty()) {
        std::string what = "records lack citations_by_year:";
        for (const auto& id : missing) what += ' ' + id;
        throw PreconditionError(what, std::move(missing));
    }

    HIndexSeries out;
    if (corpus.empty()) return out;

    // Records ordered by publication year so the admitted set is a prefix.
    std::vector<const PublicationRecord*> order;
    for (const auto& r : corpus) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(),
                     [](const PublicationRecord* a, const PublicationRecord* b) { return a->year < b->year; });

    const int first = order.front()->year;
    int last = order.back()->year;
    for (const auto* r : order)
        if (!r->citations_by_year->empty()) last = std::max(last, r->citations_by_year->rbegin()->first);

    std::vector<std::int64_t> cumulative(order.size(), 0);
    std::vector<std::map<int, std::int64_t>::const_iterator> next(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) next[i] = order[i]->citations_by_year->begin();

    std::size_t admitted = 0;
    for (int y = first; y <= last; ++y) {
        while (admitted < order.size() && order[admitted]->year <= y) ++admitted;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto& events = *order[i]->citations_by_year;
            while (next[i] != events.end() && next[i]->first <= y) {
                cumulative[i] += next[i]->second;
                ++next[i];
            }
        }
        out.points.emplace_back(y, h_index(std::span<const std::int64_t>(cumulative.data(), admitted)));
    }
    return out;
}

}  // namespace hyperbib
