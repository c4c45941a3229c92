#include "hyperbib/collab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace hyperbib {

AuthorCountDistribution author_count_distribution(const Corpus& corpus, bool normalize) {
    if (corpus.empty()) throw std::invalid_argument("author_count_distribution: corpus is empty");
    std::map<std::int64_t, std::size_t> counts;
    for (const auto& r : corpus) ++counts[r.author_count];

    AuthorCountDistribution d;
    d.normalized = normalize;
    d.total = corpus.size();
    const double total = static_cast<double>(corpus.size());
    for (const auto& [k, c] : counts)
        d.support.emplace_back(k, normalize ? static_cast<double>(c) / total : static_cast<double>(c));
    return d;
}

CitationFrequency citation_frequency(const Corpus& corpus, std::int64_t hyper_threshold) {
    if (hyper_threshold < 1) throw std::invalid_argument("citation_frequency: hyper_threshold must be >= 1");
    std::map<std::int64_t, std::pair<std::size_t, std::size_t>> acc;  // c -> (all, hyperauthored)
    for (const auto& r : corpus) {
        auto& [all, hyper] = acc[r.citation_total];
        ++all;
        if (r.author_count > hyper_threshold) ++hyper;
    }
    CitationFrequency out;
    for (const auto& [c, counts] : acc)
        out.push_back({c, counts.first, static_cast<double>(counts.second) / static_cast<double>(counts.first)});
    return out;
}

namespace {

CollaborationCluster describe(const std::vector<const PublicationRecord*>& members) {
    CollaborationCluster c;
    double sum = 0;
    c.band_min = members.front()->author_count;
    c.band_max = c.band_min;
    c.year_first = members.front()->year;
    c.year_last = c.year_first;
    for (const auto* r : members) {
        c.member_ids.push_back(r->id);
        sum += static_cast<double>(r->author_count);
        c.band_min = std::min(c.band_min, r->author_count);
        c.band_max = std::max(c.band_max, r->author_count);
        c.year_first = std::min(c.year_first, r->year);
        c.year_last = std::max(c.year_last, r->year);
    }
    std::sort(c.member_ids.begin(), c.member_ids.end());
    c.centroid_size = sum / static_cast<double>(members.size());

    const auto& label = members.front()->collab_label;
    bool unanimous = label.has_value() && std::all_of(members.begin(), members.end(), [&](const PublicationRecord* r) {
                         return r->collab_label == label;
                     });
    c.label = unanimous ? *label : "C" + std::to_string(std::llround(c.centroid_size));
    return c;
}

}  // namespace

std::vector<CollaborationCluster> detect_clusters(const Corpus& corpus, const DetectOptions& options) {
    if (!(options.rel_tol > 0.0 && options.rel_tol < 1.0))
        throw std::invalid_argument("detect_clusters: rel_tol must lie in (0, 1)");
    if (options.min_members < 1) throw std::invalid_argument("detect_clusters: min_members must be >= 1");

    std::vector<const PublicationRecord*> linkable;
    std::map<std::string, std::vector<const PublicationRecord*>> by_label;
    for (const auto& r : corpus) {
        if (r.author_count <= options.min_size) continue;
        if (options.group_by_label && r.collab_label)
            by_label[*r.collab_label].push_back(&r);
        else
            linkable.push_back(&r);
    }
    std::sort(linkable.begin(), linkable.end(), [](const PublicationRecord* a, const PublicationRecord* b) {
        return a->author_count != b->author_count ? a->author_count < b->author_count : a->id < b->id;
    });

    std::vector<std::vector<const PublicationRecord*>> groups;
    for (std::size_t i = 0; i < linkable.size(); ++i) {
        bool joins = false;
        if (i > 0) {
            auto lo = static_cast<double>(linkable[i - 1]->author_count);
            auto hi = static_cast<double>(linkable[i]->author_count);
            joins = (hi - lo) / hi <= options.rel_tol;
        }
        if (!joins) groups.emplace_back();
        groups.back().push_back(linkable[i]);
    }
    for (auto& [label, members] : by_label) groups.push_back(std::move(members));

    std::vector<CollaborationCluster> clusters;
    for (const auto& g : groups)
        if (g.size() >= options.min_members) clusters.push_back(describe(g));

    std::sort(clusters.begin(), clusters.end(), [](const CollaborationCluster& a, const CollaborationCluster& b) {
        return a.centroid_size != b.centroid_size ? a.centroid_size > b.centroid_size
                                                  : a.member_ids.front() < b.member_ids.front();
    });

    // Auto labels can collide after rounding; suffix repeats in output order.
    std::set<std::string> used;
    for (auto& c : clusters) {
        std::string label = c.label;
        for (int k = 2; used.count(label); ++k) label = c.label + "-" + std::to_string(k);
        c.label = label;
        used.insert(label);
    }
    return clusters;
}

Corpus cluster_members(const CollaborationCluster& cluster, const Corpus& corpus) {
    std::vector<PublicationRecord> members;
    for (const auto& id : cluster.member_ids) {
        const auto* r = corpus.find(id);
        if (r == nullptr)
            throw std::invalid_argument("cluster '" + cluster.label + "' member '" + id + "' is not in the corpus");
        members.push_back(*r);
    }
    return Corpus(std::move(members), corpus.provenance());
}

YearSeries cluster_yearly_counts(const CollaborationCluster& cluster, const Corpus& corpus) {
    Corpus members = cluster_members(cluster, corpus);
    YearSeries out;
    if (members.empty()) return out;
    std::map<int, std::int64_t> counts;
    for (const auto& r : members) ++counts[r.year];
    for (int y = counts.begin()->first; y <= counts.rbegin()->first; ++y) {
        auto it = counts.find(y);
        out.points.emplace_back(y, it == counts.end() ? 0.0 : static_cast<double>(it->second));
    }
    return out;
}

HIndexSeries cluster_h_index_series(const CollaborationCluster& cluster, const Corpus& corpus) {
    return h_index_series(cluster_members(cluster, corpus));
}

}  // namespace hyperbib
