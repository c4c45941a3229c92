#include "hyperbib/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace hyperbib {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RecordRng::RecordRng(std::uint64_t seed, std::uint64_t index)
    : state_(splitmix(seed) ^ splitmix(index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL)) {}

std::uint64_t RecordRng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RecordRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::int64_t ShiftedPoisson::mode() const {
    auto fl = static_cast<std::int64_t>(std::floor(rate));
    // Integer rates have two modes (rate - 1 and rate); report the smaller.
    if (static_cast<double>(fl) == rate && fl > 0) return offset + fl - 1;
    return offset + fl;
}

bool GroundTruth::operator==(const GroundTruth& other) const {
    if (origin != other.origin || total_publications != other.total_publications ||
        total_citations != other.total_citations || labels.size() != other.labels.size())
        return false;
    for (const auto& [label, t] : labels) {
        auto it = other.labels.find(label);
        if (it == other.labels.end()) return false;
        const auto& o = it->second;
        if (t.publications != o.publications || t.citations != o.citations ||
            t.publication_share != o.publication_share || t.citation_share != o.citation_share)
            return false;
    }
    return true;
}

void validate_spec(const GeneratorSpec& spec) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument("generator spec: " + what);
    };
    auto year_ok = [](int y) { return y >= kMinYear && y <= kMaxYear; };
    require(spec.team.offset >= 1, "team offset must be >= 1");
    require(spec.team.rate > 0 && spec.team.rate <= 500, "team rate must lie in (0, 500]");
    require(spec.citations.exponent > 1, "citation exponent must be > 1");
    require(spec.citations.cap >= 0, "citation cap must be >= 0");
    require(year_ok(spec.year_first) && year_ok(spec.year_last) && spec.year_first <= spec.year_last,
            "invalid year range");
    for (double w : spec.aging_profile) require(w >= 0 && std::isfinite(w), "aging weights must be non-negative");
    if (!spec.aging_profile.empty())
        require(std::any_of(spec.aging_profile.begin(), spec.aging_profile.end(), [](double w) { return w > 0; }),
                "aging profile needs a positive weight");
    std::vector<std::string> labels;
    for (const auto& p : spec.planted) {
        require(!p.label.empty(), "planted label must be non-empty");
        require(p.n_pubs >= 1, "planted cluster '" + p.label + "' needs n_pubs >= 1");
        require(p.size_mean >= 1, "planted cluster '" + p.label + "' needs size_mean >= 1");
        require(p.size_jitter >= 0 && p.size_jitter < 1, "planted cluster '" + p.label + "' jitter must lie in [0, 1)");
        require(year_ok(p.year_first) && year_ok(p.year_last) && p.year_first <= p.year_last,
                "planted cluster '" + p.label + "' has an invalid year range");
        require(p.citation_multiplier >= 1, "planted cluster '" + p.label + "' multiplier must be >= 1");
        labels.push_back(p.label);
    }
    std::sort(labels.begin(), labels.end());
    require(std::adjacent_find(labels.begin(), labels.end()) == labels.end(), "planted labels must be unique");
}

std::vector<std::int64_t> apportion(std::int64_t total, const std::vector<double>& weights) {
    std::vector<std::int64_t> out(weights.size(), 0);
    if (weights.empty() || total == 0) return out;
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<double> frac(weights.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double quota = static_cast<double>(total) * weights[i] / sum;
        out[i] = static_cast<std::int64_t>(std::floor(quota));
        frac[i] = quota - static_cast<double>(out[i]);
        assigned += out[i];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    // Floating-point quotas can under- or overshoot by a unit; settle exactly.
    for (std::size_t k = 0; assigned < total; k = (k + 1) % order.size()) {
        if (weights[order[k]] <= 0) continue;
        ++out[order[k]];
        ++assigned;
    }
    for (auto it = order.rbegin(); assigned > total; ++it) {
        if (it == order.rend()) it = order.rbegin();
        if (out[*it] == 0) continue;
        --out[*it];
        --assigned;
    }
    return out;
}

namespace {

class PoissonSampler {
public:
    explicit PoissonSampler(double rate) : rate_(rate) {}

    std::int64_t operator()(double u) const {
        // Inversion in log space keeps large rates from underflowing exp(-rate).
        double log_p = -rate_;
        double cdf = std::exp(log_p);
        std::int64_t k = 0;
        while (u > cdf && k < 100000) {
            ++k;
            log_p += std::log(rate_) - std::log(static_cast<double>(k));
            cdf += std::exp(log_p);
        }
        return k;
    }

private:
    double rate_;
};

class ZetaSampler {
public:
    explicit ZetaSampler(const TruncatedZeta& model) : cdf_(static_cast<std::size_t>(model.cap) + 1) {
        double acc = 0;
        for (std::size_t c = 0; c < cdf_.size(); ++c) {
            acc += std::pow(static_cast<double>(c + 1), -model.exponent);
            cdf_[c] = acc;
        }
        for (auto& v : cdf_) v /= acc;
    }

    std::int64_t operator()(double u) const {
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return it - cdf_.begin();
    }

private:
    std::vector<double> cdf_;
};

std::string record_id(std::size_t index) {
    std::string digits = std::to_string(index);
    return "syn" + std::string(digits.size() < 7 ? 7 - digits.size() : 0, '0') + digits;
}

}  // namespace

Generated generate_corpus(const GeneratorSpec& spec, unsigned threads) {
    validate_spec(spec);

    Generated out;
    for (const auto& p : spec.planted)
        if (p.size_mean * (1 - p.size_jitter) <= 50)
            out.warnings.push_back("planted cluster '" + p.label + "' reaches sizes at or below 50 authors");

    // Slot i -> planted cluster index (or none for natural records).
    std::vector<const PlantedClusterSpec*> slot;
    slot.assign(spec.n_natural, nullptr);
    for (const auto& p : spec.planted) slot.insert(slot.end(), p.n_pubs, &p);

    const PoissonSampler poisson(spec.team.rate);
    const ZetaSampler zeta(spec.citations);
    std::vector<PublicationRecord> records(slot.size());

    auto draw = [&](std::size_t i) {
        RecordRng rng(spec.seed, i);
        const PlantedClusterSpec* p = slot[i];
        PublicationRecord& r = records[i];
        r.id = record_id(i);

        const int first = p ? p->year_first : spec.year_first;
        const int last = p ? p->year_last : spec.year_last;
        r.year = first + static_cast<int>(rng.uniform() * (last - first + 1));
        r.year = std::min(r.year, last);

        if (p) {
            double u = (2 * rng.uniform() - 1) * p->size_jitter;
            r.author_count = std::max<std::int64_t>(1, std::llround(p->size_mean * (1 + u)));
            r.citation_total = std::llround(p->citation_multiplier * static_cast<double>(zeta(rng.uniform())));
        } else {
            r.author_count = spec.team.offset + poisson(rng.uniform());
            r.citation_total = zeta(rng.uniform());
        }

        const int window_last = std::max(r.year, spec.year_last);
        std::vector<double> weights(static_cast<std::size_t>(window_last - r.year + 1), 1.0);
        if (!spec.aging_profile.empty())
            for (std::size_t k = 0; k < weights.size(); ++k)
                weights[k] = spec.aging_profile[std::min(k, spec.aging_profile.size() - 1)];
        if (std::all_of(weights.begin(), weights.end(), [](double w) { return w <= 0; }))
            std::fill(weights.begin(), weights.end(), 1.0);
        auto spread = apportion(r.citation_total, weights);
        std::map<int, std::int64_t> by_year;
        for (std::size_t k = 0; k < spread.size(); ++k)
            if (spread[k] > 0) by_year[r.year + static_cast<int>(k)] = spread[k];
        r.citations_by_year = std::move(by_year);
    };

    threads = std::max(1u, threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < records.size(); ++i) draw(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < records.size(); i += threads) draw(i);
            });
    }

    GroundTruth& truth = out.truth;
    truth.total_publications = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        truth.total_citations += records[i].citation_total;
        if (slot[i]) {
            truth.origin[records[i].id] = slot[i]->label;
            auto& t = truth.labels[slot[i]->label];
            ++t.publications;
            t.citations += records[i].citation_total;
        } else {
            truth.origin[records[i].id] = std::nullopt;
        }
    }
    for (auto& [label, t] : truth.labels) {
        t.publication_share = share(static_cast<std::int64_t>(t.publications),
                                    static_cast<std::int64_t>(truth.total_publications), 2);
        if (truth.total_citations > 0) t.citation_share = share(t.citations, truth.total_citations, 2);
    }

    out.corpus = Corpus(std::move(records), "synthetic seed=" + std::to_string(spec.seed));
    return out;
}

GeneratorSpec preset(std::string_view name) {
    GeneratorSpec spec;
    spec.seed = 1;
    spec.year_first = 1991;
    spec.year_last = 2019;
    spec.citations = {2.0, 5000};
    if (name == "fig1-physics") {
        // offset 1 with rate in (1, 2) puts the mode at two authors
        spec.n_natural = 20000;
        spec.team = {1, 1.5};
    } else if (name == "table2-ukraine") {
        // 20000 records; planted fractions follow the >500 / >1000 / >2000 rows
        spec.n_natural = 19856;
        spec.team = {1, 2.5};
        spec.planted = {
            {"LHCb", 56, 540, 0.05, 2010, 2019, 12.0},
            {"ALICE", 12, 1000, 0.03, 2008, 2019, 8.0},
            {"CMS", 76, 2900, 0.04, 2008, 2019, 9.6},
        };
    } else if (name == "fig4-tail") {
        spec.n_natural = 20000;
        spec.team = {1, 3.0};
        spec.planted = {
            {"P120", 30, 120, 0.02, 2000, 2019, 2.0},
            {"LHCb", 40, 540, 0.03, 2010, 2019, 6.0},
            {"ALICE", 20, 1000, 0.03, 2008, 2019, 6.0},
            {"CMS", 60, 2900, 0.04, 2008, 2019, 9.0},
            {"ATLAS", 20, 5100, 0.02, 2008, 2019, 9.0},
        };
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) +
                                    "' (expected fig1-physics, table2-ukraine or fig4-tail)");
    }
    return spec;
}

std::vector<std::string> preset_names() { return {"fig1-physics", "table2-ukraine", "fig4-tail"}; }

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
    for (const auto& [id, label] : truth.origin) {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["origin"] = label ? "planted" : "natural";
        j["label"] = label ? nlohmann::ordered_json(*label) : nlohmann::ordered_json(nullptr);
        out << j.dump() << '\n';
    }
}

}  // namespace hyperbib
