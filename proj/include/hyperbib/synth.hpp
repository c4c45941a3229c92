#ifndef HYPERBIB_SYNTH_HPP
#define HYPERBIB_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbib/corpus.hpp"
#include "hyperbib/metrics.hpp"

namespace hyperbib {

/// Counter-based generator: the stream for record i is a pure function of
/// (seed, i), so records can be drawn in any order or in parallel.
class RecordRng {
public:
    RecordRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

private:
    std::uint64_t state_;
};

/// author_count = offset + Poisson(rate)
struct ShiftedPoisson {
    std::int64_t offset = 1;
    double rate = 1.5;

    /// Most probable author count.
    std::int64_t mode() const;
};

/// citations = X - 1 with P(X = x) proportional to x^-exponent on 1..cap+1.
struct TruncatedZeta {
    double exponent = 2.0;
    std::int64_t cap = 5000;
};

struct PlantedClusterSpec {
    std::string label;
    std::size_t n_pubs = 1;
    double size_mean = 100;
    double size_jitter = 0.03;  ///< relative half-width of the uniform size band
    int year_first = 2000;
    int year_last = 2019;
    double citation_multiplier = 1;
};

struct GeneratorSpec {
    std::uint64_t seed = 1;
    std::size_t n_natural = 0;
    ShiftedPoisson team;
    TruncatedZeta citations;
    std::vector<PlantedClusterSpec> planted;
    int year_first = 1991;
    int year_last = 2019;
    /// Relative weight of citation events k years after publication; the last
    /// weight repeats for later years. Empty means uniform.
    std::vector<double> aging_profile;
};

struct LabelTruth {
    std::size_t publications = 0;
    std::int64_t citations = 0;
    Percent publication_share;            ///< of all generated records, 2 decimals
    std::optional<Percent> citation_share;  ///< of all citations, 2 decimals
};

struct GroundTruth {
    /// record id -> planted label, or nullopt for natural records
    std::map<std::string, std::optional<std::string>> origin;
    std::map<std::string, LabelTruth> labels;
    std::size_t total_publications = 0;
    std::int64_t total_citations = 0;

    bool operator==(const GroundTruth& other) const;
};

struct Generated {
    Corpus corpus;
    GroundTruth truth;
    std::vector<std::string> warnings;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate_spec(const GeneratorSpec& spec);

/// Deterministic in `spec`; the thread count has no effect on the output.
Generated generate_corpus(const GeneratorSpec& spec, unsigned threads = 1);

/// Named configurations: "fig1-physics", "table2-ukraine", "fig4-tail".
/// Throws std::invalid_argument for any other name.
GeneratorSpec preset(std::string_view name);
std::vector<std::string> preset_names();

/// Sidecar file: one {"id","origin","label"} object per line in id order.
void write_ground_truth(std::ostream& out, const GroundTruth& truth);

/// Splits `total` over consecutive years proportionally to `weights` by the
/// largest-remainder rule (ties go to the earlier position).
std::vector<std::int64_t> apportion(std::int64_t total, const std::vector<double>& weights);

}  // namespace hyperbib

#endif  // HYPERBIB_SYNTH_HPP
