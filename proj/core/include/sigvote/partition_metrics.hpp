#pragma once

#include "sigvote/partition.hpp"

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigvote {

/// The partition of the voters present at one roll-call.
struct Pattern {
    std::string rollcall_id;
    Partition partition;

    bool operator==(const Pattern&) const = default;
};

enum class Measure { Purity, RandIndex, AdjustedRand, Nmi };

inline constexpr Measure kAllMeasures[] = {Measure::Purity, Measure::RandIndex, Measure::AdjustedRand, Measure::Nmi};

std::string_view to_string(Measure m) noexcept;
/// purity | ri | ari | nmi (case-insensitive); throws std::invalid_argument.
Measure parse_measure(std::string_view text);

/// Both partitions restricted to the members they share. Throws
/// std::invalid_argument("no common members") when they share none.
std::pair<Partition, Partition> restrict_common(const Pattern& p, const Pattern& q);

// All four measures require both partitions to cover the same members and
// throw std::invalid_argument otherwise.

/// Harmonic mean of Purity(p|q) and Purity(q|p), where
/// Purity(p|q) = (1/n) * sum over blocks of p of the largest overlap with a block of q.
double purity_harmonic(const Partition& p, const Partition& q);
/// Fraction of member pairs both partitions treat alike. Needs n >= 2.
double rand_index(const Partition& p, const Partition& q);
/// Hubert-Arabie chance-corrected Rand index. When the expected and maximal
/// index coincide (e.g. both partitions one block, or both all singletons)
/// returns 1 for identical partitions and 0 otherwise.
double adjusted_rand(const Partition& p, const Partition& q);
/// Mutual information over the arithmetic mean of the two entropies. When
/// either entropy is 0, returns 1 for identical partitions and 0 otherwise.
double nmi(const Partition& p, const Partition& q);

double similarity(Measure m, const Partition& p, const Partition& q);

/// Symmetric pattern-vs-pattern dissimilarities, D(i,j) = min(1, 1 - similarity).
class DissimilarityMatrix {
public:
    DissimilarityMatrix() = default;
    DissimilarityMatrix(std::vector<std::string> ids, Measure measure);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    Measure measure() const noexcept { return measure_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * ids_.size() + j]; }
    /// Sets both (i,j) and (j,i). Throws std::invalid_argument for i == j with
    /// a non-zero value or a value outside [0, 1].
    void set(std::size_t i, std::size_t j, double value);

    bool operator==(const DissimilarityMatrix&) const = default;

private:
    std::vector<std::string> ids_;
    Measure measure_ = Measure::Purity;
    std::vector<double> values_;
};

struct DissimilarityWarning {
    std::string first;
    std::string second;
    std::string message;
};

/// D(i,j) = min(1, 1 - measure(restrict_common(p_i, p_j))); pairs sharing no
/// member get D = 1 and a warning. Throws std::invalid_argument for fewer than
/// two patterns.
DissimilarityMatrix dissimilarity_matrix(const std::vector<Pattern>& patterns, Measure measure,
                                         std::vector<DissimilarityWarning>* warnings = nullptr, unsigned jobs = 1);

/// CSV with a header row and column of pattern ids; first line is
/// `measure=<name>,<id_1>,...`.
void write_dissimilarity_csv(std::ostream& out, const DissimilarityMatrix& d);
DissimilarityMatrix read_dissimilarity_csv(std::istream& in, const std::string& source_name);

}  // namespace sigvote
