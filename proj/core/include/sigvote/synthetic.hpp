#pragma once

#include "sigvote/partition.hpp"
#include "sigvote/vote_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sigvote {

/// A planted voting pattern: a faction (0, 1 or 2) per voter. At each
/// roll-call drawing this pattern, factions 0 and 1 vote on opposite sides
/// (which side is a coin flip) and faction 2 abstains.
struct PlantedPattern {
    std::string name;
    std::vector<int> factions;
};

struct SyntheticSpec {
    std::size_t n_voters = 40;
    std::size_t n_rollcalls = 60;
    std::vector<PlantedPattern> patterns;
    std::vector<double> mixture;  // one weight per pattern; empty = uniform
    double noise_rate = 0.05;     // a cast vote switches to another side in play
    double absence_rate = 0.10;   // a vote is replaced by ABSENT
    std::uint64_t seed = 0;
    /// Political group per voter; empty = every voter in group "G".
    std::vector<std::string> groups;
};

struct SyntheticData {
    VoteMatrix matrix;
    std::vector<std::size_t> truth;  // planted pattern index per roll-call
    std::vector<Partition> planted;  // planted partitions over all voters
};

/// Throws std::invalid_argument for an inconsistent spec (faction vectors of
/// the wrong length, faction labels outside 0..2, bad rates or weights).
SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// 40 voters, 60 roll-calls, three planted patterns (unanimity, a 20/20 split,
/// and a 15/15/10 split whose third faction abstains), 5% noise, 10% absence.
SyntheticSpec default_synthetic_spec(std::uint64_t seed);

/// Voter ids used by the generator: "v01", "v02", ... (zero-padded so that
/// lexicographic and numeric order agree).
std::string synthetic_voter_id(std::size_t index, std::size_t n_voters);

}  // namespace sigvote
