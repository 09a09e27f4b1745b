#include "sigvote/synthetic.hpp"

#include "sigvote/seed.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace sigvote {

std::string synthetic_voter_id(std::size_t index, std::size_t n_voters) {
    const auto width = std::to_string(std::max<std::size_t>(n_voters, 10)).size();
    std::string digits = std::to_string(index + 1);
    return "v" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

SyntheticSpec default_synthetic_spec(std::uint64_t seed) {
    SyntheticSpec spec;
    spec.seed = seed;
    const std::size_t n = spec.n_voters;
    PlantedPattern unanimous{"unanimity", std::vector<int>(n, 0)};
    PlantedPattern split{"two-sides", std::vector<int>(n, 0)};
    PlantedPattern three{"three-way", std::vector<int>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        split.factions[i] = i < 20 ? 0 : 1;
        three.factions[i] = i < 15 ? 0 : (i < 30 ? 1 : 2);
    }
    spec.patterns = {unanimous, split, three};
    for (std::size_t i = 0; i < n; ++i) spec.groups.push_back(i < 15 ? "G1" : i < 20 ? "G2" : i < 30 ? "G3" : "G4");
    return spec;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_voters == 0 || spec.n_rollcalls == 0) throw std::invalid_argument("need voters and roll-calls");
    if (spec.patterns.empty()) throw std::invalid_argument("need at least one planted pattern");
    if (!spec.mixture.empty() && spec.mixture.size() != spec.patterns.size()) {
        throw std::invalid_argument("mixture needs one weight per pattern");
    }
    if (std::any_of(spec.mixture.begin(), spec.mixture.end(), [](double w) { return !(w >= 0); })) {
        throw std::invalid_argument("mixture weights must be non-negative");
    }
    for (double rate : {spec.noise_rate, spec.absence_rate}) {
        if (!(rate >= 0.0 && rate < 1.0)) throw std::invalid_argument("rates must be in [0, 1)");
    }
    if (!spec.groups.empty() && spec.groups.size() != spec.n_voters) {
        throw std::invalid_argument("groups needs one label per voter");
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < spec.n_voters; ++i) ids.push_back(synthetic_voter_id(i, spec.n_voters));

    SyntheticData data;
    for (const auto& p : spec.patterns) {
        if (p.factions.size() != spec.n_voters) {
            throw std::invalid_argument("pattern '" + p.name + "' has the wrong number of voters");
        }
        if (std::any_of(p.factions.begin(), p.factions.end(), [](int f) { return f < 0 || f > 2; })) {
            throw std::invalid_argument("pattern '" + p.name + "' uses a faction outside 0..2");
        }
        data.planted.push_back(Partition::from_labels(ids, p.factions));
    }

    std::mt19937_64 rng(derive_seed(spec.seed, "synthetic"));
    std::vector<double> weights = spec.mixture;
    if (weights.empty()) weights.assign(spec.patterns.size(), 1.0);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<VoteValue> votes(spec.n_voters * spec.n_rollcalls);
    std::vector<DocumentMeta> docs;
    const auto col_width = std::to_string(std::max<std::size_t>(spec.n_rollcalls, 10)).size();
    for (std::size_t j = 0; j < spec.n_rollcalls; ++j) {
        const auto planted = pick(rng);
        data.truth.push_back(planted);
        const auto& factions = spec.patterns[planted].factions;

        const bool flip = unit(rng) < 0.5;
        const VoteValue side[3] = {flip ? VoteValue::Against : VoteValue::For,
                                   flip ? VoteValue::For : VoteValue::Against, VoteValue::Abstain};
        std::vector<VoteValue> in_play;
        for (int f = 0; f < 3; ++f) {
            if (std::find(factions.begin(), factions.end(), f) != factions.end()) in_play.push_back(side[f]);
        }
        // a unanimous roll-call can still be broken by a dissenter on the other side
        if (in_play.size() == 1) in_play.push_back(in_play[0] == VoteValue::For ? VoteValue::Against : VoteValue::For);

        for (std::size_t i = 0; i < spec.n_voters; ++i) {
            VoteValue v = side[factions[i]];
            if (unit(rng) < spec.noise_rate) {
                std::vector<VoteValue> others;
                for (auto o : in_play) {
                    if (o != v) others.push_back(o);
                }
                v = others[static_cast<std::size_t>(unit(rng) * static_cast<double>(others.size())) % others.size()];
            }
            if (unit(rng) < spec.absence_rate) v = VoteValue::Absent;
            votes[i * spec.n_rollcalls + j] = v;
        }
        std::string digits = std::to_string(j + 1);
        DocumentMeta d;
        d.rollcall_id = "r" + std::string(col_width - std::min(col_width, digits.size()), '0') + digits;
        d.title = "synthetic roll-call " + digits + " (" + spec.patterns[planted].name + ")";
        d.subdomains = {spec.patterns[planted].name};
        docs.push_back(std::move(d));
    }

    std::vector<Voter> voters;
    for (std::size_t i = 0; i < spec.n_voters; ++i) {
        const std::string group = spec.groups.empty() ? "G" : spec.groups[i];
        voters.push_back(Voter{ids[i], "Voter " + std::to_string(i + 1), i % 2 == 0 ? "FR" : "IT", group, group});
    }
    data.matrix = VoteMatrix(std::move(voters), std::move(docs), std::move(votes));
    return data;
}

}  // namespace sigvote
