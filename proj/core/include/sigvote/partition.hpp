#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigvote {

/// A partition of a set of node ids into disjoint non-empty blocks ("factions").
///
/// Always held in canonical form: members of each block sorted ascending, and
/// blocks ordered by size descending, then by smallest member ascending. Two
/// Partitions compare equal iff they group the same ids the same way.
class Partition {
public:
    Partition() = default;
    /// Throws std::invalid_argument on empty blocks or ids repeated across blocks.
    explicit Partition(std::vector<std::vector<std::string>> blocks);

    /// Block i holds every ids[j] with labels[j] == i-th distinct label.
    static Partition from_labels(std::span<const std::string> ids, std::span<const int> labels);

    const std::vector<std::vector<std::string>>& blocks() const noexcept { return blocks_; }
    std::size_t n_blocks() const noexcept { return blocks_.size(); }
    std::size_t n_members() const noexcept { return n_members_; }
    bool empty() const noexcept { return blocks_.empty(); }

    /// All members, sorted ascending.
    std::vector<std::string> members() const;
    std::optional<std::size_t> block_of(const std::string& id) const;

    /// Partition induced on the given members (those not present are ignored);
    /// blocks that become empty are dropped.
    Partition restricted_to(std::span<const std::string> keep) const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::vector<std::string>> blocks_;
    std::size_t n_members_ = 0;
};

}  // namespace sigvote
