#include "sigvote/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace sigvote {

Partition::Partition(std::vector<std::vector<std::string>> blocks) : blocks_(std::move(blocks)) {
    std::unordered_set<std::string> seen;
    for (auto& block : blocks_) {
        if (block.empty()) throw std::invalid_argument("partition blocks must be non-empty");
        std::sort(block.begin(), block.end());
        for (const auto& id : block) {
            if (!seen.insert(id).second) throw std::invalid_argument("id '" + id + "' appears in two blocks");
        }
    }
    n_members_ = seen.size();
    std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
}

Partition Partition::from_labels(std::span<const std::string> ids, std::span<const int> labels) {
    if (ids.size() != labels.size()) throw std::invalid_argument("ids and labels differ in length");
    std::map<int, std::vector<std::string>> grouped;
    for (std::size_t i = 0; i < ids.size(); ++i) grouped[labels[i]].push_back(ids[i]);
    std::vector<std::vector<std::string>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [label, members] : grouped) blocks.push_back(std::move(members));
    return Partition(std::move(blocks));
}

std::vector<std::string> Partition::members() const {
    std::vector<std::string> out;
    out.reserve(n_members_);
    for (const auto& b : blocks_) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> Partition::block_of(const std::string& id) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), id)) return i;
    }
    return std::nullopt;
}

Partition Partition::restricted_to(std::span<const std::string> keep) const {
    std::unordered_set<std::string> wanted(keep.begin(), keep.end());
    std::vector<std::vector<std::string>> blocks;
    for (const auto& b : blocks_) {
        std::vector<std::string> kept;
        for (const auto& id : b) {
            if (wanted.contains(id)) kept.push_back(id);
        }
        if (!kept.empty()) blocks.push_back(std::move(kept));
    }
    return Partition(std::move(blocks));
}

}  // namespace sigvote
