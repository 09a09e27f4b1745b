#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sigvote {

enum class VoteValue : std::uint8_t { For, Against, Abstain, Absent };

std::string_view to_string(VoteValue v) noexcept;
/// Case-insensitive; nullopt for anything other than the four vote tokens.
std::optional<VoteValue> parse_vote_value(std::string_view token) noexcept;

struct Voter {
    std::string id;
    std::string name;
    std::string country;
    std::string party;
    std::string group;

    bool operator==(const Voter&) const = default;
};

struct DocumentMeta {
    std::string rollcall_id;
    std::string title;
    std::string date;  // ISO 8601 (YYYY-MM-DD); empty when unknown
    std::set<std::string> subdomains;

    bool operator==(const DocumentMeta&) const = default;
};

/// Dense voters x roll-calls table. Immutable once built; row/column order is
/// the order of the input files and is preserved by every transformation.
class VoteMatrix {
public:
    VoteMatrix() = default;
    /// Throws std::invalid_argument on duplicate ids or a table of the wrong size.
    VoteMatrix(std::vector<Voter> voters, std::vector<DocumentMeta> rollcalls, std::vector<VoteValue> votes);

    const std::vector<Voter>& voters() const noexcept { return voters_; }
    const std::vector<DocumentMeta>& rollcalls() const noexcept { return rollcalls_; }
    std::size_t n_voters() const noexcept { return voters_.size(); }
    std::size_t n_rollcalls() const noexcept { return rollcalls_.size(); }
    bool empty() const noexcept { return voters_.empty() || rollcalls_.empty(); }

    VoteValue vote(std::size_t voter, std::size_t rollcall) const { return votes_[voter * rollcalls_.size() + rollcall]; }

    std::optional<std::size_t> voter_index(std::string_view id) const;
    std::optional<std::size_t> rollcall_index(std::string_view id) const;

    bool operator==(const VoteMatrix&) const = default;

private:
    std::vector<Voter> voters_;
    std::vector<DocumentMeta> rollcalls_;
    std::vector<VoteValue> votes_;  // row-major, voter-major
};

struct IngestOptions {
    /// When non-empty, every group label must belong to this list.
    std::set<std::string> declared_groups;
    /// When non-empty, every document subdomain must belong to this taxonomy.
    std::set<std::string> taxonomy;
};

struct IngestResult {
    VoteMatrix matrix;
    std::size_t missing_cells = 0;  // blank cells read as ABSENT
    std::vector<std::string> warnings;
};

/// Reads votes.csv, voters.csv and docs.csv. Voter order follows votes.csv rows,
/// roll-call order follows the votes.csv header. Every voter in votes.csv must
/// appear in voters.csv and every roll-call column in docs.csv.
IngestResult parse_vote_table(const std::string& votes_path, const std::string& voters_path,
                              const std::string& docs_path, const IngestOptions& options = {});

/// Inverse of parse_vote_table.
void write_vote_table(const VoteMatrix& matrix, const std::string& votes_path, const std::string& voters_path,
                      const std::string& docs_path);

struct DateRange {
    std::string from;  // inclusive, empty = unbounded
    std::string to;    // inclusive, empty = unbounded
};

struct MatrixFilter {
    std::set<std::string> countries;   // keep voters from any of these
    std::set<std::string> subdomains;  // keep roll-calls tagged with any of these
    std::optional<DateRange> dates;

    bool empty() const noexcept { return countries.empty() && subdomains.empty() && !dates; }
};

/// Sub-matrix of voters/roll-calls passing every given filter, order preserved.
/// Throws EmptySelectionError when no voter or no roll-call survives (which
/// includes filtering on a country or subdomain absent from the matrix).
VoteMatrix filter_matrix(const VoteMatrix& matrix, const MatrixFilter& filter);

}  // namespace sigvote
