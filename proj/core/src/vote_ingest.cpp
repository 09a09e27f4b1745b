#include "sigvote/vote_matrix.hpp"

#include "sigvote/csv.hpp"
#include "sigvote/error.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sigvote {

std::string_view to_string(VoteValue v) noexcept {
    switch (v) {
        case VoteValue::For: return "FOR";
        case VoteValue::Against: return "AGAINST";
        case VoteValue::Abstain: return "ABSTAIN";
        case VoteValue::Absent: return "ABSENT";
    }
    return "ABSENT";
}

std::optional<VoteValue> parse_vote_value(std::string_view token) noexcept {
    std::string upper(token);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "FOR") return VoteValue::For;
    if (upper == "AGAINST") return VoteValue::Against;
    if (upper == "ABSTAIN") return VoteValue::Abstain;
    if (upper == "ABSENT") return VoteValue::Absent;
    return std::nullopt;
}

VoteMatrix::VoteMatrix(std::vector<Voter> voters, std::vector<DocumentMeta> rollcalls, std::vector<VoteValue> votes)
    : voters_(std::move(voters)), rollcalls_(std::move(rollcalls)), votes_(std::move(votes)) {
    if (votes_.size() != voters_.size() * rollcalls_.size()) {
        throw std::invalid_argument("vote table size does not match voter/roll-call counts");
    }
    std::unordered_set<std::string> seen;
    for (const auto& v : voters_) {
        if (!seen.insert(v.id).second) throw std::invalid_argument("duplicate voter id '" + v.id + "'");
    }
    seen.clear();
    for (const auto& d : rollcalls_) {
        if (!seen.insert(d.rollcall_id).second) {
            throw std::invalid_argument("duplicate roll-call id '" + d.rollcall_id + "'");
        }
    }
}

std::optional<std::size_t> VoteMatrix::voter_index(std::string_view id) const {
    for (std::size_t i = 0; i < voters_.size(); ++i) {
        if (voters_[i].id == id) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> VoteMatrix::rollcall_index(std::string_view id) const {
    for (std::size_t i = 0; i < rollcalls_.size(); ++i) {
        if (rollcalls_[i].rollcall_id == id) return i;
    }
    return std::nullopt;
}

namespace {

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    int y = 0;
    unsigned m = 0, d = 0;
    auto ok = [](std::string_view part, auto& out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc{} && p == part.data() + part.size();
    };
    if (!ok(s.substr(0, 4), y) || !ok(s.substr(5, 2), m) || !ok(s.substr(8, 2), d)) return false;
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}.ok();
}

void expect_header(const std::vector<csv::Row>& rows, const std::string& path,
                   const std::vector<std::string>& expected) {
    if (rows.empty()) throw ParseError(path, 1, "missing header");
    std::vector<std::string> got;
    for (const auto& f : rows.front().fields) got.push_back(trim(f));
    if (got != expected) {
        std::string want;
        for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
        throw ParseError(path, rows.front().line, "expected header '" + want + "'");
    }
}

}  // namespace

IngestResult parse_vote_table(const std::string& votes_path, const std::string& voters_path,
                              const std::string& docs_path, const IngestOptions& options) {
    IngestResult result;

    // voters.csv
    const auto voter_rows = csv::read_file(voters_path);
    expect_header(voter_rows, voters_path, {"voter_id", "name", "country", "party", "group"});
    std::unordered_map<std::string, Voter> voter_meta;
    for (std::size_t r = 1; r < voter_rows.size(); ++r) {
        const auto& row = voter_rows[r];
        if (row.fields.size() != 5) {
            throw ParseError(voters_path, row.line, "expected 5 fields, got " + std::to_string(row.fields.size()));
        }
        Voter v{trim(row.fields[0]), row.fields[1], trim(row.fields[2]), row.fields[3], trim(row.fields[4])};
        if (v.id.empty()) throw ParseError(voters_path, row.line, "empty voter_id");
        if (!options.declared_groups.empty() && !options.declared_groups.contains(v.group)) {
            throw ParseError(voters_path, row.line, "undeclared group '" + v.group + "'");
        }
        const std::string id = v.id;
        if (!voter_meta.emplace(id, std::move(v)).second) {
            throw ParseError(voters_path, row.line, "duplicate voter_id '" + id + "'");
        }
    }

    // docs.csv
    const auto doc_rows = csv::read_file(docs_path);
    expect_header(doc_rows, docs_path, {"rollcall_id", "title", "date", "subdomains"});
    std::unordered_map<std::string, DocumentMeta> doc_meta;
    for (std::size_t r = 1; r < doc_rows.size(); ++r) {
        const auto& row = doc_rows[r];
        if (row.fields.size() != 4) {
            throw ParseError(docs_path, row.line, "expected 4 fields, got " + std::to_string(row.fields.size()));
        }
        DocumentMeta d{trim(row.fields[0]), row.fields[1], trim(row.fields[2]), {}};
        if (d.rollcall_id.empty()) throw ParseError(docs_path, row.line, "empty rollcall_id");
        if (!d.date.empty() && !valid_iso_date(d.date)) {
            throw ParseError(docs_path, row.line, "invalid date '" + d.date + "' (expected YYYY-MM-DD)");
        }
        std::string_view labels = row.fields[3];
        while (!labels.empty()) {
            const auto cut = labels.find(';');
            std::string label = trim(labels.substr(0, cut));
            labels = cut == std::string_view::npos ? std::string_view{} : labels.substr(cut + 1);
            if (label.empty()) continue;
            if (!options.taxonomy.empty() && !options.taxonomy.contains(label)) {
                throw ParseError(docs_path, row.line, "subdomain '" + label + "' not in taxonomy");
            }
            d.subdomains.insert(std::move(label));
        }
        const std::string id = d.rollcall_id;
        if (!doc_meta.emplace(id, std::move(d)).second) {
            throw ParseError(docs_path, row.line, "duplicate rollcall_id '" + id + "'");
        }
    }

    // votes.csv
    const auto vote_rows = csv::read_file(votes_path);
    if (vote_rows.empty()) throw ParseError(votes_path, 1, "missing header");
    const auto& header = vote_rows.front();
    if (header.fields.empty() || trim(header.fields[0]) != "voter_id") {
        throw ParseError(votes_path, header.line, "header must start with 'voter_id'");
    }
    std::vector<DocumentMeta> rollcalls;
    std::unordered_set<std::string> seen_cols;
    for (std::size_t c = 1; c < header.fields.size(); ++c) {
        const std::string id = trim(header.fields[c]);
        if (!seen_cols.insert(id).second) {
            throw ParseError(votes_path, header.line, "duplicate rollcall_id '" + id + "' in header");
        }
        auto it = doc_meta.find(id);
        if (it == doc_meta.end()) {
            throw ParseError(votes_path, header.line, "rollcall_id '" + id + "' missing from " + docs_path);
        }
        rollcalls.push_back(it->second);
    }

    std::vector<Voter> voters;
    std::vector<VoteValue> votes;
    std::unordered_set<std::string> seen_rows;
    const std::size_t width = header.fields.size();
    for (std::size_t r = 1; r < vote_rows.size(); ++r) {
        const auto& row = vote_rows[r];
        if (row.fields.size() != width) {
            throw ParseError(votes_path, row.line,
                             "expected " + std::to_string(width) + " fields, got " + std::to_string(row.fields.size()));
        }
        const std::string id = trim(row.fields[0]);
        if (!seen_rows.insert(id).second) throw ParseError(votes_path, row.line, "duplicate voter_id '" + id + "'");
        auto it = voter_meta.find(id);
        if (it == voter_meta.end()) {
            throw ParseError(votes_path, row.line, "voter_id '" + id + "' missing from " + voters_path);
        }
        voters.push_back(it->second);
        for (std::size_t c = 1; c < width; ++c) {
            const std::string token = trim(row.fields[c]);
            if (token.empty()) {
                ++result.missing_cells;
                votes.push_back(VoteValue::Absent);
                continue;
            }
            auto value = parse_vote_value(token);
            if (!value) {
                throw ParseError(votes_path, row.line,
                                 "unknown vote value '" + token + "' (voter '" + id + "', column '" +
                                     rollcalls[c - 1].rollcall_id + "')");
            }
            votes.push_back(*value);
        }
    }
    if (result.missing_cells > 0) {
        result.warnings.push_back(std::to_string(result.missing_cells) + " blank vote cell(s) read as ABSENT");
    }
    result.matrix = VoteMatrix(std::move(voters), std::move(rollcalls), std::move(votes));
    return result;
}

void write_vote_table(const VoteMatrix& matrix, const std::string& votes_path, const std::string& voters_path,
                      const std::string& docs_path) {
    auto open = [](const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        return out;
    };
    {
        auto out = open(voters_path);
        csv::write_row(out, {"voter_id", "name", "country", "party", "group"});
        for (const auto& v : matrix.voters()) csv::write_row(out, {v.id, v.name, v.country, v.party, v.group});
    }
    {
        auto out = open(docs_path);
        csv::write_row(out, {"rollcall_id", "title", "date", "subdomains"});
        for (const auto& d : matrix.rollcalls()) {
            std::string labels;
            for (const auto& s : d.subdomains) labels += (labels.empty() ? "" : ";") + s;
            csv::write_row(out, {d.rollcall_id, d.title, d.date, labels});
        }
    }
    {
        auto out = open(votes_path);
        std::vector<std::string> row{"voter_id"};
        for (const auto& d : matrix.rollcalls()) row.push_back(d.rollcall_id);
        csv::write_row(out, row);
        for (std::size_t i = 0; i < matrix.n_voters(); ++i) {
            row.assign(1, matrix.voters()[i].id);
            for (std::size_t j = 0; j < matrix.n_rollcalls(); ++j) row.emplace_back(to_string(matrix.vote(i, j)));
            csv::write_row(out, row);
        }
    }
}

VoteMatrix filter_matrix(const VoteMatrix& matrix, const MatrixFilter& filter) {
    std::vector<std::size_t> keep_voters;
    for (std::size_t i = 0; i < matrix.n_voters(); ++i) {
        if (filter.countries.empty() || filter.countries.contains(matrix.voters()[i].country)) keep_voters.push_back(i);
    }
    std::vector<std::size_t> keep_rollcalls;
    for (std::size_t j = 0; j < matrix.n_rollcalls(); ++j) {
        const auto& doc = matrix.rollcalls()[j];
        if (!filter.subdomains.empty() &&
            std::none_of(doc.subdomains.begin(), doc.subdomains.end(),
                         [&](const std::string& s) { return filter.subdomains.contains(s); })) {
            continue;
        }
        if (filter.dates) {
            // ISO dates compare correctly as strings; undated documents never match a range
            if (doc.date.empty()) continue;
            if (!filter.dates->from.empty() && doc.date < filter.dates->from) continue;
            if (!filter.dates->to.empty() && doc.date > filter.dates->to) continue;
        }
        keep_rollcalls.push_back(j);
    }
    if (keep_voters.empty()) throw EmptySelectionError("empty selection: no voter passes the filter");
    if (keep_rollcalls.empty()) throw EmptySelectionError("empty selection: no roll-call passes the filter");

    std::vector<Voter> voters;
    for (auto i : keep_voters) voters.push_back(matrix.voters()[i]);
    std::vector<DocumentMeta> docs;
    for (auto j : keep_rollcalls) docs.push_back(matrix.rollcalls()[j]);
    std::vector<VoteValue> votes;
    votes.reserve(voters.size() * docs.size());
    for (auto i : keep_voters) {
        for (auto j : keep_rollcalls) votes.push_back(matrix.vote(i, j));
    }
    return VoteMatrix(std::move(voters), std::move(docs), std::move(votes));
}

}  // namespace sigvote
