#include "sigvote/partition_metrics.hpp"

#include "sigvote/csv.hpp"
#include "sigvote/error.hpp"
#include "sigvote/parallel.hpp"
#include "sigvote/signed_graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <unordered_map>

namespace sigvote {

std::string_view to_string(Measure m) noexcept {
    switch (m) {
        case Measure::Purity: return "purity";
        case Measure::RandIndex: return "ri";
        case Measure::AdjustedRand: return "ari";
        case Measure::Nmi: return "nmi";
    }
    return "purity";
}

Measure parse_measure(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto m : kAllMeasures) {
        if (to_string(m) == lower) return m;
    }
    throw std::invalid_argument("unknown measure '" + std::string(text) + "' (expected purity, ri, ari or nmi)");
}

namespace {

/// Overlap counts between the blocks of two partitions of the same n members.
/// Rows or columns that would be empty never appear.
struct Contingency {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cells;  // rows x cols
    std::vector<double> row_sums;
    std::vector<double> col_sums;
    double n = 0;

    double at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

    /// Blocks correspond one-to-one.
    bool identical() const {
        if (rows != cols) return false;
        for (std::size_t i = 0; i < rows; ++i) {
            std::size_t nonzero = 0;
            for (std::size_t j = 0; j < cols; ++j) nonzero += at(i, j) > 0 ? 1 : 0;
            if (nonzero != 1) return false;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < rows; ++i) nonzero += at(i, j) > 0 ? 1 : 0;
            if (nonzero != 1) return false;
        }
        return true;
    }
};

/// Labels per member; -1 marks members absent from one side.
Contingency contingency(const std::vector<int>& a, const std::vector<int>& b) {
    std::unordered_map<int, std::size_t> ra, cb;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] < 0 || b[m] < 0) continue;
        auto [ri, ins_r] = ra.emplace(a[m], ra.size());
        auto [ci, ins_c] = cb.emplace(b[m], cb.size());
        pairs.emplace_back(ri->second, ci->second);
    }
    Contingency t;
    t.rows = ra.size();
    t.cols = cb.size();
    t.cells.assign(t.rows * t.cols, 0.0);
    t.row_sums.assign(t.rows, 0.0);
    t.col_sums.assign(t.cols, 0.0);
    for (auto [i, j] : pairs) {
        t.cells[i * t.cols + j] += 1;
        t.row_sums[i] += 1;
        t.col_sums[j] += 1;
    }
    t.n = static_cast<double>(pairs.size());
    return t;
}

Contingency contingency(const Partition& p, const Partition& q) {
    if (p.members() != q.members()) throw std::invalid_argument("partitions cover different members");
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& id : p.members()) index.emplace(id, index.size());
    std::vector<int> a(index.size()), b(index.size());
    for (std::size_t k = 0; k < p.n_blocks(); ++k) {
        for (const auto& id : p.blocks()[k]) a[index.at(id)] = static_cast<int>(k);
    }
    for (std::size_t k = 0; k < q.n_blocks(); ++k) {
        for (const auto& id : q.blocks()[k]) b[index.at(id)] = static_cast<int>(k);
    }
    return contingency(a, b);
}

double pairs_of(double x) { return x * (x - 1) / 2; }

double purity_of(const Contingency& t) {
    if (t.n == 0) throw std::invalid_argument("purity of an empty partition");
    double by_rows = 0, by_cols = 0;
    for (std::size_t i = 0; i < t.rows; ++i) {
        double best = 0;
        for (std::size_t j = 0; j < t.cols; ++j) best = std::max(best, t.at(i, j));
        by_rows += best;
    }
    for (std::size_t j = 0; j < t.cols; ++j) {
        double best = 0;
        for (std::size_t i = 0; i < t.rows; ++i) best = std::max(best, t.at(i, j));
        by_cols += best;
    }
    const double pq = by_rows / t.n;
    const double qp = by_cols / t.n;
    return 2 * pq * qp / (pq + qp);
}

struct PairCounts {
    double together_both = 0;  // pairs in one block of p and one block of q
    double together_p = 0;
    double together_q = 0;
    double total = 0;
};

PairCounts pair_counts(const Contingency& t) {
    PairCounts c;
    for (double x : t.cells) c.together_both += pairs_of(x);
    for (double x : t.row_sums) c.together_p += pairs_of(x);
    for (double x : t.col_sums) c.together_q += pairs_of(x);
    c.total = pairs_of(t.n);
    return c;
}

double rand_of(const Contingency& t) {
    if (t.n < 2) throw std::invalid_argument("Rand index needs at least two members");
    const auto c = pair_counts(t);
    const double agree = c.total - c.together_p - c.together_q + 2 * c.together_both;
    return agree / c.total;
}

double ari_of(const Contingency& t) {
    const auto c = pair_counts(t);
    if (c.total == 0) return t.identical() ? 1.0 : 0.0;
    const double expected = c.together_p * c.together_q / c.total;
    const double maximum = (c.together_p + c.together_q) / 2;
    const double denom = maximum - expected;
    if (denom == 0) return t.identical() ? 1.0 : 0.0;
    return (c.together_both - expected) / denom;
}

double nmi_of(const Contingency& t) {
    if (t.n == 0) throw std::invalid_argument("NMI of an empty partition");
    auto entropy = [&](const std::vector<double>& sums) {
        double h = 0;
        for (double x : sums) {
            if (x > 0) h -= (x / t.n) * std::log(x / t.n);
        }
        return h;
    };
    const double hp = entropy(t.row_sums);
    const double hq = entropy(t.col_sums);
    if (hp <= 0 || hq <= 0) return t.identical() ? 1.0 : 0.0;
    double mi = 0;
    for (std::size_t i = 0; i < t.rows; ++i) {
        for (std::size_t j = 0; j < t.cols; ++j) {
            const double x = t.at(i, j);
            if (x > 0) mi += (x / t.n) * std::log(x * t.n / (t.row_sums[i] * t.col_sums[j]));
        }
    }
    return std::clamp(mi / ((hp + hq) / 2), 0.0, 1.0);
}

double measure_of(Measure m, const Contingency& t) {
    switch (m) {
        case Measure::Purity: return purity_of(t);
        case Measure::RandIndex: return rand_of(t);
        case Measure::AdjustedRand: return ari_of(t);
        case Measure::Nmi: return nmi_of(t);
    }
    return 0;
}

}  // namespace

std::pair<Partition, Partition> restrict_common(const Pattern& p, const Pattern& q) {
    const auto a = p.partition.members();
    const auto b = q.partition.members();
    std::vector<std::string> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty()) throw std::invalid_argument("no common members");
    return {p.partition.restricted_to(common), q.partition.restricted_to(common)};
}

double purity_harmonic(const Partition& p, const Partition& q) { return purity_of(contingency(p, q)); }
double rand_index(const Partition& p, const Partition& q) { return rand_of(contingency(p, q)); }
double adjusted_rand(const Partition& p, const Partition& q) { return ari_of(contingency(p, q)); }
double nmi(const Partition& p, const Partition& q) { return nmi_of(contingency(p, q)); }

double similarity(Measure m, const Partition& p, const Partition& q) { return measure_of(m, contingency(p, q)); }

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> ids, Measure measure)
    : ids_(std::move(ids)), measure_(measure), values_(ids_.size() * ids_.size(), 0.0) {}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
    if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("dissimilarity outside [0, 1]");
    if (i == j && value != 0.0) throw std::invalid_argument("dissimilarity diagonal must be 0");
    values_[i * ids_.size() + j] = value;
    values_[j * ids_.size() + i] = value;
}

DissimilarityMatrix dissimilarity_matrix(const std::vector<Pattern>& patterns, Measure measure,
                                         std::vector<DissimilarityWarning>* warnings, unsigned jobs) {
    if (patterns.size() < 2) throw std::invalid_argument("need at least two patterns for a dissimilarity matrix");
    std::vector<std::string> ids;
    std::unordered_map<std::string, std::size_t> member_index;
    for (const auto& p : patterns) {
        ids.push_back(p.rollcall_id);
        for (const auto& block : p.partition.blocks()) {
            for (const auto& id : block) member_index.emplace(id, member_index.size());
        }
    }
    // one label vector per pattern over the shared member universe
    std::vector<std::vector<int>> labels(patterns.size(), std::vector<int>(member_index.size(), -1));
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        const auto& blocks = patterns[k].partition.blocks();
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (const auto& id : blocks[b]) labels[k][member_index.at(id)] = static_cast<int>(b);
        }
    }

    DissimilarityMatrix d(std::move(ids), measure);
    const auto n = patterns.size();
    std::vector<std::vector<char>> disjoint(n, std::vector<char>(n, 0));
    parallel_for(n, jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto t = contingency(labels[i], labels[j]);
            if (t.n == 0) {
                disjoint[i][j] = 1;
                d.set(i, j, 1.0);
                continue;
            }
            // a single shared member: every measure degenerates to "identical"
            const double value = t.n < 2 && measure == Measure::RandIndex ? 1.0 : measure_of(measure, t);
            d.set(i, j, std::clamp(1.0 - value, 0.0, 1.0));
        }
    });
    if (warnings) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (disjoint[i][j]) {
                    warnings->push_back({patterns[i].rollcall_id, patterns[j].rollcall_id,
                                         "no common members; dissimilarity set to 1"});
                }
            }
        }
    }
    return d;
}

void write_dissimilarity_csv(std::ostream& out, const DissimilarityMatrix& d) {
    std::vector<std::string> row{"measure=" + std::string(to_string(d.measure()))};
    row.insert(row.end(), d.ids().begin(), d.ids().end());
    csv::write_row(out, row);
    for (std::size_t i = 0; i < d.size(); ++i) {
        row.assign(1, d.ids()[i]);
        for (std::size_t j = 0; j < d.size(); ++j) row.push_back(format_real(d(i, j)));
        csv::write_row(out, row);
    }
}

DissimilarityMatrix read_dissimilarity_csv(std::istream& in, const std::string& source_name) {
    const auto rows = csv::read(in, source_name);
    if (rows.empty()) throw ParseError(source_name, 1, "missing header");
    const auto& header = rows.front().fields;
    if (header.empty() || header[0].rfind("measure=", 0) != 0) {
        throw ParseError(source_name, 1, "first header cell must be 'measure=<name>'");
    }
    Measure measure;
    try {
        measure = parse_measure(header[0].substr(8));
    } catch (const std::invalid_argument& e) {
        throw ParseError(source_name, 1, e.what());
    }
    std::vector<std::string> ids(header.begin() + 1, header.end());
    if (rows.size() != ids.size() + 1) throw ParseError(source_name, 0, "matrix is not square");
    DissimilarityMatrix d(ids, measure);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& r = rows[i + 1];
        if (r.fields.size() != ids.size() + 1 || r.fields[0] != ids[i]) {
            throw ParseError(source_name, r.line, "row must start with id '" + ids[i] + "' and have one cell per id");
        }
        for (std::size_t j = 0; j < ids.size(); ++j) {
            const auto& text = r.fields[j + 1];
            double value = 0;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || p != text.data() + text.size()) {
                throw ParseError(source_name, r.line, "invalid number '" + text + "'");
            }
            if (j < i && value != d(i, j)) throw ParseError(source_name, r.line, "matrix is not symmetric");
            try {
                if (j >= i) d.set(i, j, value);
            } catch (const std::invalid_argument& e) {
                throw ParseError(source_name, r.line, e.what());
            }
        }
    }
    return d;
}

}  // namespace sigvote
