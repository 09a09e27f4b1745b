#include "sigvote/pattern_clustering.hpp"

#include "sigvote/csv.hpp"
#include "sigvote/parallel.hpp"
#include "sigvote/seed.hpp"
#include "sigvote/signed_graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace sigvote {

std::vector<std::size_t> Clustering::sizes() const {
    std::vector<std::size_t> out(k, 0);
    for (auto c : assignment) ++out[c];
    return out;
}

std::vector<std::size_t> Clustering::members(std::size_t cluster) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] == cluster) out.push_back(i);
    }
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprovement = 1e-12;

/// Nearest / second-nearest medoid bookkeeping for one medoid set.
struct MedoidState {
    std::vector<std::size_t> medoids;
    std::vector<std::size_t> nearest;  // index into medoids
    std::vector<double> d_nearest;
    std::vector<double> d_second;
    double cost = 0.0;

    void assign(const DissimilarityMatrix& d) {
        const auto n = d.size();
        nearest.assign(n, 0);
        d_nearest.assign(n, kInf);
        d_second.assign(n, kInf);
        cost = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t best = medoids.size();
            for (std::size_t m = 0; m < medoids.size(); ++m) {
                if (medoids[m] == j) {
                    best = m;
                    break;
                }
            }
            // medoids always own themselves; others tie toward the lower position
            if (best == medoids.size()) {
                for (std::size_t m = 0; m < medoids.size(); ++m) {
                    const double x = d(j, medoids[m]);
                    if (best == medoids.size() || x < d_nearest[j] ||
                        (x == d_nearest[j] && medoids[m] < medoids[best])) {
                        best = m;
                        d_nearest[j] = x;
                    }
                }
            } else {
                d_nearest[j] = 0.0;
            }
            nearest[j] = best;
            for (std::size_t m = 0; m < medoids.size(); ++m) {
                if (m != best) d_second[j] = std::min(d_second[j], d(j, medoids[m]));
            }
            cost += d_nearest[j];
        }
    }
};

std::vector<std::size_t> build_medoids(const DissimilarityMatrix& d, std::size_t k) {
    const auto n = d.size();
    std::vector<std::size_t> medoids;
    std::vector<bool> is_medoid(n, false);
    std::vector<double> d_nearest(n, kInf);

    std::size_t first = 0;
    double best_total = kInf;
    for (std::size_t c = 0; c < n; ++c) {
        double total = 0;
        for (std::size_t j = 0; j < n; ++j) total += d(j, c);
        if (total < best_total) {
            best_total = total;
            first = c;
        }
    }
    medoids.push_back(first);
    is_medoid[first] = true;
    for (std::size_t j = 0; j < n; ++j) d_nearest[j] = d(j, first);

    while (medoids.size() < k) {
        std::size_t pick = n;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0;
            for (std::size_t j = 0; j < n; ++j) gain += std::max(d_nearest[j] - d(j, c), 0.0);
            if (gain > best_gain) {
                best_gain = gain;
                pick = c;
            }
        }
        medoids.push_back(pick);
        is_medoid[pick] = true;
        for (std::size_t j = 0; j < n; ++j) d_nearest[j] = std::min(d_nearest[j], d(j, pick));
    }
    return medoids;
}

std::vector<std::size_t> random_medoids(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
}

/// Best-improvement SWAP. delta(i, x) for replacing medoid i by x decomposes
/// into a part shared by all i plus a per-medoid correction, so one pass over
/// the points scores every medoid for a candidate.
void swap_phase(const DissimilarityMatrix& d, MedoidState& state) {
    const auto n = d.size();
    const auto k = state.medoids.size();
    std::vector<bool> is_medoid(n, false);
    std::vector<double> correction(k);
    state.assign(d);
    while (true) {
        std::fill(is_medoid.begin(), is_medoid.end(), false);
        for (auto m : state.medoids) is_medoid[m] = true;
        double best_delta = -kImprovement;
        std::size_t best_i = k, best_x = n;
        for (std::size_t x = 0; x < n; ++x) {
            if (is_medoid[x]) continue;
            double shared = 0;
            std::fill(correction.begin(), correction.end(), 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double dx = d(x, j);
                const double keep = std::min(dx - state.d_nearest[j], 0.0);
                const double lose = std::min(dx, state.d_second[j]) - state.d_nearest[j];
                shared += keep;
                correction[state.nearest[j]] += lose - keep;
            }
            for (std::size_t i = 0; i < k; ++i) {
                const double delta = shared + correction[i];
                if (delta < best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_x = x;
                }
            }
        }
        if (best_i == k) break;
        const double before = state.cost;
        state.medoids[best_i] = best_x;
        state.assign(d);
        // guards against cycling on floating-point noise
        if (!(state.cost < before - kImprovement)) break;
    }
}

Clustering canonical_clustering(const DissimilarityMatrix& d, const MedoidState& state) {
    const auto n = d.size();
    const auto k = state.medoids.size();
    std::vector<std::size_t> size(k, 0), smallest(k, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto c = state.nearest[j];
        ++size[c];
        smallest[c] = std::min(smallest[c], j);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (size[a] != size[b]) return size[a] > size[b];
        return smallest[a] < smallest[b];
    });
    std::vector<std::size_t> rank(k);
    for (std::size_t r = 0; r < k; ++r) rank[order[r]] = r;

    Clustering c;
    c.k = k;
    c.assignment.resize(n);
    c.medoids.resize(k);
    for (std::size_t j = 0; j < n; ++j) c.assignment[j] = rank[state.nearest[j]];
    for (std::size_t m = 0; m < k; ++m) c.medoids[rank[m]] = state.medoids[m];
    for (std::size_t j = 0; j < n; ++j) c.cost += d(j, c.medoids[c.assignment[j]]);
    return c;
}

}  // namespace

Clustering k_medoids(const DissimilarityMatrix& d, std::size_t k, const KMedoidsOptions& options) {
    const auto n = d.size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
    MedoidState best;
    best.cost = kInf;
    for (std::size_t r = 0; r < restarts; ++r) {
        MedoidState state;
        state.medoids = r == 0 ? build_medoids(d, k) : random_medoids(n, k, derive_seed(options.seed, "restart", r));
        swap_phase(d, state);
        if (state.cost < best.cost - kImprovement) best = std::move(state);
        // k == n has a single medoid set
        if (k == n) break;
    }
    return canonical_clustering(d, best);
}

double silhouette(const DissimilarityMatrix& d, const Clustering& clustering) {
    if (clustering.k < 2) throw std::invalid_argument("silhouette needs at least two clusters");
    const auto n = d.size();
    if (clustering.assignment.size() != n) throw std::invalid_argument("clustering does not match the matrix");
    const auto sizes = clustering.sizes();
    std::vector<double> sums(clustering.k);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = clustering.assignment[i];
        if (sizes[own] <= 1) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) sums[clustering.assignment[j]] += d(i, j);
        }
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = kInf;
        for (std::size_t c = 0; c < clustering.k; ++c) {
            if (c != own && sizes[c] > 0) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        }
        const double scale = std::max(a, b);
        if (scale > 0) total += (b - a) / scale;
    }
    return total / static_cast<double>(n);
}

const SweepEntry& SweepReport::at_k(std::size_t k) const {
    if (k < k_min || k - k_min >= entries.size()) throw std::out_of_range("k not in sweep");
    return entries[k - k_min];
}

std::size_t SweepReport::best_k() const {
    if (entries.empty()) throw std::logic_error("empty sweep");
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].silhouette > entries[best].silhouette) best = i;
    }
    return k_min + best;
}

SweepReport sweep_k(const DissimilarityMatrix& d, std::size_t k_min, std::size_t k_max, const KMedoidsOptions& options,
                    unsigned jobs) {
    if (k_min < 2 || k_min > k_max || k_max > d.size()) {
        throw std::invalid_argument("need 2 <= k_min <= k_max <= " + std::to_string(d.size()));
    }
    SweepReport report;
    report.pattern_ids = d.ids();
    report.k_min = k_min;
    report.entries.resize(k_max - k_min + 1);
    parallel_for(report.entries.size(), jobs, [&](std::size_t i) {
        const std::size_t k = k_min + i;
        KMedoidsOptions per_k = options;
        per_k.seed = derive_seed(options.seed, "k", k);
        auto clustering = k_medoids(d, k, per_k);
        const double s = silhouette(d, clustering);
        report.entries[i] = SweepEntry{std::move(clustering), s};
    });
    for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
        const auto& from = report.entries[i].clustering;
        const auto& to = report.entries[i + 1].clustering;
        Transition t;
        t.k = from.k;
        t.flows.assign(from.k, std::vector<std::size_t>(to.k, 0));
        for (std::size_t p = 0; p < d.size(); ++p) ++t.flows[from.assignment[p]][to.assignment[p]];
        std::size_t nested = 0;
        for (std::size_t b = 0; b < to.k; ++b) {
            std::size_t sources = 0;
            for (std::size_t a = 0; a < from.k; ++a) sources += t.flows[a][b] > 0 ? 1 : 0;
            nested += sources == 1 ? 1 : 0;
        }
        t.nesting = static_cast<double>(nested) / static_cast<double>(to.k);
        report.transitions.push_back(std::move(t));
    }
    return report;
}

void write_alluvial_csv(std::ostream& out, const SweepReport& report) {
    csv::write_row(out, {"rollcall_id", "k", "cluster_id"});
    for (const auto& e : report.entries) {
        for (std::size_t p = 0; p < report.pattern_ids.size(); ++p) {
            csv::write_row(out, {report.pattern_ids[p], std::to_string(e.clustering.k),
                                 std::to_string(e.clustering.assignment[p] + 1)});
        }
    }
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
    csv::write_row(out, {"k", "silhouette", "cost", "sizes"});
    for (const auto& e : report.entries) {
        std::string sizes;
        for (auto s : e.clustering.sizes()) sizes += (sizes.empty() ? "" : ";") + std::to_string(s);
        csv::write_row(out, {std::to_string(e.clustering.k), format_real(e.silhouette), format_real(e.clustering.cost),
                             sizes});
    }
}

}  // namespace sigvote
