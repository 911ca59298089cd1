#include "gradiv/capacity.hpp"

#include "gradiv/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

namespace gradiv {

Capacity::Capacity(int ground_size, std::vector<double> values)
    : ground_size_(ground_size), values_(std::move(values)) {
    if (ground_size_ < 1 || ground_size_ > kMaxGroundSize) {
        throw invalid_input("ground size must be in [1, " + std::to_string(kMaxGroundSize) + "]");
    }
    const std::size_t count = std::size_t{1} << ground_size_;
    if (values_.size() != count) {
        throw invalid_input("capacity needs " + std::to_string(count) + " subset values, got " +
                            std::to_string(values_.size()));
    }
    for (std::size_t s = 0; s < count; ++s) {
        if (!std::isfinite(values_[s]) || values_[s] < 0.0) {
            throw invalid_input("capacity values must be finite and >= 0");
        }
    }
    if (values_[0] != 0.0) {
        throw invalid_input("capacity of the empty set must be 0");
    }
    // covers (S, S ∪ {e}) generate the inclusion order
    for (std::size_t s = 0; s < count; ++s) {
        for (int e = 0; e < ground_size_; ++e) {
            const std::size_t bit = std::size_t{1} << e;
            if ((s & bit) == 0 && values_[s | bit] < values_[s]) {
                throw invalid_input("capacity is not monotone: adding element " +
                                    std::to_string(e + 1) + " to subset mask " +
                                    std::to_string(s) + " decreases it");
            }
        }
    }
}

Capacity Capacity::additive(std::span<const double> masses) {
    const int n = static_cast<int>(masses.size());
    if (n < 1 || n > kMaxGroundSize) {
        throw invalid_input("ground size must be in [1, " + std::to_string(kMaxGroundSize) + "]");
    }
    std::vector<double> values(std::size_t{1} << n, 0.0);
    for (std::size_t s = 1; s < values.size(); ++s) {
        // lowest set bit plus the rest, which is already filled in
        const int low = std::countr_zero(s);
        values[s] = values[s & (s - 1)] + masses[low];
    }
    return Capacity(n, std::move(values));
}

MaximalChain::MaximalChain(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    if (n < 1 || n > Capacity::kMaxGroundSize) {
        throw invalid_input("chain length must be in [1, " +
                            std::to_string(Capacity::kMaxGroundSize) + "]");
    }
    std::vector<bool> seen(n, false);
    for (int e : order_) {
        if (e < 1 || e > n || seen[e - 1]) {
            throw invalid_input("chain order is not a permutation of 1.." + std::to_string(n));
        }
        seen[e - 1] = true;
    }
}

SubsetMask MaximalChain::subset(int k) const {
    if (k < 0 || k > size()) {
        throw invalid_input("chain position out of range");
    }
    SubsetMask mask = 0;
    for (int i = 0; i < k; ++i) {
        mask |= SubsetMask{1} << (order_[i] - 1);
    }
    return mask;
}

std::string MaximalChain::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(order_[i]);
    }
    out += ')';
    return out;
}

std::string to_string(ChainMethod method) {
    return method == ChainMethod::exhaustive ? "exhaustive" : "greedy";
}

std::vector<double> chain_increments(const Capacity& mu, const MaximalChain& chain) {
    if (chain.size() != mu.ground_size()) {
        throw invalid_input("chain length " + std::to_string(chain.size()) +
                            " does not match ground size " + std::to_string(mu.ground_size()));
    }
    std::vector<double> deltas;
    deltas.reserve(chain.size());
    SubsetMask current = 0;
    for (int e : chain.order()) {
        const SubsetMask next = current | (SubsetMask{1} << (e - 1));
        deltas.push_back(mu(next) - mu(current));
        current = next;
    }
    return deltas;
}

DivergenceResult chain_divergence(const Capacity& mu, const MaximalChain& chain) {
    // the divergence of μ_C from the position function G_C(C_k) = k
    DivergenceAccumulator acc;
    for (double delta : chain_increments(mu, chain)) {
        acc.add({1.0, delta});
    }
    return acc.result();
}

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) {
        f *= static_cast<std::uint64_t>(k);
    }
    return f;
}

/// Per-cover term table: terms[mask * n + e] = -Δ ln Δ for adding element e to mask.
std::vector<double> cover_terms(const Capacity& mu) {
    const int n = mu.ground_size();
    const std::size_t count = std::size_t{1} << n;
    std::vector<double> terms(count * n, 0.0);
    for (std::size_t s = 0; s < count; ++s) {
        for (int e = 0; e < n; ++e) {
            const std::size_t bit = std::size_t{1} << e;
            if ((s & bit) == 0) {
                terms[s * n + e] = divergence_term({1.0, mu(s | bit) - mu(s)});
            }
        }
    }
    return terms;
}

struct SubtreeBest {
    double value = std::numeric_limits<double>::infinity();
    std::vector<int> order;
    std::uint64_t leaves = 0;
};

/// Depth-first search in lexicographic order. Prefix sums are accumulated left
/// to right, the same association chain_divergence uses, so each leaf value is
/// bit-identical to chain_divergence of that chain.
class ChainSearch {
public:
    ChainSearch(int n, const std::vector<double>& terms) : n_(n), terms_(terms), path_(n) {}

    SubtreeBest run_from(int first) {
        best_ = SubtreeBest{};
        const std::size_t bit = std::size_t{1} << first;
        path_[0] = first + 1;
        descend(1, bit, terms_[first]);
        return best_;
    }

private:
    void descend(int depth, std::size_t mask, double partial) {
        if (depth == n_) {
            ++best_.leaves;
            if (partial < best_.value) {
                best_.value = partial;
                best_.order = path_;
            }
            return;
        }
        for (int e = 0; e < n_; ++e) {
            const std::size_t bit = std::size_t{1} << e;
            if ((mask & bit) != 0) {
                continue;
            }
            path_[depth] = e + 1;
            descend(depth + 1, mask | bit, partial + terms_[mask * n_ + e]);
        }
    }

    int n_;
    const std::vector<double>& terms_;
    std::vector<int> path_;
    SubtreeBest best_;
};

CapacityEntropyReport exhaustive_search(const Capacity& mu, unsigned threads) {
    const int n = mu.ground_size();
    const auto terms = cover_terms(mu);
    std::vector<SubtreeBest> subtrees(n);

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

    std::atomic<int> next{0};
    auto worker = [&] {
        ChainSearch search(n, terms);
        for (int first = next++; first < n; first = next++) {
            subtrees[first] = search.run_from(first);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    // subtrees are in lexicographic order of their first element; strict <
    // keeps the earliest chain on ties
    std::size_t winner = 0;
    std::uint64_t leaves = 0;
    for (std::size_t i = 0; i < subtrees.size(); ++i) {
        leaves += subtrees[i].leaves;
        if (subtrees[i].value < subtrees[winner].value) {
            winner = i;
        }
    }
    return CapacityEntropyReport{subtrees[winner].value, MaximalChain(subtrees[winner].order),
                                 leaves, ChainMethod::exhaustive};
}

CapacityEntropyReport greedy_search(const Capacity& mu) {
    const int n = mu.ground_size();
    std::vector<int> order;
    order.reserve(n);
    SubsetMask mask = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        double pick_term = std::numeric_limits<double>::infinity();
        for (int e = 0; e < n; ++e) {
            const SubsetMask bit = SubsetMask{1} << e;
            if ((mask & bit) != 0) {
                continue;
            }
            const double term = divergence_term({1.0, mu(mask | bit) - mu(mask)});
            if (term < pick_term) {
                pick = e;
                pick_term = term;
            }
        }
        mask |= SubsetMask{1} << pick;
        order.push_back(pick + 1);
    }
    MaximalChain chain(std::move(order));
    const double value = chain_divergence(mu, chain).value;
    return CapacityEntropyReport{value, std::move(chain), 1, ChainMethod::greedy};
}

} // namespace

CapacityEntropyReport capacity_entropy(const Capacity& mu, const CapacityEntropyOptions& options) {
    if (options.method == ChainMethod::greedy) {
        return greedy_search(mu);
    }
    if (mu.ground_size() > options.exhaustive_limit) {
        if (options.greedy_fallback) {
            return greedy_search(mu);
        }
        throw invalid_input("ground size " + std::to_string(mu.ground_size()) +
                            " exceeds the exhaustive limit " +
                            std::to_string(options.exhaustive_limit) +
                            " (" + std::to_string(factorial(std::min(mu.ground_size(), 20))) +
                            " chains); request the greedy method");
    }
    return exhaustive_search(mu, options.threads);
}

ChainRange::iterator::iterator(int n) : order_(n), done_(false) {
    for (int i = 0; i < n; ++i) {
        order_[i] = i + 1;
    }
}

ChainRange::iterator& ChainRange::iterator::operator++() {
    if (!done_ && !std::next_permutation(order_.begin(), order_.end())) {
        done_ = true;
    }
    return *this;
}

ChainRange enumerate_chains(int n, int limit) {
    if (n < 1 || n > limit || n > Capacity::kMaxGroundSize) {
        throw invalid_input("chain enumeration needs 1 <= n <= " + std::to_string(limit));
    }
    return ChainRange(n);
}

} // namespace gradiv
