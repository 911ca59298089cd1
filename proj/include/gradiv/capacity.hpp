#pragma once

#include "gradiv/discrete.hpp"

#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace gradiv {

/// Subset of the ground set {1..n}; bit i set means element i + 1 is present.
using SubsetMask = std::uint32_t;

/// Monotone nonnegative set function on all subsets of a finite ground set.
/// Not assumed additive or normalized. Validated eagerly on construction.
class Capacity {
public:
    static constexpr int kMaxGroundSize = 24;

    /// values[mask] is the measure of the subset encoded by mask; requires
    /// values.size() == 2^ground_size, values[0] == 0 and A ⊆ B ⇒ μ(A) <= μ(B).
    Capacity(int ground_size, std::vector<double> values);

    /// The additive measure with the given singleton masses.
    [[nodiscard]] static Capacity additive(std::span<const double> masses);

    [[nodiscard]] int ground_size() const noexcept { return ground_size_; }
    [[nodiscard]] double operator()(SubsetMask subset) const { return values_.at(subset); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const Capacity&, const Capacity&) = default;

private:
    int ground_size_;
    std::vector<double> values_;
};

/// A maximal chain ∅ = C_0 ⊂ C_1 ⊂ ... ⊂ C_n of the Boolean lattice, stored as
/// the order in which the ground elements (1-based) are inserted.
class MaximalChain {
public:
    explicit MaximalChain(std::vector<int> order);

    [[nodiscard]] std::span<const int> order() const noexcept { return order_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(order_.size()); }
    /// C_k: the first k inserted elements.
    [[nodiscard]] SubsetMask subset(int k) const;
    /// "(2,1)"
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const MaximalChain&, const MaximalChain&) = default;
    friend auto operator<=>(const MaximalChain&, const MaximalChain&) = default;

private:
    std::vector<int> order_;
};

enum class ChainMethod { exhaustive, greedy };

[[nodiscard]] std::string to_string(ChainMethod method);

struct CapacityEntropyOptions {
    ChainMethod method = ChainMethod::exhaustive;
    int exhaustive_limit = 10;
    /// Run greedy instead of failing when n exceeds exhaustive_limit.
    bool greedy_fallback = false;
    /// Worker threads for the exhaustive search; 0 picks hardware concurrency.
    unsigned threads = 0;
};

struct CapacityEntropyReport {
    double entropy = 0.0;
    MaximalChain argmin_chain;
    std::uint64_t chains_examined = 0;
    ChainMethod method = ChainMethod::exhaustive;
};

/// μ(C_k) - μ(C_{k-1}) for k = 1..n; all >= 0 for a valid capacity.
[[nodiscard]] std::vector<double> chain_increments(const Capacity& mu, const MaximalChain& chain);

/// -Σ Δ_k ln Δ_k along the chain, zero increments contributing 0.
[[nodiscard]] DivergenceResult chain_divergence(const Capacity& mu, const MaximalChain& chain);

/// Minimum of chain_divergence over maximal chains (exhaustive), or the value
/// of the greedily built chain, which bounds that minimum from above.
/// Exhaustive ties resolve to the lexicographically first chain, independent
/// of the worker count.
[[nodiscard]] CapacityEntropyReport capacity_entropy(const Capacity& mu,
                                                     const CapacityEntropyOptions& options = {});

/// Lexicographic stream of all n! maximal chains of the lattice of subsets of {1..n}.
class ChainRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = MaximalChain;
        using difference_type = std::ptrdiff_t;
        using reference = MaximalChain;
        using pointer = void;

        iterator() = default;
        MaximalChain operator*() const { return MaximalChain(order_); }
        iterator& operator++();
        iterator operator++(int) {
            auto tmp = *this;
            ++*this;
            return tmp;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

    private:
        friend class ChainRange;
        explicit iterator(int n);
        std::vector<int> order_;
        bool done_ = true;
    };

    [[nodiscard]] iterator begin() const { return iterator(n_); }
    [[nodiscard]] iterator end() const { return iterator(); }
    [[nodiscard]] int ground_size() const noexcept { return n_; }

private:
    friend ChainRange enumerate_chains(int n, int limit);
    explicit ChainRange(int n) : n_(n) {}
    int n_;
};

/// Throws invalid_input unless 1 <= n <= limit.
[[nodiscard]] ChainRange enumerate_chains(int n, int limit = 10);

} // namespace gradiv
