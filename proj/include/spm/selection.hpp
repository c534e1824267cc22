#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spm/types.hpp"

namespace spm {

/**
 * @brief Ordered set of distinct column indices i_1 < i_2 < ... < i_m
 * defining the projection subspace span{e_{i_1}, ..., e_{i_m}}.
 */
class IndexSet {
public:
    /// @p indices must be strictly increasing and nonempty.
    explicit IndexSet(std::vector<std::size_t> indices);

    static IndexSet single(std::size_t i);
    /// Two distinct indices in either order.
    static IndexSet pair_of(std::size_t a, std::size_t b);

    std::size_t size() const noexcept { return indices_.size(); }
    std::size_t operator[](std::size_t k) const noexcept { return indices_[k]; }
    std::span<const std::size_t> indices() const noexcept { return indices_; }

    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

private:
    std::vector<std::size_t> indices_;
};

/**
 * @brief How the sweep engine picks the projection indices at each inner
 * step: greedy on the residual, a fixed gap pair, or cyclic single indices
 * (which reproduces Gauss-Seidel).
 */
struct SelectionStrategy {
    enum class Kind { greedy_top_m, gap_pair, cyclic };

    Kind kind = Kind::cyclic;
    std::size_t m = 1;       // greedy subspace dimension
    std::size_t ij_gap = 0;  // gap between the paired indices

    static SelectionStrategy greedy(std::size_t m) {
        return {Kind::greedy_top_m, m, 0};
    }
    static SelectionStrategy gap(std::size_t ij_gap) {
        return {Kind::gap_pair, 2, ij_gap};
    }
    static SelectionStrategy cyclic() { return {Kind::cyclic, 1, 0}; }
};

/**
 * Indices of the m components of largest absolute value in @p r, ascending.
 * Ties prefer the smaller index, so the result is deterministic.
 * Single O(n log m) pass with a size-m heap.
 */
IndexSet top_m_indices(const Vector& r, std::size_t m);

/**
 * The fixed-gap index pair {i, i - ij_gap}, wrapping by +n when the
 * subtraction would leave [0, n). Indices are 0-based; requires
 * 0 < ij_gap < n, which also makes the pair distinct.
 */
IndexSet gap_indices(std::size_t i, std::size_t ij_gap, std::size_t n);

namespace detail {

/// Allocation-free core of top_m_indices; @p heap is scratch, @p out gets
/// the selected indices in ascending order.
void top_m_select(const double* r, std::size_t n, std::size_t m,
                  std::vector<std::size_t>& heap, std::vector<std::size_t>& out);

}  // namespace detail

}  // namespace spm
