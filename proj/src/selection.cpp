#include "spm/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace spm {

IndexSet::IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw std::invalid_argument("index set must be nonempty");
    for (std::size_t k = 1; k < indices_.size(); ++k) {
        if (indices_[k - 1] >= indices_[k]) {
            throw std::invalid_argument("index set must be strictly increasing");
        }
    }
}

IndexSet IndexSet::single(std::size_t i) { return IndexSet(std::vector<std::size_t>{i}); }

IndexSet IndexSet::pair_of(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return IndexSet(std::vector<std::size_t>{a, b});
}

namespace detail {

void top_m_select(const double* r, std::size_t n, std::size_t m,
                  std::vector<std::size_t>& heap, std::vector<std::size_t>& out) {
    if (m == 0 || m > n) {
        throw std::invalid_argument("subspace dimension m = " + std::to_string(m) +
                                    " must be in [1, " + std::to_string(n) + "]");
    }
    // a beats b on larger magnitude, then on smaller index.
    auto beats = [r](std::size_t a, std::size_t b) {
        const double va = std::abs(r[a]);
        const double vb = std::abs(r[b]);
        if (va != vb) return va > vb;
        return a < b;
    };
    // Min-heap under "beats": the root is the weakest kept candidate.
    auto heap_cmp = [&beats](std::size_t a, std::size_t b) { return beats(a, b); };

    heap.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (heap.size() < m) {
            heap.push_back(i);
            std::push_heap(heap.begin(), heap.end(), heap_cmp);
        } else if (beats(i, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), heap_cmp);
            heap.back() = i;
            std::push_heap(heap.begin(), heap.end(), heap_cmp);
        }
    }
    out.assign(heap.begin(), heap.end());
    std::sort(out.begin(), out.end());
}

}  // namespace detail

IndexSet top_m_indices(const Vector& r, std::size_t m) {
    std::vector<std::size_t> heap;
    std::vector<std::size_t> out;
    detail::top_m_select(r.data(), r.size(), m, heap, out);
    return IndexSet(std::move(out));
}

IndexSet gap_indices(std::size_t i, std::size_t ij_gap, std::size_t n) {
    if (ij_gap == 0 || ij_gap >= n) {
        throw std::invalid_argument("ij_gap = " + std::to_string(ij_gap) +
                                    " must satisfy 0 < ij_gap < n = " + std::to_string(n));
    }
    if (i >= n) throw std::invalid_argument("index out of range");
    const std::size_t j = i >= ij_gap ? i - ij_gap : i + n - ij_gap;
    return IndexSet::pair_of(i, j);
}

}  // namespace spm
