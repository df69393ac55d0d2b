#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ghwlab/errors.hpp"

namespace ghwlab {

// Number of r-dimensional subspaces of F_p^m, computed exactly as
// prod_{i=1..r} (p^{m-r+i} - 1) / (p^i - 1). Each partial product is itself a
// Gaussian binomial, so the interleaved division is exact.
inline unsigned long long gaussian_binomial(int m, int r, long long p) {
    if (r < 0 || r > m) throw PreconditionError("gaussian_binomial needs 0 <= r <= m");
    using u128 = unsigned __int128;
    auto pw = [&](int e) {
        u128 v = 1;
        for (int i = 0; i < e; ++i) v *= static_cast<unsigned long long>(p);
        return v;
    };
    u128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc *= pw(m - r + i) - 1;
        acc /= pw(i) - 1;
        if (acc > static_cast<u128>(UINT64_MAX)) throw ArithmeticOverflow("gaussian binomial");
    }
    return static_cast<unsigned long long>(acc);
}

// An r-dimensional subspace of F_p^m, represented by its unique reduced
// row-echelon basis (row-major r x m). Distinct values have distinct row spaces.
struct Subspace {
    int r = 0;
    int m = 0;
    std::vector<int> rows;  // size r*m

    int at(int i, int j) const { return rows[static_cast<std::size_t>(i) * m + j]; }
    int& at(int i, int j) { return rows[static_cast<std::size_t>(i) * m + j]; }
};

// Enumerates all r-dimensional subspaces of F_p^m exactly once, grouped by
// pivot-column pattern (patterns in lexicographic order, free entries counted
// in base p, least-significant digit at the first free position in row-major
// order). Supports random access for deterministic work partitioning.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int m, int r, long long p) : m_(m), r_(r), p_(p) {
        if (r < 0 || r > m) throw PreconditionError("subspace enumeration needs 0 <= r <= m");
        std::vector<int> pivots(r);
        for (int i = 0; i < r; ++i) pivots[i] = i;
        while (true) {
            add_pattern(pivots);
            // next combination in lexicographic order
            int i = r - 1;
            while (i >= 0 && pivots[i] == m - r + i) --i;
            if (i < 0) break;
            ++pivots[i];
            for (int j = i + 1; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
        }
        if (r == 0) {
            patterns_.clear();
            patterns_.push_back({{}, {}, 1});
        }
        prefix_.resize(patterns_.size() + 1, 0);
        for (std::size_t k = 0; k < patterns_.size(); ++k) {
            unsigned long long next = prefix_[k] + patterns_[k].count;
            if (next < prefix_[k]) throw ArithmeticOverflow("subspace count");
            prefix_[k + 1] = next;
        }
    }

    unsigned long long total() const { return prefix_.back(); }
    std::size_t pattern_count() const { return patterns_.size(); }

    Subspace at(unsigned long long index) const {
        Subspace s;
        std::size_t k = locate(index);
        fill(k, index - prefix_[k], s);
        return s;
    }

    // Visits indices [lo, hi) in order. The callback receives the subspace and
    // its global index.
    template <typename Fn>
    void for_each(unsigned long long lo, unsigned long long hi, Fn&& fn) const {
        if (lo >= hi) return;
        std::size_t k = locate(lo);
        unsigned long long counter = lo - prefix_[k];
        Subspace s;
        fill(k, counter, s);
        for (unsigned long long idx = lo; idx < hi; ++idx) {
            fn(s, idx);
            if (idx + 1 == hi) break;
            if (++counter < patterns_[k].count) {
                advance(k, s);
            } else {
                ++k;
                counter = 0;
                fill(k, 0, s);
            }
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for_each(0, total(), std::forward<Fn>(fn));
    }

private:
    struct Pattern {
        std::vector<int> pivots;
        std::vector<std::pair<int, int>> free_pos;  // row-major order
        unsigned long long count = 1;
    };

    void add_pattern(const std::vector<int>& pivots) {
        Pattern pat;
        pat.pivots = pivots;
        std::vector<bool> is_pivot(m_, false);
        for (int c : pivots) is_pivot[c] = true;
        for (int i = 0; i < r_; ++i)
            for (int col = pivots[i] + 1; col < m_; ++col)
                if (!is_pivot[col]) pat.free_pos.emplace_back(i, col);
        for (std::size_t t = 0; t < pat.free_pos.size(); ++t) {
            unsigned long long next = pat.count * static_cast<unsigned long long>(p_);
            if (next / static_cast<unsigned long long>(p_) != pat.count)
                throw ArithmeticOverflow("subspace pattern count");
            pat.count = next;
        }
        patterns_.push_back(std::move(pat));
    }

    std::size_t locate(unsigned long long index) const {
        if (index >= total()) throw PreconditionError("subspace index out of range");
        std::size_t lo = 0, hi = patterns_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (prefix_[mid] <= index)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    void fill(std::size_t k, unsigned long long counter, Subspace& s) const {
        const Pattern& pat = patterns_[k];
        s.r = r_;
        s.m = m_;
        s.rows.assign(static_cast<std::size_t>(r_) * m_, 0);
        for (int i = 0; i < r_; ++i) s.at(i, pat.pivots[i]) = 1;
        for (const auto& [row, col] : pat.free_pos) {
            s.at(row, col) = static_cast<int>(counter % p_);
            counter /= p_;
        }
    }

    void advance(std::size_t k, Subspace& s) const {
        for (const auto& [row, col] : patterns_[k].free_pos) {
            int v = s.at(row, col) + 1;
            if (v < p_) {
                s.at(row, col) = v;
                return;
            }
            s.at(row, col) = 0;  // carry
        }
    }

    int m_;
    int r_;
    long long p_;
    std::vector<Pattern> patterns_;
    std::vector<unsigned long long> prefix_;
};

}  // namespace ghwlab
