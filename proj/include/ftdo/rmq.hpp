#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace ftdo {

/// Static range-minimum over 64-bit values. O(k log k) space, O(1) query.
class SparseTableMin {
public:
    static constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

    SparseTableMin() = default;
    explicit SparseTableMin(std::vector<std::uint64_t> values) { assign(std::move(values)); }

    void assign(std::vector<std::uint64_t> values) {
        levels_.clear();
        levels_.push_back(std::move(values));
        const std::size_t k = levels_[0].size();
        for (std::size_t w = 1; 2 * w <= k; w *= 2) {
            const auto& prev = levels_.back();
            std::vector<std::uint64_t> next(k - 2 * w + 1);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
            levels_.push_back(std::move(next));
        }
    }

    std::size_t size() const { return levels_.empty() ? 0 : levels_[0].size(); }
    const std::vector<std::uint64_t>& values() const { return levels_.front(); }

    /// Minimum over [lo, hi] inclusive; kNone for an empty range.
    std::uint64_t min(std::size_t lo, std::size_t hi) const {
        if (lo > hi || hi >= size()) return kNone;
        const std::size_t len = hi - lo + 1;
        const auto level = static_cast<std::size_t>(std::bit_width(len) - 1);
        const auto& row = levels_[level];
        return std::min(row[lo], row[hi + 1 - (std::size_t{1} << level)]);
    }

private:
    std::vector<std::vector<std::uint64_t>> levels_;
};

}  // namespace ftdo
