#include "fkg/partitions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace fkg {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty())
        throw std::invalid_argument("In fkg::Partition: no parts");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw std::invalid_argument("In fkg::Partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("In fkg::Partition: parts must be weakly decreasing");
        weight_ += parts_[i];
    }
}

Partition Partition::conjugate() const {
    std::vector<int> conj;
    for (int i = 1; i <= parts_[0]; ++i) {
        int count = 0;
        for (int part : parts_)
            if (part >= i) ++count;
        conj.push_back(count);
    }
    return Partition(std::move(conj));
}

std::strong_ordering Partition::operator<=>(const Partition& o) const {
    if (weight_ != o.weight_) return weight_ <=> o.weight_;
    // lexicographically larger part lists come first
    if (parts_ == o.parts_) return std::strong_ordering::equal;
    return o.parts_ < parts_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::vector<Partition> enumerate_partitions(int m) {
    if (m < 1)
        throw std::invalid_argument("In fkg::enumerate_partitions: m must be >= 1");
    std::vector<Partition> out;
    std::vector<int> parts{m};
    while (true) {
        out.emplace_back(parts);
        // find the rightmost part > 1
        int i = static_cast<int>(parts.size()) - 1;
        while (i >= 0 && parts[i] == 1) --i;
        if (i < 0) break;
        const int rem = static_cast<int>(parts.size()) - i;  // ones removed plus the 1 we take
        parts[i] -= 1;
        parts.resize(static_cast<std::size_t>(i) + 1);
        int todo = rem;
        while (todo > parts[i]) {
            parts.push_back(parts[i]);
            todo -= parts[i];
        }
        if (todo > 0) parts.push_back(todo);
    }
    return out;
}

BlockSplit::BlockSplit(int m, std::vector<std::uint32_t> block_masks)
    : m_(m), blocks_(std::move(block_masks)) {
    if (m < 1 || m > 32)
        throw std::invalid_argument("In fkg::BlockSplit: ground size out of range");
    const std::uint32_t full = m == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1);
    std::uint32_t seen = 0;
    for (std::uint32_t b : blocks_) {
        if (b == 0)
            throw std::invalid_argument("In fkg::BlockSplit: empty block");
        if ((b & seen) != 0)
            throw std::invalid_argument("In fkg::BlockSplit: blocks overlap");
        seen |= b;
    }
    if (seen != full)
        throw std::invalid_argument("In fkg::BlockSplit: blocks do not cover the ground set");
    std::sort(blocks_.begin(), blocks_.end(), [](std::uint32_t a, std::uint32_t b) {
        const int ca = std::popcount(a), cb = std::popcount(b);
        if (ca != cb) return ca > cb;
        return std::countr_zero(a) < std::countr_zero(b);
    });
}

Partition BlockSplit::type() const {
    std::vector<int> sizes;
    sizes.reserve(blocks_.size());
    for (std::uint32_t b : blocks_) sizes.push_back(std::popcount(b));
    std::sort(sizes.rbegin(), sizes.rend());
    return Partition(std::move(sizes));
}

std::vector<std::vector<int>> BlockSplit::blocks_as_sorted_lists() const {
    std::vector<std::vector<int>> out;
    out.reserve(blocks_.size());
    for (std::uint32_t b : blocks_) {
        std::vector<int> elems;
        for (int i = 0; i < m_; ++i)
            if ((b >> i) & 1u) elems.push_back(i);
        out.push_back(std::move(elems));
    }
    return out;
}

namespace {

// Enumerates without duplicates: the smallest unassigned element leads the
// next block, so blocks of equal size appear with increasing minima.
void recurse_splits(int m, std::uint32_t remaining, std::map<int, int>& size_counts,
                    std::vector<std::uint32_t>& acc, std::vector<BlockSplit>& out) {
    if (remaining == 0) {
        out.emplace_back(m, acc);
        return;
    }
    const int leader = std::countr_zero(remaining);
    const std::uint32_t rest = remaining & ~(std::uint32_t{1} << leader);
    for (auto it = size_counts.begin(); it != size_counts.end(); ++it) {
        if (it->second == 0) continue;
        const int size = it->first;
        // choose size-1 further elements from rest
        std::vector<int> pool;
        for (int i = 0; i < m; ++i)
            if ((rest >> i) & 1u) pool.push_back(i);
        const int need = size - 1;
        if (need > static_cast<int>(pool.size())) continue;
        std::vector<int> idx(static_cast<std::size_t>(need));
        for (int i = 0; i < need; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::uint32_t block = std::uint32_t{1} << leader;
            for (int i : idx) block |= std::uint32_t{1} << pool[static_cast<std::size_t>(i)];
            it->second -= 1;
            acc.push_back(block);
            recurse_splits(m, remaining & ~block, size_counts, acc, out);
            acc.pop_back();
            it->second += 1;
            // next combination
            int k = need - 1;
            while (k >= 0 &&
                   idx[static_cast<std::size_t>(k)] == static_cast<int>(pool.size()) - need + k)
                --k;
            if (k < 0) break;
            ++idx[static_cast<std::size_t>(k)];
            for (int j = k + 1; j < need; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

std::vector<BlockSplit> splits_of_type(const Partition& lambda, int cap) {
    const int m = lambda.weight();
    if (m > cap)
        throw std::invalid_argument("In fkg::splits_of_type: weight exceeds cap");
    std::map<int, int> size_counts;
    for (int part : lambda.parts()) size_counts[part] += 1;
    std::vector<std::uint32_t> acc;
    std::vector<BlockSplit> out;
    const std::uint32_t full = (std::uint32_t{1} << m) - 1;
    recurse_splits(m, full, size_counts, acc, out);
    std::sort(out.begin(), out.end(), [](const BlockSplit& a, const BlockSplit& b) {
        return a.blocks_as_sorted_lists() < b.blocks_as_sorted_lists();
    });
    return out;
}

Integer split_count_of_type(const Partition& lambda) {
    Integer count = factorial(static_cast<unsigned long>(lambda.weight()));
    std::map<int, int> mult;
    for (int part : lambda.parts()) {
        count /= factorial(static_cast<unsigned long>(part));
        mult[part] += 1;
    }
    for (const auto& [part, times] : mult)
        count /= factorial(static_cast<unsigned long>(times));
    return count;
}

std::vector<Integer> bell_numbers(int m) {
    std::vector<Integer> bell{Integer(1)};
    std::vector<Integer> row{Integer(1)};
    for (int i = 1; i <= m; ++i) {
        std::vector<Integer> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (const Integer& x : row) next.push_back(next.back() + x);
        row = std::move(next);
        bell.push_back(row.front());
    }
    return bell;
}

}  // namespace fkg
