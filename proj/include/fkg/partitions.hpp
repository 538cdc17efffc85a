#ifndef FKG_PARTITIONS_HPP_
#define FKG_PARTITIONS_HPP_

#include <compare>
#include <cstdint>
#include <vector>

#include "fkg/rational.hpp"

namespace fkg {

inline constexpr int kDefaultSplitCap = 10;

// Integer partition: weakly decreasing positive parts.
class Partition {
public:
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }

    // Transpose of the Young diagram; an involution with length(conj) = parts[0].
    Partition conjugate() const;

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    // Reverse-lexicographic: (m) first, (1,...,1) last within a weight class.
    std::strong_ordering operator<=>(const Partition& o) const;

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

// All partitions of weight m in reverse-lexicographic order.
std::vector<Partition> enumerate_partitions(int m);

// Set partition of {0..m-1}; blocks are bitmasks kept in canonical order:
// descending size, ties broken by smallest element.
class BlockSplit {
public:
    BlockSplit(int m, std::vector<std::uint32_t> block_masks);

    int ground_size() const { return m_; }
    const std::vector<std::uint32_t>& blocks() const { return blocks_; }
    Partition type() const;
    std::vector<std::vector<int>> blocks_as_sorted_lists() const;

    bool operator==(const BlockSplit& o) const = default;

private:
    int m_;
    std::vector<std::uint32_t> blocks_;
};

// All set partitions of {0..m-1} whose block-size multiset equals lambda,
// each exactly once, sorted by their canonical block lists.
std::vector<BlockSplit> splits_of_type(const Partition& lambda, int cap = kDefaultSplitCap);

// Closed-form count m! / (prod_j lambda_j! * prod_i mult_i(lambda)!); the
// tests require it to equal the enumerated length.
Integer split_count_of_type(const Partition& lambda);

// B(0..m) via the Bell triangle.
std::vector<Integer> bell_numbers(int m);

}  // namespace fkg

#endif  // FKG_PARTITIONS_HPP_
