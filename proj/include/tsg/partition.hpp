#pragma once

#include "tsg/finvec.hpp"

#include <vector>

namespace tsg {

// Partition of N into consecutive integer intervals sigma_1, sigma_2, ...
// given by block lengths. When constructed with a growth rule the block list
// extends lazily, otherwise indices past the last block are an error.
class OrderedPartition {
 public:
  // Fixed finite prefix of block lengths.
  static OrderedPartition from_lengths(std::vector<Index> lengths);
  // |sigma_n| = 2^{n-1}; satisfies M_r <= M_{r+1} - M_r and log M_r <= r.
  static OrderedPartition geometric();

  Index block_count() const;  // -1 when generative
  Index length(Index n) const;
  Index begin(Index n) const;  // first index of sigma_n
  Index end(Index n) const;    // last index of sigma_n
  Index cumulative(Index r) const;  // M_r
  Index block_of(Index i) const;    // n with i in sigma_n

  std::vector<Index> lengths_upto(Index n) const;

 private:
  std::vector<Index> lengths_;
  bool generative_ = false;
  Index generative_length(Index n) const;
};

}  // namespace tsg
