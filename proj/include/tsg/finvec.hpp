#pragma once

#include "tsg/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace tsg {

// Finitely supported sequence with exact rational entries. Zero entries are
// never stored; indices start at 1.
class FinVec {
 public:
  FinVec() = default;

  static FinVec unit(Index n) {
    FinVec f;
    f.set(n, Rational(1));
    return f;
  }

  // 1_{[a,b]}
  static FinVec indicator(Index a, Index b);

  static FinVec from_dense(const std::vector<Rational>& values);  // index i+1

  void set(Index n, const Rational& value);
  Rational get(Index n) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Index max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
  Index min_index() const { return entries_.empty() ? 0 : entries_.begin()->first; }

  std::vector<Index> support() const;

  FinVec abs() const;
  // Entrywise |a_n|^p for integer p >= 1.
  FinVec abs_pow(unsigned p) const;
  FinVec scaled(const Rational& c) const;
  FinVec plus(const FinVec& other) const;

  // Coordinate projection onto an index set.
  FinVec restricted(const std::vector<Index>& indices) const;

  Rational l1() const;
  Rational linf() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const FinVec& other) const { return entries_ == other.entries_; }

 private:
  std::map<Index, Rational> entries_;
};

struct BlockIndex {
  Index block = 0;
  Index pos = 0;
  auto operator<=>(const BlockIndex&) const = default;
};

// Finitely supported vector on a block-indexed set {(j,n)}.
class BlockVec {
 public:
  void set(BlockIndex i, const Rational& value);
  Rational get(BlockIndex i) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  std::vector<Index> blocks() const;
  FinVec block(Index j) const;  // inner vector of block j

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const BlockVec& other) const { return entries_ == other.entries_; }

 private:
  std::map<BlockIndex, Rational> entries_;
};

}  // namespace tsg
