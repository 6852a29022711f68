#pragma once

// Dense prime-implicant engine over the full 3^n state.
//
// The state is split into a top layer of 3^(n-h) blocks and a bottom layer
// of h dimensions inside each block. Bit b of block a stands for the string
// of rank a * 3^h + b, so the bottom layer holds variables x_1..x_h.
// MERGE and REDUCE are applied one dimension at a time: the top layer as
// blockwise batch operations on block triples, the bottom layer with
// shift-and-mask operations inside a single block.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qmc/ternary.hpp"
#include "qmc/truth_table.hpp"

namespace qmc::dense {

inline constexpr int kMaxBottomDims = 6;

enum class PassOp { Merge, Reduce };

template <class V>
struct Triple {
  V zero;
  V one;
  V star;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// (z, o, s) -> (z, o, s | (z & o)), bitwise over any unsigned bit-vector type.
template <class V>
constexpr Triple<V> merge_triple(Triple<V> t) {
  return {t.zero, t.one, static_cast<V>(t.star | (t.zero & t.one))};
}

/// (z, o, s) -> (z & ~s, o & ~s, s).
template <class V>
constexpr Triple<V> reduce_triple(Triple<V> t) {
  return {static_cast<V>(t.zero & ~t.star), static_cast<V>(t.one & ~t.star), t.star};
}

template <>
constexpr Triple<bool> merge_triple(Triple<bool> t) {
  return {t.zero, t.one, t.star || (t.zero && t.one)};
}

template <>
constexpr Triple<bool> reduce_triple(Triple<bool> t) {
  return {t.zero && !t.star, t.one && !t.star, t.star};
}

/// Storage width of one block: the smallest power of two >= 3^h, but at
/// least one byte.
std::uint64_t block_bits(int h);

/// blocks * block_bits / 8.
std::uint64_t required_bytes(int n, int h);

/// Bottom-layer width used when the caller does not choose one: 5 (243 of
/// 256 bits) when 256-bit vectors are available, 3 (27 of 32 bits)
/// otherwise, never more than n.
int default_bottom_dims(int n);

/// Bottom-layer masks. Mask i (1..h) has bits 3^i * b + c for
/// b in [0, 3^(h-i)), c in [0, 3^(i-1)): the positions whose digit i-1 is 0.
class MaskTable {
 public:
  explicit MaskTable(int h);

  int bottom_dims() const noexcept { return h_; }
  std::size_t words_per_mask() const noexcept { return words_; }
  std::span<const std::uint64_t> mask(int i) const;
  bool test(int i, std::size_t bit) const;
  std::size_t popcount(int i) const;

 private:
  int h_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

class DenseState {
 public:
  /// Zeroed state. Throws ResourceError if required_bytes(n, h) > mem_cap
  /// (0 selects the default cap) or allocation fails.
  DenseState(int n, int h, std::uint64_t mem_cap = 0);

  DenseState(const DenseState& other);
  DenseState& operator=(const DenseState& other);
  DenseState(DenseState&&) noexcept = default;
  DenseState& operator=(DenseState&&) noexcept = default;

  int num_vars() const noexcept { return n_; }
  int bottom_dims() const noexcept { return h_; }
  std::uint64_t block_count() const noexcept { return blocks_; }
  std::uint64_t block_bits() const noexcept { return block_bytes_ * 8; }
  std::uint64_t block_bytes() const noexcept { return block_bytes_; }
  std::uint64_t size_bytes() const noexcept { return blocks_ * block_bytes_; }

  bool test(Rank r) const noexcept;
  void set(Rank r, bool value = true) noexcept;

  std::uint64_t popcount() const noexcept;

  /// True iff every bit at index >= 3^h in every block is zero.
  bool padding_clear() const noexcept;

  std::byte* data() noexcept { return data_.get(); }
  const std::byte* data() const noexcept { return data_.get(); }

  friend bool operator==(const DenseState& a, const DenseState& b) noexcept;

 private:
  struct Free {
    explicit Free(std::size_t a) noexcept : alignment(a) {}
    void operator()(std::byte* p) const noexcept;
    std::size_t alignment;
  };

  int n_;
  int h_;
  std::uint64_t blocks_;
  std::uint64_t block_bytes_;
  std::unique_ptr<std::byte[], Free> data_;
};

/// Per-dimension operation counts gathered during a pass.
struct PassStats {
  /// top_triples[j-1]: block triples processed for top-layer dimension j.
  std::vector<std::uint64_t> top_triples;
  /// Single-block bottom-layer dimension applications.
  std::uint64_t bottom_dim_ops = 0;
};

struct PassOptions {
  /// Compile-time shifts and masks in the bottom layer.
  bool unroll = true;
  PassStats* stats = nullptr;
};

/// Support points become the star-free strings of the state.
DenseState load(const TruthTable& tt, int h, std::uint64_t mem_cap = 0);

/// MergeAll or ReduceAll in place: top-layer dimensions 1..n-h, then every
/// bottom-layer dimension of every block.
void pass(DenseState& state, PassOp op, const PassOptions& options = {});

/// Applies op along one variable (0-based), whichever layer holds it.
void apply_dimension(DenseState& state, PassOp op, int var, PassStats* stats = nullptr);

/// pass() with an explicit order of variables (a permutation of 0..n-1).
void pass_in_order(DenseState& state, PassOp op, std::span<const int> vars);

/// Strings whose bit is set, in increasing rank order.
std::vector<TernaryString> extract(const DenseState& state);

struct DenseOptions {
  /// 0 selects default_bottom_dims(n).
  int bottom_dims = 0;
  bool unroll = true;
  /// Run the MERGE and REDUCE bottom layers back to back per block and
  /// process low top-layer dimensions in cache-sized chunks.
  bool fuse = true;
  /// 0 selects default_memory_cap().
  std::uint64_t mem_cap = 0;
};

/// All prime implicants of tt, in increasing rank order.
std::vector<TernaryString> find_primes(const TruthTable& tt, const DenseOptions& options = {});

}  // namespace qmc::dense
