#include "qmc/dense.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstring>
#include <new>

#include <sys/mman.h>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "qmc/errors.hpp"
#include "qmc/memory.hpp"

static_assert(std::endian::native == std::endian::little, "dense state layout assumes a little-endian host");

namespace qmc::dense {
namespace {

#if defined(__GNUC__)
#define QMC_INLINE [[gnu::always_inline]] inline
#else
#define QMC_INLINE inline
#endif

constexpr std::size_t kAlignment = 64;
constexpr std::size_t kHugePage = std::size_t{2} << 20;

// Low top-layer dimensions are processed chunk by chunk when a chunk of 3^J
// blocks fits in this many bytes.
constexpr std::uint64_t kChunkBytes = 256 * 1024;
constexpr std::uint64_t kRunBytes = 4 * 1024;
constexpr std::uint64_t kTileBytes = 1024 * 1024;

constexpr std::uint64_t block_bits_of(int h) {
  const std::uint64_t bits = std::bit_ceil(pow3(h));
  return bits < 8 ? 8 : bits;
}

// Multi-word block for h >= 4.
template <int W>
struct WideBlock {
  std::array<std::uint64_t, W> w{};

  QMC_INLINE friend constexpr WideBlock operator&(WideBlock a, const WideBlock& b) {
    for (int i = 0; i < W; ++i) a.w[i] &= b.w[i];
    return a;
  }
  QMC_INLINE friend constexpr WideBlock operator|(WideBlock a, const WideBlock& b) {
    for (int i = 0; i < W; ++i) a.w[i] |= b.w[i];
    return a;
  }
  QMC_INLINE friend constexpr WideBlock operator~(WideBlock a) {
    for (int i = 0; i < W; ++i) a.w[i] = ~a.w[i];
    return a;
  }
};

template <int W>
constexpr WideBlock<W> shift_right(const WideBlock<W>& v, int k) {
  WideBlock<W> r;
  const int q = k >> 6;
  const int s = k & 63;
  for (int i = 0; i < W; ++i) {
    std::uint64_t x = 0;
    if (i + q < W) x = v.w[i + q] >> s;
    if (s != 0 && i + q + 1 < W) x |= v.w[i + q + 1] << (64 - s);
    r.w[i] = x;
  }
  return r;
}

template <int W>
constexpr WideBlock<W> shift_left(const WideBlock<W>& v, int k) {
  WideBlock<W> r;
  const int q = k >> 6;
  const int s = k & 63;
  for (int i = 0; i < W; ++i) {
    std::uint64_t x = 0;
    if (i - q >= 0) x = v.w[i - q] << s;
    if (s != 0 && i - q - 1 >= 0) x |= v.w[i - q - 1] >> (64 - s);
    r.w[i] = x;
  }
  return r;
}

constexpr std::uint32_t shift_right(std::uint32_t v, int k) { return v >> k; }
constexpr std::uint32_t shift_left(std::uint32_t v, int k) { return v << k; }

template <int W>
constexpr void set_bit(WideBlock<W>& v, std::uint64_t bit) {
  v.w[bit >> 6] |= std::uint64_t{1} << (bit & 63);
}
constexpr void set_bit(std::uint32_t& v, std::uint64_t bit) { v |= std::uint32_t{1} << bit; }

template <class V>
constexpr V make_mask(int h, int i) {
  V m{};
  const std::uint64_t stride = pow3(i - 1);
  for (std::uint64_t b = 0; b < pow3(h - i); ++b) {
    for (std::uint64_t c = 0; c < stride; ++c) set_bit(m, pow3(i) * b + c);
  }
  return m;
}

// Storage unit and in-register value type for each bottom-layer width.
template <int H>
struct Layout {
  using Unit = std::uint64_t;
  static constexpr int kUnits = static_cast<int>(block_bits_of(H) / 64);
  using Value = WideBlock<kUnits>;

  static Value load(const Unit* p) {
    Value v;
    std::memcpy(v.w.data(), p, sizeof(v.w));
    return v;
  }
  static void store(Unit* p, const Value& v) { std::memcpy(p, v.w.data(), sizeof(v.w)); }
};

template <class U>
struct SmallLayout {
  using Unit = U;
  static constexpr int kUnits = 1;
  using Value = std::uint32_t;

  static Value load(const Unit* p) { return *p; }
  static void store(Unit* p, Value v) { *p = static_cast<Unit>(v); }
};

template <>
struct Layout<1> : SmallLayout<std::uint8_t> {};
template <>
struct Layout<2> : SmallLayout<std::uint16_t> {};
template <>
struct Layout<3> : SmallLayout<std::uint32_t> {};

static_assert(sizeof(typename Layout<5>::Value) * 8 == 256);

template <PassOp Op, class V>
QMC_INLINE void apply_op(V& s, V& t, V& u) {
  if constexpr (Op == PassOp::Merge) {
    u = merge_triple(Triple<V>{s, t, u}).star;
  } else {
    const Triple<V> r = reduce_triple(Triple<V>{s, t, u});
    s = r.zero;
    t = r.one;
  }
}

template <class F>
decltype(auto) dispatch_h(int h, F&& f) {
  switch (h) {
    case 1: return f(std::integral_constant<int, 1>{});
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    case 5: return f(std::integral_constant<int, 5>{});
    case 6: return f(std::integral_constant<int, 6>{});
    default: throw std::invalid_argument("bottom-layer dimension count must be in [1, 6]");
  }
}

// ---- bottom layer --------------------------------------------------------

// One bottom dimension i on a block value held in registers; shift right,
// mask, apply, recombine.
template <PassOp Op, class V>
QMC_INLINE void bottom_dim(V& v, int shift, const V& mask) {
  V s = v & mask;
  V t = shift_right(v, shift) & mask;
  V u = shift_right(v, 2 * shift) & mask;
  apply_op<Op>(s, t, u);
  v = s | shift_left(t, shift) | shift_left(u, 2 * shift);
}

template <int H, int I>
struct FixedMask {
  using V = typename Layout<H>::Value;
  static constexpr V value = make_mask<V>(H, I);
};

template <int K, int W>
QMC_INLINE WideBlock<W> shift_right_fixed(const WideBlock<W>& v) {
  constexpr int q = K >> 6;
  constexpr int s = K & 63;
  WideBlock<W> r;
  for (int i = 0; i < W; ++i) {
    std::uint64_t x = i + q < W ? v.w[i + q] >> s : 0;
    if constexpr (s != 0) x |= i + q + 1 < W ? v.w[i + q + 1] << (64 - s) : 0;
    r.w[i] = x;
  }
  return r;
}

template <int K, int W>
QMC_INLINE WideBlock<W> shift_left_fixed(const WideBlock<W>& v) {
  constexpr int q = K >> 6;
  constexpr int s = K & 63;
  WideBlock<W> r;
  for (int i = 0; i < W; ++i) {
    std::uint64_t x = i - q >= 0 ? v.w[i - q] << s : 0;
    if constexpr (s != 0) x |= i - q - 1 >= 0 ? v.w[i - q - 1] >> (64 - s) : 0;
    r.w[i] = x;
  }
  return r;
}

template <int K>
QMC_INLINE std::uint32_t shift_right_fixed(std::uint32_t v) {
  return v >> K;
}

template <int K>
QMC_INLINE std::uint32_t shift_left_fixed(std::uint32_t v) {
  return v << K;
}

// bottom_dim with the shift and mask known at compile time.
template <int H, int I, PassOp Op>
QMC_INLINE void bottom_dim_fixed(typename Layout<H>::Value& v) {
  using V = typename Layout<H>::Value;
  constexpr int k = static_cast<int>(pow3(I - 1));
  constexpr V mask = FixedMask<H, I>::value;
  V s = v & mask;
  V t = shift_right_fixed<k>(v) & mask;
  V u = shift_right_fixed<2 * k>(v) & mask;
  apply_op<Op>(s, t, u);
  v = s | shift_left_fixed<k>(t) | shift_left_fixed<2 * k>(u);
}

template <int H, PassOp Op, int... I>
QMC_INLINE void bottom_all_fixed(typename Layout<H>::Value& v, std::integer_sequence<int, I...>) {
  (bottom_dim_fixed<H, I + 1, Op>(v), ...);
}

template <int H>
struct RuntimeMasks {
  using V = typename Layout<H>::Value;
  std::array<V, H> masks{};

  explicit RuntimeMasks(const MaskTable& table) {
    for (int i = 1; i <= H; ++i) {
      const auto words = table.mask(i);
      if constexpr (std::is_same_v<V, std::uint32_t>) {
        masks[i - 1] = static_cast<std::uint32_t>(words[0]);
      } else {
        std::copy(words.begin(), words.end(), masks[i - 1].w.begin());
      }
    }
  }
};

// Bottom dimensions [first, last] (1-based) on every block in [begin, end).
template <int H, PassOp Op>
void bottom_range(typename Layout<H>::Unit* data, std::uint64_t begin, std::uint64_t end, int first, int last,
                  bool unroll, const RuntimeMasks<H>& masks) {
  using L = Layout<H>;
  const bool all = first == 1 && last == H;
  for (std::uint64_t a = begin; a < end; ++a) {
    auto* p = data + a * L::kUnits;
    auto v = L::load(p);
    if (unroll && all) {
      bottom_all_fixed<H, Op>(v, std::make_integer_sequence<int, H>{});
    } else {
      for (int i = first; i <= last; ++i) bottom_dim<Op>(v, static_cast<int>(pow3(i - 1)), masks.masks[i - 1]);
    }
    L::store(p, v);
  }
}

// MERGE then REDUCE over all bottom dimensions of each block.
template <int H>
void bottom_fused(typename Layout<H>::Unit* data, std::uint64_t begin, std::uint64_t end, bool unroll,
                  const RuntimeMasks<H>& masks) {
  using L = Layout<H>;
  for (std::uint64_t a = begin; a < end; ++a) {
    auto* p = data + a * L::kUnits;
    auto v = L::load(p);
    if (unroll) {
      bottom_all_fixed<H, PassOp::Merge>(v, std::make_integer_sequence<int, H>{});
      bottom_all_fixed<H, PassOp::Reduce>(v, std::make_integer_sequence<int, H>{});
    } else {
      for (int i = 1; i <= H; ++i) bottom_dim<PassOp::Merge>(v, static_cast<int>(pow3(i - 1)), masks.masks[i - 1]);
      for (int i = 1; i <= H; ++i) bottom_dim<PassOp::Reduce>(v, static_cast<int>(pow3(i - 1)), masks.masks[i - 1]);
    }
    L::store(p, v);
  }
}

// ---- top layer -----------------------------------------------------------

// Top dimension j over `blocks` blocks starting at data (blocks must be a
// multiple of 3^j). Triples of blocks at distance 3^(j-1) are processed
// unit by unit, so each inner loop runs over contiguous memory.
template <PassOp Op, class Unit>
void top_dim(Unit* data, std::uint64_t units_per_block, std::uint64_t blocks, int j) {
  const std::uint64_t stride = pow3(j - 1) * units_per_block;
  const std::uint64_t group = 3 * stride;
  const std::uint64_t total = blocks * units_per_block;
  for (std::uint64_t g = 0; g < total; g += group) {
    Unit* s = data + g;
    Unit* t = s + stride;
    Unit* u = t + stride;
    for (std::uint64_t k = 0; k < stride; ++k) apply_op<Op>(s[k], t[k], u[k]);
  }
}

// Top dims lo..hi (1-based) in one sweep: each tile holds 3^(hi-lo+1) runs of
// `run` consecutive blocks at stride 3^(lo-1) and stays cache resident while
// every dimension of the group is applied.
template <PassOp Op, class Unit>
void top_dims_tiled(Unit* data, std::uint64_t units_per_block, std::uint64_t blocks, int lo, int hi,
                    std::uint64_t run) {
  const std::uint64_t stride = pow3(lo - 1);
  const std::uint64_t group = pow3(hi - lo + 1);
  const std::uint64_t run_units = run * units_per_block;
  for (std::uint64_t o = 0; o < blocks; o += stride * group) {
    for (std::uint64_t c = 0; c < stride; c += run) {
      Unit* base = data + (o + c) * units_per_block;
      for (std::uint64_t step = 1; step < group; step *= 3) {
        const std::uint64_t gap = step * stride * units_per_block;
        for (std::uint64_t hi_part = 0; hi_part < group; hi_part += 3 * step) {
          for (std::uint64_t lo_part = 0; lo_part < step; ++lo_part) {
            Unit* s = base + (hi_part + lo_part) * stride * units_per_block;
            Unit* t = s + gap;
            Unit* u = t + gap;
            for (std::uint64_t k = 0; k < run_units; ++k) apply_op<Op>(s[k], t[k], u[k]);
          }
        }
      }
    }
  }
}

// Applies top dims first..last with cache tiling.
template <PassOp Op, class Unit>
void top_dims_global(Unit* data, std::uint64_t units_per_block, std::uint64_t block_bytes, std::uint64_t blocks,
                     int first, int last) {
  int lo = first;
  while (lo <= last) {
    const std::uint64_t stride = pow3(lo - 1);
    std::uint64_t run = 1;
    while (run * 3 <= stride && run * 3 * block_bytes <= kRunBytes) run *= 3;
    int hi = lo;
    while (hi < last && pow3(hi - lo + 2) * run * block_bytes <= kTileBytes) ++hi;
    top_dims_tiled<Op>(data, units_per_block, blocks, lo, hi, run);
    lo = hi + 1;
  }
}

template <int H>
typename Layout<H>::Unit* units(DenseState& state) {
  return reinterpret_cast<typename Layout<H>::Unit*>(state.data());
}

template <int H>
void top_dim_dispatch(DenseState& state, PassOp op, int j, PassStats* stats) {
  auto* data = units<H>(state);
  if (op == PassOp::Merge) {
    top_dim<PassOp::Merge>(data, Layout<H>::kUnits, state.block_count(), j);
  } else {
    top_dim<PassOp::Reduce>(data, Layout<H>::kUnits, state.block_count(), j);
  }
  if (stats != nullptr) {
    if (stats->top_triples.size() < static_cast<std::size_t>(j)) stats->top_triples.resize(static_cast<std::size_t>(j), 0);
    stats->top_triples[static_cast<std::size_t>(j - 1)] += state.block_count() / 3;
  }
}

template <int H>
void bottom_dispatch(DenseState& state, PassOp op, int first, int last, bool unroll, PassStats* stats) {
  const RuntimeMasks<H> masks{MaskTable(H)};
  auto* data = units<H>(state);
  if (op == PassOp::Merge) {
    bottom_range<H, PassOp::Merge>(data, 0, state.block_count(), first, last, unroll, masks);
  } else {
    bottom_range<H, PassOp::Reduce>(data, 0, state.block_count(), first, last, unroll, masks);
  }
  if (stats != nullptr) stats->bottom_dim_ops += state.block_count() * static_cast<std::uint64_t>(last - first + 1);
}

// ---- base conversions ----------------------------------------------------

// rank of the star-free string of a 16-bit point.
const std::vector<std::uint32_t>& binary_to_rank_table() {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<std::uint32_t> t(1u << 16);
    for (std::uint32_t x = 1; x < t.size(); ++x) {
      const int low = std::countr_zero(x);
      t[x] = t[x & (x - 1)] + static_cast<std::uint32_t>(pow3(low));
    }
    return t;
  }();
  return table;
}

Rank binary_to_rank(std::uint32_t x) {
  const auto& t = binary_to_rank_table();
  return t[x & 0xFFFFu] + static_cast<Rank>(t[x >> 16]) * pow3(16);
}

template <int H>
void fused_find(DenseState& state, bool unroll) {
  using L = Layout<H>;
  auto* data = units<H>(state);
  const int top_dims = state.num_vars() - H;
  const std::uint64_t blocks = state.block_count();

  int chunk_dims = 0;
  while (chunk_dims < top_dims && pow3(chunk_dims + 1) * state.block_bytes() <= kChunkBytes) ++chunk_dims;
  const std::uint64_t chunk_blocks = pow3(chunk_dims);
  const RuntimeMasks<H> masks{MaskTable(H)};

  // MERGE over top dims 1..J chunkwise, then J+1..n-h globally.
  for (std::uint64_t c = 0; c < blocks; c += chunk_blocks) {
    for (int j = 1; j <= chunk_dims; ++j) {
      top_dim<PassOp::Merge>(data + c * L::kUnits, L::kUnits, chunk_blocks, j);
    }
  }
  top_dims_global<PassOp::Merge>(data, L::kUnits, state.block_bytes(), blocks, chunk_dims + 1, top_dims);

  // Bottom MERGE, bottom REDUCE, then top REDUCE dims 1..J, chunkwise.
  for (std::uint64_t c = 0; c < blocks; c += chunk_blocks) {
    bottom_fused<H>(data, c, c + chunk_blocks, unroll, masks);
    for (int j = 1; j <= chunk_dims; ++j) {
      top_dim<PassOp::Reduce>(data + c * L::kUnits, L::kUnits, chunk_blocks, j);
    }
  }
  top_dims_global<PassOp::Reduce>(data, L::kUnits, state.block_bytes(), blocks, chunk_dims + 1, top_dims);
}

void check_dims(int n, int h) {
  if (n < 1 || n > kMaxVars) throw std::invalid_argument("variable count must be in [1, 31], got " + std::to_string(n));
  if (h < 1 || h > std::min(n, kMaxBottomDims)) {
    throw std::invalid_argument("bottom-layer dimension count must be in [1, min(n, 6)], got " + std::to_string(h));
  }
}

}  // namespace

std::uint64_t block_bits(int h) {
  if (h < 1 || h > kMaxBottomDims) throw std::invalid_argument("bottom-layer dimension count must be in [1, 6]");
  return block_bits_of(h);
}

std::uint64_t required_bytes(int n, int h) {
  check_dims(n, h);
  return pow3(n - h) * block_bits_of(h) / 8;
}

int default_bottom_dims(int n) {
#if defined(__AVX2__)
  constexpr int kPreferred = 5;
#else
  constexpr int kPreferred = 3;
#endif
  return std::min(n, kPreferred);
}

// ---- MaskTable -------------------------------------------------------------

MaskTable::MaskTable(int h) : h_(h) {
  const std::uint64_t bits = block_bits(h);
  words_ = static_cast<std::size_t>((bits + 63) / 64);
  data_.assign(words_ * static_cast<std::size_t>(h), 0);
  for (int i = 1; i <= h; ++i) {
    std::uint64_t* m = data_.data() + words_ * static_cast<std::size_t>(i - 1);
    for (std::uint64_t b = 0; b < pow3(h - i); ++b) {
      for (std::uint64_t c = 0; c < pow3(i - 1); ++c) {
        const std::uint64_t bit = pow3(i) * b + c;
        m[bit >> 6] |= std::uint64_t{1} << (bit & 63);
      }
    }
  }
}

std::span<const std::uint64_t> MaskTable::mask(int i) const {
  if (i < 1 || i > h_) throw std::out_of_range("mask index out of range");
  return {data_.data() + words_ * static_cast<std::size_t>(i - 1), words_};
}

bool MaskTable::test(int i, std::size_t bit) const {
  const auto m = mask(i);
  if (bit >= words_ * 64) return false;
  return (m[bit >> 6] >> (bit & 63)) & 1u;
}

std::size_t MaskTable::popcount(int i) const {
  std::size_t c = 0;
  for (auto w : mask(i)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// ---- DenseState ------------------------------------------------------------

void DenseState::Free::operator()(std::byte* p) const noexcept { ::operator delete(p, std::align_val_t{alignment}); }

DenseState::DenseState(int n, int h, std::uint64_t mem_cap) : n_(n), h_(h), data_(nullptr, Free(kAlignment)) {
  check_dims(n, h);
  blocks_ = pow3(n - h);
  block_bytes_ = block_bits_of(h) / 8;
  const std::uint64_t bytes = blocks_ * block_bytes_;
  const std::uint64_t cap = mem_cap == 0 ? memory::default_memory_cap() : mem_cap;
  if (bytes > cap) {
    throw ResourceError("dense state for n=" + std::to_string(n) + ", h=" + std::to_string(h) + " needs " +
                            std::to_string(bytes) + " bytes (" + std::to_string(blocks_) + " blocks * " +
                            std::to_string(block_bytes_ * 8) + " bits / 8), cap is " + std::to_string(cap),
                        bytes);
  }
  const std::size_t alignment = bytes >= 2 * kHugePage ? kHugePage : kAlignment;
  try {
    data_ = std::unique_ptr<std::byte[], Free>(static_cast<std::byte*>(::operator new(bytes, std::align_val_t{alignment})),
                                               Free{alignment});
  } catch (const std::bad_alloc&) {
    throw ResourceError("allocation of " + std::to_string(bytes) + " bytes for the dense state failed", bytes);
  }
#ifdef MADV_HUGEPAGE
  if (alignment == kHugePage) ::madvise(data_.get(), bytes / kHugePage * kHugePage, MADV_HUGEPAGE);
#endif
  std::memset(data_.get(), 0, bytes);
}

DenseState::DenseState(const DenseState& other) : DenseState(other.n_, other.h_, other.size_bytes()) {
  std::memcpy(data_.get(), other.data_.get(), other.size_bytes());
}

DenseState& DenseState::operator=(const DenseState& other) {
  if (this != &other) *this = DenseState(other);
  return *this;
}

bool DenseState::test(Rank r) const noexcept {
  const std::uint64_t a = r / pow3(h_);
  const std::uint64_t b = r % pow3(h_);
  return (std::to_integer<unsigned>(data_[a * block_bytes_ + b / 8]) >> (b % 8)) & 1u;
}

void DenseState::set(Rank r, bool value) noexcept {
  const std::uint64_t a = r / pow3(h_);
  const std::uint64_t b = r % pow3(h_);
  std::byte& byte = data_[a * block_bytes_ + b / 8];
  const std::byte bit{static_cast<unsigned char>(1u << (b % 8))};
  byte = value ? (byte | bit) : (byte & ~bit);
}

std::uint64_t DenseState::popcount() const noexcept {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < size_bytes(); ++i) c += static_cast<std::uint64_t>(std::popcount(std::to_integer<unsigned char>(data_[i])));
  return c;
}

bool DenseState::padding_clear() const noexcept {
  const std::uint64_t used = pow3(h_);
  const std::uint64_t bits = block_bytes_ * 8;
  for (std::uint64_t a = 0; a < blocks_; ++a) {
    const std::byte* blk = data_.get() + a * block_bytes_;
    for (std::uint64_t b = used; b < bits; ++b) {
      if ((std::to_integer<unsigned>(blk[b / 8]) >> (b % 8)) & 1u) return false;
    }
  }
  return true;
}

bool operator==(const DenseState& a, const DenseState& b) noexcept {
  return a.n_ == b.n_ && a.h_ == b.h_ && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

// ---- operations ------------------------------------------------------------

DenseState load(const TruthTable& tt, int h, std::uint64_t mem_cap) {
  DenseState state(tt.num_vars(), h, mem_cap);
  const std::uint32_t low = (1u << h) - 1;
  const std::uint64_t block_bytes = state.block_bytes();
  std::byte* data = state.data();
  const auto& words = tt.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::uint64_t w = words[i]; w != 0; w &= w - 1) {
      const auto x = static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      const Rank a = binary_to_rank(x >> h);
      const Rank b = binary_to_rank(x & low);
      data[a * block_bytes + b / 8] |= std::byte{static_cast<unsigned char>(1u << (b % 8))};
    }
  }
  return state;
}

void pass(DenseState& state, PassOp op, const PassOptions& options) {
  dispatch_h(state.bottom_dims(), [&](auto hc) {
    constexpr int H = decltype(hc)::value;
    for (int j = 1; j <= state.num_vars() - H; ++j) top_dim_dispatch<H>(state, op, j, options.stats);
    bottom_dispatch<H>(state, op, 1, H, options.unroll, options.stats);
  });
}

void apply_dimension(DenseState& state, PassOp op, int var, PassStats* stats) {
  if (var < 0 || var >= state.num_vars()) throw std::out_of_range("variable index out of range");
  dispatch_h(state.bottom_dims(), [&](auto hc) {
    constexpr int H = decltype(hc)::value;
    if (var < H) {
      bottom_dispatch<H>(state, op, var + 1, var + 1, false, stats);
    } else {
      top_dim_dispatch<H>(state, op, var - H + 1, stats);
    }
  });
}

void pass_in_order(DenseState& state, PassOp op, std::span<const int> vars) {
  std::vector<int> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted.size() != static_cast<std::size_t>(state.num_vars()) || sorted[static_cast<std::size_t>(i)] != i) {
      throw std::invalid_argument("variable order must be a permutation of 0..n-1");
    }
  }
  for (int v : vars) apply_dimension(state, op, v);
}

std::vector<TernaryString> extract(const DenseState& state) {
  assert(state.padding_clear());
  const int n = state.num_vars();
  const int h = state.bottom_dims();
  const int top = n - h;
  const std::uint64_t used = pow3(h);

  std::vector<std::uint32_t> bottom_ones(used);
  std::vector<std::uint32_t> bottom_stars(used);
  for (Rank b = 0; b < used; ++b) {
    const TernaryString s = unrank(b, h);
    bottom_ones[b] = s.ones_mask();
    bottom_stars[b] = s.star_mask();
  }

  std::vector<TernaryString> out;
  // Top-layer digits of block a, kept as an odometer.
  std::array<std::uint8_t, kMaxVars> digits{};
  std::uint32_t top_ones = 0;
  std::uint32_t top_stars = 0;
  const std::uint64_t block_bytes = state.block_bytes();
  const std::byte* data = state.data();

  for (std::uint64_t a = 0; a < state.block_count(); ++a) {
    const std::byte* blk = data + a * block_bytes;
    for (std::uint64_t off = 0; off < block_bytes; off += 8) {
      std::uint64_t word = 0;
      std::memcpy(&word, blk + off, std::min<std::uint64_t>(8, block_bytes - off));
      for (; word != 0; word &= word - 1) {
        const std::uint64_t b = off * 8 + static_cast<std::uint64_t>(std::countr_zero(word));
        out.push_back(TernaryString::from_masks(n, bottom_ones[b] | (top_ones << h), bottom_stars[b] | (top_stars << h)));
      }
    }
    for (int k = 0; k < top; ++k) {
      const std::uint32_t bit = 1u << k;
      if (digits[static_cast<std::size_t>(k)] == 0) {
        digits[static_cast<std::size_t>(k)] = 1;
        top_ones |= bit;
        break;
      }
      if (digits[static_cast<std::size_t>(k)] == 1) {
        digits[static_cast<std::size_t>(k)] = 2;
        top_ones &= ~bit;
        top_stars |= bit;
        break;
      }
      digits[static_cast<std::size_t>(k)] = 0;
      top_stars &= ~bit;
    }
  }
  return out;
}

std::vector<TernaryString> find_primes(const TruthTable& tt, const DenseOptions& options) {
  const int h = options.bottom_dims == 0 ? default_bottom_dims(tt.num_vars()) : options.bottom_dims;
  DenseState state = load(tt, h, options.mem_cap);
  if (options.fuse) {
    dispatch_h(h, [&](auto hc) { fused_find<decltype(hc)::value>(state, options.unroll); });
  } else {
    pass(state, PassOp::Merge, PassOptions{options.unroll, nullptr});
    pass(state, PassOp::Reduce, PassOptions{options.unroll, nullptr});
  }
  return extract(state);
}

}  // namespace qmc::dense
