#pragma once

#include <bit>
#include <cstdint>

namespace pommer {

inline constexpr int kBoardSize = 11;
inline constexpr int kCellCount = kBoardSize * kBoardSize;

struct Pos {
  int row = 0;
  int col = 0;

  friend constexpr bool operator==(Pos, Pos) = default;
  constexpr int index() const { return row * kBoardSize + col; }
  static constexpr Pos from_index(int i) { return {i / kBoardSize, i % kBoardSize}; }
};

constexpr bool in_bounds(Pos p) {
  return p.row >= 0 && p.row < kBoardSize && p.col >= 0 && p.col < kBoardSize;
}

constexpr int manhattan(Pos a, Pos b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr + dc;
}

constexpr int chebyshev(Pos a, Pos b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}

namespace detail {

constexpr unsigned __int128 full_mask() {
  unsigned __int128 w = 0;
  for (int i = 0; i < kCellCount; ++i) w |= static_cast<unsigned __int128>(1) << i;
  return w;
}

constexpr unsigned __int128 column_mask(int col) {
  unsigned __int128 w = 0;
  for (int r = 0; r < kBoardSize; ++r)
    w |= static_cast<unsigned __int128>(1) << (r * kBoardSize + col);
  return w;
}

}  // namespace detail

// One bit per cell, row-major. Bits 121..127 are always zero.
class BitBoard {
 public:
  using Word = unsigned __int128;

  constexpr BitBoard() = default;

  static constexpr BitBoard full() { return BitBoard(kFullMask); }
  static constexpr BitBoard single(Pos p) { return BitBoard(Word{1} << p.index()); }

  constexpr bool test(Pos p) const { return (bits_ >> p.index()) & 1; }
  constexpr bool test(int index) const { return (bits_ >> index) & 1; }
  constexpr void set(Pos p) { bits_ |= Word{1} << p.index(); }
  constexpr void set(int index) { bits_ |= Word{1} << index; }
  constexpr void reset(Pos p) { bits_ &= ~(Word{1} << p.index()); }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool any() const { return bits_ != 0; }
  int count() const {
    return std::popcount(static_cast<std::uint64_t>(bits_)) +
           std::popcount(static_cast<std::uint64_t>(bits_ >> 64));
  }

  // Cells one orthogonal step away from any set cell (not including the set itself).
  constexpr BitBoard neighbors() const {
    const Word up = bits_ >> kBoardSize;
    const Word down = (bits_ << kBoardSize) & kFullMask;
    const Word left = (bits_ >> 1) & ~kLastColumn;
    const Word right = (bits_ << 1) & ~kFirstColumn & kFullMask;
    return BitBoard(up | down | left | right);
  }

  // Set cells plus their orthogonal neighbours.
  constexpr BitBoard dilate() const { return BitBoard(bits_ | neighbors().bits_); }

  template <typename F>
  void for_each(F&& f) const {
    Word w = bits_;
    while (w != 0) {
      const auto lo = static_cast<std::uint64_t>(w);
      const int idx = lo != 0 ? std::countr_zero(lo)
                              : 64 + std::countr_zero(static_cast<std::uint64_t>(w >> 64));
      f(Pos::from_index(idx));
      w &= w - 1;
    }
  }

  constexpr BitBoard operator|(BitBoard o) const { return BitBoard(bits_ | o.bits_); }
  constexpr BitBoard operator&(BitBoard o) const { return BitBoard(bits_ & o.bits_); }
  constexpr BitBoard operator~() const { return BitBoard(~bits_ & kFullMask); }
  constexpr BitBoard& operator|=(BitBoard o) { bits_ |= o.bits_; return *this; }
  constexpr BitBoard& operator&=(BitBoard o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(BitBoard, BitBoard) = default;

  // A is a subset of B.
  constexpr bool subset_of(BitBoard o) const { return (bits_ & ~o.bits_) == 0; }

 private:
  constexpr explicit BitBoard(Word w) : bits_(w) {}

  static constexpr Word kFullMask = detail::full_mask();
  static constexpr Word kFirstColumn = detail::column_mask(0);
  static constexpr Word kLastColumn = detail::column_mask(kBoardSize - 1);

  Word bits_ = 0;
};

}  // namespace pommer
