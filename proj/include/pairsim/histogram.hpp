#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace pairsim {

// Fixed-width 1D histogram whose bin CENTERS sit on multiples of the width.
// Quantized inputs (TDC times, MeV-scale peaks at integer positions) then
// fall mid-bin instead of on an edge, so peak-finding does not depend on
// floating-point edge ties.
class Histogram {
 public:
  // Covers every multiple of `width` in [lo, hi]. Throws ConfigError on a
  // non-positive width or an empty range.
  Histogram(double lo, double hi, double width);

  void fill(double x);
  void merge(const Histogram& other);  // same shape required

  int n_bins() const { return static_cast<int>(counts_.size()); }
  double width() const { return width_; }
  double center(int i) const { return (first_index_ + i) * width_; }
  std::uint64_t count(int i) const { return counts_[static_cast<size_t>(i)]; }
  std::uint64_t underflow() const { return underflow_; }
  std::uint64_t overflow() const { return overflow_; }
  std::uint64_t total_in_range() const;

  // Center of the most populated bin; the lowest wins a tie. Throws
  // EmptySampleError when nothing is in range.
  double argmax_center() const;

  // Two comment lines (schema tag, column names) then center,count rows.
  void write_csv(std::ostream& os, const char* quantity) const;

 private:
  long long first_index_;  // center of bin 0 is first_index_ * width_
  double width_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

}  // namespace pairsim
