#include "pairsim/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "pairsim/errors.hpp"
#include "pairsim/serialize.hpp"

namespace pairsim {

Histogram::Histogram(double lo, double hi, double width) : width_(width) {
  if (!(width > 0.0)) throw ConfigError("histogram width must be positive");
  first_index_ = static_cast<long long>(std::ceil(lo / width));
  const auto last_index = static_cast<long long>(std::floor(hi / width));
  if (last_index < first_index_) {
    throw ConfigError("histogram range contains no bin centers");
  }
  counts_.assign(static_cast<size_t>(last_index - first_index_ + 1), 0);
}

void Histogram::fill(double x) {
  // Bin i owns [center - width/2, center + width/2).
  const auto idx =
      static_cast<long long>(std::floor(x / width_ + 0.5)) - first_index_;
  if (idx < 0) {
    ++underflow_;
  } else if (idx >= static_cast<long long>(counts_.size())) {
    ++overflow_;
  } else {
    ++counts_[static_cast<size_t>(idx)];
  }
}

void Histogram::merge(const Histogram& other) {
  if (other.first_index_ != first_index_ || other.width_ != width_ ||
      other.counts_.size() != counts_.size()) {
    throw DataError("cannot merge histograms with different binning");
  }
  for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
}

std::uint64_t Histogram::total_in_range() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

double Histogram::argmax_center() const {
  if (total_in_range() == 0) {
    throw EmptySampleError("histogram is empty; no peak to locate");
  }
  const auto it = std::max_element(counts_.begin(), counts_.end());
  return center(static_cast<int>(it - counts_.begin()));
}

void Histogram::write_csv(std::ostream& os, const char* quantity) const {
  os << "# histogram v1 quantity=" << quantity
     << " width=" << format_double(width_)
     << " underflow=" << underflow_ << " overflow=" << overflow_ << "\n";
  os << "bin_center,count\n";
  for (int i = 0; i < n_bins(); ++i) {
    os << format_double(center(i)) << "," << count(i) << "\n";
  }
}

}  // namespace pairsim
