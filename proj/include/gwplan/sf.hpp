#pragma once
// LoRa spreading factors and the link-cost scale derived from them.

#include <compare>
#include <stdexcept>

namespace gwplan {

class SpreadingFactor {
 public:
  static constexpr int kMin = 7;
  static constexpr int kMax = 12;

  explicit constexpr SpreadingFactor(int value) : value_(value) {
    if (value_ < kMin || value_ > kMax)
      throw std::invalid_argument("spreading factor must be in 7..12");
  }

  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(SpreadingFactor, SpreadingFactor) = default;

 private:
  int value_;
};

inline constexpr int kSfClassCount = SpreadingFactor::kMax - SpreadingFactor::kMin + 1;

// Cost of serving one station at a given SF, in units of 1/32:
// SF7 -> 1, SF8 -> 2, ..., SF12 -> 32. A link at SF s costs 1/2^(12-s),
// i.e. doubling per SF step; SF12 saturates a full unit of airtime budget.
// Integer numerators keep all capacity arithmetic exact.
inline constexpr int link_cost_num32(SpreadingFactor sf) {
  return 1 << (sf.value() - SpreadingFactor::kMin);
}

// Same cost as a double. Dyadic, hence exactly representable.
inline constexpr double link_cost(SpreadingFactor sf) {
  return static_cast<double>(link_cost_num32(sf)) / 32.0;
}

}  // namespace gwplan
