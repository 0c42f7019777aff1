#pragma once

// Brute-force reference answers over the whole coevent space. Everything here
// works on truth tables packed into integers (bit A of the table is the value
// on event A) and shares nothing with the solvers except the Coevent type.

#include <cstdint>
#include <optional>
#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/preclusion.hpp"

namespace anhom::oracle {

/// Full coevent-space enumeration is limited to 2^(2^4) = 65536 coevents.
inline constexpr std::size_t kMaxEnumerationHistories = 4;
/// Ideal closure and minimum-cover search are limited to n = 3.
inline constexpr std::size_t kMaxClosureHistories = 3;

using PackedTable = std::uint64_t;

/// Every coevent exactly once, in ascending truth-table order.
class CoeventEnumeration {
 public:
  explicit CoeventEnumeration(SpacePtr space);

  std::uint64_t count() const noexcept { return std::uint64_t{1} << space_->event_count(); }
  /// Next coevent, or nullopt after the last one.
  std::optional<Coevent> next();
  std::uint64_t position() const noexcept { return position_; }

 private:
  SpacePtr space_;
  std::uint64_t position_ = 0;
};

CoeventEnumeration enumerate_coevents(const SpacePtr& space);

PackedTable pack(const Coevent& phi);
/// Polynomial of a packed table by direct Moebius sums over each subset, in
/// ascending mask order.
std::vector<Mask> naive_monomials(PackedTable table, std::size_t histories);
std::size_t naive_complexity(PackedTable table, std::size_t histories);

/// Definitional checks over all event pairs.
bool pairwise_multiplicative(PackedTable table, std::size_t histories);
bool pairwise_linear(PackedTable table, std::size_t histories);

std::vector<Coevent> brute_multiplicative(const PreclusionSet& precluded);
std::vector<Coevent> brute_linear(const PreclusionSet& precluded);

/// Smallest set containing `generators` closed under sums and under products
/// with arbitrary coevents. Canonically ordered.
std::vector<Coevent> brute_ideal_closure(const SpacePtr& space, const std::vector<Coevent>& generators);

struct MinCover {
  bool feasible = false;
  std::size_t total_complexity = 0;
  /// Every minimum-complexity generating set, each canonically ordered.
  std::vector<std::vector<Coevent>> sets;
};

MinCover brute_min_cover(const PreclusionSet& precluded);

}  // namespace anhom::oracle
