#pragma once

#include <vector>

#include "anhom/event_algebra.hpp"

namespace anhom {

enum class Provenance { derived_from_measure, explicit_list };

/// The events a dynamics forbids. Always contains the empty event.
class PreclusionSet {
 public:
  /// Normalizes: adds the empty event, drops duplicates, sorts canonically.
  PreclusionSet(SpacePtr space, std::vector<Mask> events, Provenance provenance);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<Mask>& masks() const noexcept { return events_; }
  std::vector<Event> events() const;
  Provenance provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return events_.size(); }

  bool contains(Mask event) const;
  bool contains(const Event& event) const;
  /// Everything-precluded corner: the whole space is itself precluded.
  bool precludes_everything() const { return contains(space_->full_mask()); }

  /// Same member events; provenance is ignored.
  friend bool operator==(const PreclusionSet& a, const PreclusionSet& b) {
    return a.events_ == b.events_ && same_space(a.space_, b.space_);
  }

 private:
  SpacePtr space_;
  std::vector<Mask> events_;
  Provenance provenance_;
};

}  // namespace anhom
