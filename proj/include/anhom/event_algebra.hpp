#pragma once

// Finite sample spaces and their event algebras. An event is a subset of the
// histories, stored as a bit mask in label order. The algebra is the Boolean
// ring over Z2: sum is symmetric difference, product is intersection.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anhom/error.hpp"

namespace anhom {

using Mask = std::uint32_t;

/// Upper bound on the number of histories for event-level enumeration (2^n events).
inline constexpr std::size_t kMaxHistories = 24;

/// Labels are nonempty and contain no whitespace or any of the reserved
/// characters `{ } + * # = ,`. The bare words "0" and "1" are reserved for
/// the constant coevents.
bool is_valid_label(std::string_view label);

class SampleSpace {
 public:
  explicit SampleSpace(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  Mask full_mask() const noexcept { return size() == 32 ? ~Mask{0} : (Mask{1} << size()) - 1; }
  std::uint64_t event_count() const noexcept { return std::uint64_t{1} << size(); }

  friend bool operator==(const SampleSpace& a, const SampleSpace& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

SpacePtr make_sample_space(std::vector<std::string> labels);

/// Spaces are interchangeable when they are the same object or carry the
/// same labels in the same order.
bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;

/// Throws SpaceMismatch unless `same_space(a, b)`.
void require_same_space(const SpacePtr& a, const SpacePtr& b);

/// Canonical order on masks: cardinality first, then lexicographic on the
/// sorted index lists ({a,b} < {a,c} < {b,c}).
constexpr bool canonical_less(Mask a, Mask b) noexcept {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  const Mask lowest_difference = (a ^ b) & (~(a ^ b) + 1);
  return (a & lowest_difference) != 0;
}

class Event {
 public:
  /// Throws std::invalid_argument if `members` has bits outside the space.
  Event(SpacePtr space, Mask members);

  static Event empty(SpacePtr space) { return Event(std::move(space), 0); }
  static Event whole(SpacePtr space);
  static Event atom(SpacePtr space, std::size_t index);
  static Event of(SpacePtr space, std::span<const std::string> labels);

  const SpacePtr& space() const noexcept { return space_; }
  Mask mask() const noexcept { return members_; }
  std::size_t cardinality() const noexcept { return static_cast<std::size_t>(std::popcount(members_)); }
  bool is_empty() const noexcept { return members_ == 0; }
  bool contains(std::size_t index) const noexcept { return index < 32 && ((members_ >> index) & 1U) != 0; }
  bool subset_of(const Event& other) const;

  /// Events over different spaces never compare equal.
  friend bool operator==(const Event& a, const Event& b) {
    return a.members_ == b.members_ && same_space(a.space_, b.space_);
  }

 private:
  SpacePtr space_;
  Mask members_;
};

/// Canonical ordering of events over one space.
struct EventLess {
  bool operator()(const Event& a, const Event& b) const noexcept { return canonical_less(a.mask(), b.mask()); }
};

Event event_sum(const Event& a, const Event& b);
Event event_product(const Event& a, const Event& b);
Event event_union(const Event& a, const Event& b);
Event complement(const Event& a);
bool is_atom(const Event& a);

inline Event operator+(const Event& a, const Event& b) { return event_sum(a, b); }
inline Event operator*(const Event& a, const Event& b) { return event_product(a, b); }

/// Lazily enumerates all 2^n events of a space, ordered by mask value.
class EventRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Event;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Event;

    iterator() = default;
    iterator(const SpacePtr* space, std::uint64_t position) : space_(space), position_(position) {}

    Event operator*() const { return Event(*space_, static_cast<Mask>(position_)); }
    iterator& operator++() {
      ++position_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++position_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.position_ == b.position_; }

   private:
    const SpacePtr* space_ = nullptr;
    std::uint64_t position_ = 0;
  };

  explicit EventRange(SpacePtr space) : space_(std::move(space)) {}

  iterator begin() const { return iterator(&space_, 0); }
  iterator end() const { return iterator(&space_, space_->event_count()); }
  std::uint64_t size() const { return space_->event_count(); }

 private:
  SpacePtr space_;
};

/// Throws GuardExceeded when the space has more than kMaxHistories histories.
EventRange all_events(const SpacePtr& space);

/// Accepts `{a c}`, `{}`, or the sum form `a+c` (a single label is a sum of
/// one term). Throws ParseError with a 1-based column.
Event parse_event(std::string_view text, const SpacePtr& space);

/// Brace listing with labels in space order, e.g. `{a c}`.
std::string render_event(const Event& event);
std::string render_mask(const SampleSpace& space, Mask mask);

}  // namespace anhom
