#include "anhom/event_algebra.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace anhom {

namespace {

constexpr std::string_view kReserved = "{}+*#=,";

bool is_space_char(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_label_char(char c) { return !is_space_char(c) && kReserved.find(c) == std::string_view::npos; }

}  // namespace

bool is_valid_label(std::string_view label) {
  if (label.empty() || label == "0" || label == "1") return false;
  for (char c : label) {
    if (!is_label_char(c)) return false;
  }
  return true;
}

SampleSpace::SampleSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("sample space needs at least one history");
  if (labels_.size() > kMaxHistories) {
    throw GuardExceeded("sample space has " + std::to_string(labels_.size()) + " histories; the limit is " +
                        std::to_string(kMaxHistories));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (!is_valid_label(label)) throw std::invalid_argument("invalid history label '" + label + "'");
    if (!seen.insert(label).second) throw std::invalid_argument("duplicate history label '" + label + "'");
  }
}

std::optional<std::size_t> SampleSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

SpacePtr make_sample_space(std::vector<std::string> labels) {
  return std::make_shared<const SampleSpace>(std::move(labels));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) throw SpaceMismatch();
}

Event::Event(SpacePtr space, Mask members) : space_(std::move(space)), members_(members) {
  if (!space_) throw std::invalid_argument("event needs a sample space");
  if ((members_ & ~space_->full_mask()) != 0) throw std::invalid_argument("event members outside the sample space");
}

Event Event::whole(SpacePtr space) {
  const Mask full = space->full_mask();
  return Event(std::move(space), full);
}

Event Event::atom(SpacePtr space, std::size_t index) {
  if (index >= space->size()) throw std::out_of_range("history index out of range");
  return Event(std::move(space), Mask{1} << index);
}

Event Event::of(SpacePtr space, std::span<const std::string> labels) {
  Mask members = 0;
  for (const auto& label : labels) {
    const auto index = space->index_of(label);
    if (!index) throw std::invalid_argument("unknown history label '" + label + "'");
    members |= Mask{1} << *index;
  }
  return Event(std::move(space), members);
}

bool Event::subset_of(const Event& other) const {
  require_same_space(space_, other.space_);
  return (members_ & ~other.members_) == 0;
}

Event event_sum(const Event& a, const Event& b) {
  require_same_space(a.space(), b.space());
  return Event(a.space(), a.mask() ^ b.mask());
}

Event event_product(const Event& a, const Event& b) {
  require_same_space(a.space(), b.space());
  return Event(a.space(), a.mask() & b.mask());
}

Event event_union(const Event& a, const Event& b) {
  require_same_space(a.space(), b.space());
  const Mask ring_form = a.mask() ^ b.mask() ^ (a.mask() & b.mask());
  if (ring_form != (a.mask() | b.mask())) throw std::logic_error("A+B+AB disagrees with set union");
  return Event(a.space(), ring_form);
}

Event complement(const Event& a) { return Event(a.space(), a.space()->full_mask() ^ a.mask()); }

bool is_atom(const Event& a) { return a.cardinality() == 1; }

EventRange all_events(const SpacePtr& space) {
  if (space->size() > kMaxHistories) throw GuardExceeded("event enumeration limited to " + std::to_string(kMaxHistories) + " histories");
  return EventRange(space);
}

namespace {

class EventParser {
 public:
  EventParser(std::string_view text, const SampleSpace& space) : text_(text), space_(space) {}

  Mask parse() {
    skip_space();
    if (at_end()) fail("expected an event");
    Mask result = 0;
    if (peek() == '{') {
      ++pos_;
      for (;;) {
        skip_space();
        if (at_end()) fail("unterminated '{'");
        if (peek() == '}') {
          ++pos_;
          break;
        }
        const std::size_t start = pos_;
        const Mask bit = read_label();
        if ((result & bit) != 0) fail_at(start, "label listed twice");
        result |= bit;
      }
    } else {
      for (;;) {
        skip_space();
        const std::size_t start = pos_;
        const Mask bit = read_label();
        if ((result & bit) != 0) fail_at(start, "label repeated in sum; write each history once");
        result |= bit;
        skip_space();
        if (at_end()) break;
        if (peek() != '+') fail("expected '+' or end of event");
        ++pos_;
      }
    }
    skip_space();
    if (!at_end()) fail("unexpected text after event");
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && is_space_char(peek())) ++pos_;
  }

  Mask read_label() {
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(peek())) ++pos_;
    if (start == pos_) {
      if (at_end()) fail("expected a history label");
      fail(std::string("unexpected character '") + peek() + "'");
    }
    const std::string_view label = text_.substr(start, pos_ - start);
    const auto index = space_.index_of(label);
    if (!index) fail_at(start, "unknown history label '" + std::string(label) + "'");
    return Mask{1} << *index;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const { throw ParseError(pos + 1, message); }

  std::string_view text_;
  const SampleSpace& space_;
  std::size_t pos_ = 0;
};

}  // namespace

Event parse_event(std::string_view text, const SpacePtr& space) {
  return Event(space, EventParser(text, *space).parse());
}

std::string render_mask(const SampleSpace& space, Mask mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    if (!first) out += ' ';
    out += space.label(i);
    first = false;
  }
  out += '}';
  return out;
}

std::string render_event(const Event& event) { return render_mask(*event.space(), event.mask()); }

}  // namespace anhom
