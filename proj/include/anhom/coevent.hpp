#pragma once

// Coevents are maps from the event algebra to Z2. Every such map is a unique
// multilinear polynomial over Z2 in the classical coevents g* (g* answers "is
// history g in A?"). A Coevent stores that polynomial canonically as the set
// of its monomials; monomial F stands for the product of g* over g in F, and
// the empty monomial is the constant 1.

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "anhom/event_algebra.hpp"
#include "anhom/preclusion.hpp"

namespace anhom {

/// Truth value in Z2.
enum class Bit : std::uint8_t { zero = 0, one = 1 };

constexpr Bit to_bit(bool value) noexcept { return value ? Bit::one : Bit::zero; }
constexpr bool to_bool(Bit bit) noexcept { return bit == Bit::one; }
constexpr Bit operator^(Bit a, Bit b) noexcept { return to_bit(a != b); }
constexpr Bit operator&(Bit a, Bit b) noexcept { return to_bit(to_bool(a) && to_bool(b)); }

/// Operations that need a full truth table refuse larger spaces.
inline constexpr std::size_t kMaxTruthTableHistories = 16;

/// Dense truth table of a coevent: one bit per event, indexed by event mask.
class TruthTable {
 public:
  /// All-zero table. Throws GuardExceeded above kMaxTruthTableHistories.
  explicit TruthTable(std::size_t histories);

  std::size_t histories() const noexcept { return histories_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << histories_; }

  Bit get(Mask event) const noexcept { return to_bit(((words_[event >> 6] >> (event & 63U)) & 1U) != 0); }
  void set(Mask event, Bit value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (event & 63U);
    if (to_bool(value)) {
      words_[event >> 6] |= bit;
    } else {
      words_[event >> 6] &= ~bit;
    }
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t histories_;
  std::vector<std::uint64_t> words_;
};

/// In-place Z2 subset-lattice transform: entry F becomes the XOR of entries
/// G over all G subset of F. It is its own inverse, so it maps truth tables
/// to coefficient tables and back.
void subset_transform(TruthTable& table);

/// Same transform on a single packed word holding a table for n <= 6.
std::uint64_t subset_transform_word(std::uint64_t table, std::size_t histories) noexcept;

class Coevent {
 public:
  /// Normalizes the monomial list: repeated monomials cancel in pairs and the
  /// survivors are sorted canonically.
  Coevent(SpacePtr space, std::vector<Mask> monomials);

  static Coevent zero(SpacePtr space) { return Coevent(std::move(space), {}); }
  static Coevent one(SpacePtr space) { return Coevent(std::move(space), {Mask{0}}); }

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<Mask>& monomials() const noexcept { return monomials_; }
  bool is_zero() const noexcept { return monomials_.empty(); }

  /// Value on the event with the given member mask.
  Bit at(Mask event) const noexcept;

  friend bool operator==(const Coevent& a, const Coevent& b) {
    return a.monomials_ == b.monomials_ && same_space(a.space_, b.space_);
  }
  /// Canonical order: lexicographic over the canonically sorted monomials.
  friend std::weak_ordering operator<=>(const Coevent& a, const Coevent& b);

 private:
  SpacePtr space_;
  std::vector<Mask> monomials_;
};

/// g* for an atom g. Throws std::invalid_argument for non-atoms.
Coevent classical(const Event& atom);
/// F* = product of g* over g in F; the empty event gives the constant 1.
Coevent monomial(const Event& support);

Bit evaluate(const Coevent& phi, const Event& event);

TruthTable truth_table(const Coevent& phi);
Coevent from_truth_table(SpacePtr space, const TruthTable& table);
Coevent from_truth_table(SpacePtr space, const std::function<Bit(const Event&)>& mapping);

Coevent coevent_add(const Coevent& a, const Coevent& b);
Coevent coevent_multiply(const Coevent& a, const Coevent& b);
/// Pointwise OR: a + b + ab.
Coevent coevent_join(const Coevent& a, const Coevent& b);

inline Coevent operator+(const Coevent& a, const Coevent& b) { return coevent_add(a, b); }
inline Coevent operator*(const Coevent& a, const Coevent& b) { return coevent_multiply(a, b); }

/// Union of the monomials of the canonical polynomial.
Event support(const Coevent& phi);
/// Sum of the monomial degrees.
std::size_t complexity(const Coevent& phi);

bool is_unital(const Coevent& phi);
/// Zero, or a sum of distinct classical coevents.
bool is_linear(const Coevent& phi);
/// Zero, the constant 1, or a single monomial.
bool is_multiplicative(const Coevent& phi);
/// Exactly one classical coevent g*.
bool is_homomorphism(const Coevent& phi);
bool is_preclusive(const Coevent& phi, const PreclusionSet& precluded);

/// Grammar: `poly := "0" | term ("+" term)*`, `term := "1" | (label "*")+`.
/// Whitespace between tokens is ignored. Throws ParseError.
Coevent parse_coevent(std::string_view text, const SpacePtr& space);
/// Monomials in canonical order joined by '+', e.g. `a*+b*+c*`, `a*b*`, `0`.
std::string render_coevent(const Coevent& phi);

}  // namespace anhom
