#pragma once

// Solvers for the three anhomomorphic schemes. Each takes the preclusion set
// of a scenario and returns the admissible coevents ("possible realities").
//
//   multiplicative  monomials F* with F inclusion-minimal among sets that no
//                   precluded event contains (minimal transversals of the
//                   complements of the precluded events)
//   linear          sums of classical coevents over supports S meeting every
//                   precluded event evenly; inclusion-minimal nonzero supports,
//                   then the unital ones
//   ideal           a minimum total-complexity set of preclusive coevents
//                   generating the ideal of all preclusive coevents; the
//                   unital generators are the admissible ones

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/preclusion.hpp"

namespace anhom {

enum class Scheme { multiplicative, linear, ideal };

std::string_view scheme_name(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view text) noexcept;

/// The ideal search enumerates all 2^(2^n) truth tables' worth of candidates.
inline constexpr std::size_t kMaxIdealSearchHistories = 4;

struct SolveDiagnostics {
  /// Candidates generated (transversals, codewords or search nodes).
  std::uint64_t examined = 0;
  std::chrono::duration<double> wall_time{};
  /// Ideal scheme: whether the unital generators alone still make every
  /// non-precluded event true somewhere.
  std::optional<bool> unital_covers_all;
};

struct SchemeResult {
  Scheme scheme = Scheme::multiplicative;
  SpacePtr space;
  /// The admissible coevents, canonically ordered and distinct.
  std::vector<Coevent> coevents;
  /// Ideal scheme only: every generating set of minimum total complexity,
  /// each canonically ordered.
  std::vector<std::vector<Coevent>> generating_sets;
  std::optional<std::size_t> total_complexity;
  /// False when several minimum generating sets exist.
  bool unique = true;
  SolveDiagnostics diagnostics;

  bool viable() const noexcept { return !coevents.empty(); }
};

/// Which nonzero linear coevents compete for minimal support.
enum class LinearMinimality {
  among_nonzero,  ///< minimize over all nonzero preclusive linear coevents, then keep unital ones
  among_unital,   ///< nonstandard: minimize over unital preclusive linear coevents only
};

SchemeResult multiplicative_scheme(const PreclusionSet& precluded);
SchemeResult linear_scheme(const PreclusionSet& precluded, LinearMinimality minimality = LinearMinimality::among_nonzero);

/// The preclusive coevents form the principal ideal generated by `g`, the
/// indicator of the non-precluded events.
struct IdealGenerator {
  Coevent g;

  bool contains(const Coevent& psi) const { return psi * g == psi; }
};

IdealGenerator ideal_generator(const PreclusionSet& precluded);

/// Throws GuardExceeded for more than kMaxIdealSearchHistories histories.
SchemeResult ideal_scheme(const PreclusionSet& precluded);

SchemeResult solve(Scheme scheme, const PreclusionSet& precluded);

/// Inclusion-minimal sets meeting every edge, canonically ordered. An empty
/// edge admits no transversal.
std::vector<Mask> minimal_transversals(std::vector<Mask> edges, std::uint64_t* examined = nullptr);

enum class Inference { always_true, always_false, contingent, vacuous };

std::string_view inference_name(Inference inference) noexcept;

struct Observation {
  Event event;
  Bit value;
};

/// Restricts the admissible coevents to those agreeing with every
/// observation and reports what the survivors say about `query`.
Inference infer(const SchemeResult& result, std::span<const Observation> given, const Event& query);

}  // namespace anhom
