#pragma once

// Line-oriented scenario files.
//
//   # comment
//   title Three-slit diffraction
//   histories a b c
//   amplitude a 1          (one per history)
//   block a b c            (optional, repeatable; default is a single block)
//   dmatrix 1 0 -1         (n rows of n complex entries)
//   precluded {a c}        (repeatable)
//
// Directives may appear in any order. Exactly one measure mode is allowed:
// amplitudes (with optional blocks), a decoherence matrix, or an explicit
// preclusion list.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "anhom/event_algebra.hpp"
#include "anhom/preclusion.hpp"
#include "anhom/quantal_measure.hpp"

namespace anhom {

struct AmplitudeSpec {
  std::vector<GaussianRational> amplitudes;
  /// As written; empty means one block containing every history.
  std::vector<Event> blocks;

  friend bool operator==(const AmplitudeSpec&, const AmplitudeSpec&) = default;
};

struct MatrixSpec {
  DecoherenceMatrix matrix;

  friend bool operator==(const MatrixSpec&, const MatrixSpec&) = default;
};

struct ExplicitSpec {
  std::vector<Event> precluded;

  friend bool operator==(const ExplicitSpec&, const ExplicitSpec&) = default;
};

using MeasureSpec = std::variant<AmplitudeSpec, MatrixSpec, ExplicitSpec>;

struct Scenario {
  SpacePtr space;
  MeasureSpec measure;
  std::string title;
  /// Full-line comments, text after '#', in file order.
  std::vector<std::string> comments;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return same_space(a.space, b.space) && a.measure == b.measure && a.title == b.title && a.comments == b.comments;
  }
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  std::size_t line = 0;    ///< 1-based
  std::size_t column = 0;  ///< 1-based
  std::string message;
  Severity severity = Severity::error;
};

struct ScenarioParse {
  std::optional<Scenario> scenario;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const noexcept { return scenario.has_value(); }
};

/// Never throws on malformed input; every problem found is reported.
ScenarioParse parse_scenario(std::string_view text);

/// Canonical text that parses back to an equal Scenario.
std::string render_scenario(const Scenario& scenario);

/// `name:line:column: error: message`
std::string format_diagnostic(const ParseDiagnostic& diagnostic, std::string_view source_name);

/// Decoherence matrix for the amplitude and matrix modes.
std::optional<DecoherenceMatrix> scenario_decoherence(const Scenario& scenario);
PreclusionSet scenario_preclusions(const Scenario& scenario);

}  // namespace anhom
