#pragma once

#include <string>

#include "anhom/schemes.hpp"

namespace anhom {

enum class Format { text, json };

struct RenderOptions {
  Format format = Format::text;
  /// Wall time makes output nondeterministic, so it is opt-in.
  bool include_timing = false;
};

/// Text: one admissible coevent per line as `poly  unital=yes  complexity=k`,
/// or `no viable coevent`; the ideal scheme appends its generating sets.
/// JSON keys, in order: scheme, viable, coevents, generating_set,
/// generating_sets, total_complexity, unique, diagnostics.
std::string render_result(const SchemeResult& result, const RenderOptions& options = {});

}  // namespace anhom
