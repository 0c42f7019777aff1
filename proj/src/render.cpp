#include "anhom/render.hpp"

#include <json.hpp>

#include <sstream>

namespace anhom {

namespace {

std::string coevent_line(const Coevent& phi) {
  return render_coevent(phi) + "  unital=" + (is_unital(phi) ? "yes" : "no") + "  complexity=" + std::to_string(complexity(phi));
}

nlohmann::ordered_json generator_json(const std::vector<Coevent>& set) {
  auto out = nlohmann::ordered_json::array();
  for (const Coevent& phi : set) {
    nlohmann::ordered_json entry;
    entry["polynomial"] = render_coevent(phi);
    entry["unital"] = is_unital(phi);
    entry["complexity"] = complexity(phi);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string render_json(const SchemeResult& result, const RenderOptions& options) {
  nlohmann::ordered_json doc;
  doc["scheme"] = std::string(scheme_name(result.scheme));
  doc["viable"] = result.viable();
  doc["coevents"] = nlohmann::ordered_json::array();
  for (const Coevent& phi : result.coevents) doc["coevents"].push_back(render_coevent(phi));
  if (result.scheme == Scheme::ideal) {
    doc["generating_set"] = result.generating_sets.empty() ? nlohmann::ordered_json::array() : generator_json(result.generating_sets.front());
    doc["generating_sets"] = nlohmann::ordered_json::array();
    for (const auto& set : result.generating_sets) doc["generating_sets"].push_back(generator_json(set));
  }
  if (result.total_complexity) {
    doc["total_complexity"] = *result.total_complexity;
  } else {
    doc["total_complexity"] = nullptr;
  }
  doc["unique"] = result.unique;
  nlohmann::ordered_json diagnostics;
  diagnostics["examined"] = result.diagnostics.examined;
  if (result.diagnostics.unital_covers_all) diagnostics["unital_covers_all"] = *result.diagnostics.unital_covers_all;
  if (options.include_timing) diagnostics["wall_time_ms"] = result.diagnostics.wall_time.count() * 1000.0;
  doc["diagnostics"] = std::move(diagnostics);
  return doc.dump(2) + "\n";
}

std::string render_text(const SchemeResult& result, const RenderOptions& options) {
  std::ostringstream out;
  if (!result.viable()) out << "no viable coevent\n";
  for (const Coevent& phi : result.coevents) out << coevent_line(phi) << '\n';
  if (result.scheme == Scheme::ideal) {
    if (result.generating_sets.empty()) {
      out << "generating_set none (every event is precluded)\n";
    }
    for (std::size_t k = 0; k < result.generating_sets.size(); ++k) {
      out << "generating_set";
      if (result.generating_sets.size() > 1) out << ' ' << (k + 1) << '/' << result.generating_sets.size();
      out << "  total_complexity=" << result.total_complexity.value_or(0) << "  unique=" << (result.unique ? "yes" : "no") << '\n';
      for (const Coevent& phi : result.generating_sets[k]) out << "  " << coevent_line(phi) << '\n';
    }
    if (result.diagnostics.unital_covers_all && !*result.diagnostics.unital_covers_all && result.viable()) {
      out << "note: some non-precluded event is true only under non-unital generators\n";
    }
  }
  if (options.include_timing) out << "wall_time_ms=" << result.diagnostics.wall_time.count() * 1000.0 << '\n';
  return out.str();
}

}  // namespace

std::string render_result(const SchemeResult& result, const RenderOptions& options) {
  return options.format == Format::json ? render_json(result, options) : render_text(result, options);
}

}  // namespace anhom
