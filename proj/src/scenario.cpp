#include "anhom/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace anhom {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct DirectiveLine {
  std::size_t line;
  std::string name;
  std::size_t name_column;
  std::vector<Token> args;
  std::string rest;  // raw text after the directive, comment stripped
  std::size_t rest_column;
};

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view text, std::size_t first_column) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_blank(text[i])) ++i;
    if (i >= text.size()) break;
    const std::size_t start = i;
    while (i < text.size() && !is_blank(text[i])) ++i;
    tokens.push_back({std::string(text.substr(start, i - start)), first_column + start});
  }
  return tokens;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

class ScenarioParser {
 public:
  explicit ScenarioParser(std::string_view text) : text_(text) {}

  ScenarioParse run() {
    split_lines();
    build_space();
    for (const auto& d : directives_) handle(d);
    check_modes();
    ScenarioParse out;
    const bool failed = std::any_of(diagnostics_.begin(), diagnostics_.end(), [](const ParseDiagnostic& d) { return d.severity == Severity::error; });
    if (!failed) out.scenario = assemble();
    std::stable_sort(diagnostics_.begin(), diagnostics_.end(), [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
      return a.line != b.line ? a.line < b.line : a.column < b.column;
    });
    out.diagnostics = std::move(diagnostics_);
    return out;
  }

 private:
  void error(std::size_t line, std::size_t column, std::string message) {
    diagnostics_.push_back({line, column, std::move(message), Severity::error});
  }

  void split_lines() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      scan_line(line_no, line);
      if (end == text_.size()) break;
      pos = end + 1;
    }
  }

  void scan_line(std::size_t line_no, std::string_view line) {
    std::size_t first = 0;
    while (first < line.size() && is_blank(line[first])) ++first;
    if (first == line.size()) return;
    if (line[first] == '#') {
      comments_.emplace_back(line.substr(first + 1));
      return;
    }
    std::string cleaned(line);
    for (std::size_t k = 0; k < cleaned.size(); ++k) {
      if (static_cast<unsigned char>(cleaned[k]) < 0x20 && cleaned[k] != '\t') {
        error(line_no, k + 1, "control character in input");
        cleaned[k] = ' ';
      }
    }
    line = cleaned;
    std::size_t name_end = first;
    while (name_end < line.size() && !is_blank(line[name_end])) ++name_end;
    DirectiveLine d;
    d.line = line_no;
    d.name = std::string(line.substr(first, name_end - first));
    d.name_column = first + 1;
    std::string_view rest = line.substr(name_end);
    if (d.name != "title") {
      const std::size_t hash = rest.find('#');
      if (hash != std::string_view::npos) rest = rest.substr(0, hash);
    }
    d.rest_column = name_end + 1;
    d.args = tokenize(rest, d.rest_column);
    d.rest = std::string(rest);
    directives_.push_back(std::move(d));
  }

  void build_space() {
    const DirectiveLine* histories = nullptr;
    for (const auto& d : directives_) {
      if (d.name != "histories") continue;
      if (histories != nullptr) {
        error(d.line, d.name_column, "duplicate 'histories' directive (first given on line " + std::to_string(histories->line) + ")");
        continue;
      }
      histories = &d;
    }
    if (histories == nullptr) {
      error(1, 1, "missing 'histories' directive");
      return;
    }
    histories_line_ = histories->line;
    if (histories->args.empty()) {
      error(histories->line, histories->name_column, "'histories' needs at least one label");
      return;
    }
    bool good = true;
    std::set<std::string> seen;
    std::vector<std::string> labels;
    for (const auto& t : histories->args) {
      if (!is_valid_label(t.text)) {
        error(histories->line, t.column, "invalid history label '" + t.text + "'");
        good = false;
      } else if (!seen.insert(t.text).second) {
        error(histories->line, t.column, "duplicate history label '" + t.text + "'");
        good = false;
      }
      labels.push_back(t.text);
    }
    if (labels.size() > kMaxHistories) {
      error(histories->line, histories->name_column,
            "too many histories (" + std::to_string(labels.size()) + "); the limit is " + std::to_string(kMaxHistories));
      good = false;
    }
    if (good) space_ = make_sample_space(std::move(labels));
  }

  std::optional<std::size_t> resolve(const DirectiveLine& d, const Token& t) {
    if (!space_) return std::nullopt;
    auto index = space_->index_of(t.text);
    if (!index) error(d.line, t.column, "unknown history label '" + t.text + "'");
    return index;
  }

  std::optional<GaussianRational> number(const DirectiveLine& d, const Token& t) {
    try {
      return parse_complex(t.text);
    } catch (const ParseError& e) {
      error(d.line, t.column + e.column() - 1, "malformed number '" + t.text + "': " + e.detail());
      return std::nullopt;
    }
  }

  void note_mode(char mode, const DirectiveLine& d) {
    if (!mode_lines_.contains(mode)) mode_lines_[mode] = d.line;
  }

  void handle(const DirectiveLine& d) {
    if (d.name == "histories") return;
    if (d.name == "title") {
      if (title_line_ != 0) {
        error(d.line, d.name_column, "duplicate 'title' directive (first given on line " + std::to_string(title_line_) + ")");
        return;
      }
      title_line_ = d.line;
      title_ = std::string(trim(d.rest));
      return;
    }
    if (d.name == "amplitude") {
      note_mode('A', d);
      if (d.args.size() != 2) {
        error(d.line, d.name_column, "'amplitude' takes a label and a number");
        if (!d.args.empty() && space_) {
          if (auto index = space_->index_of(d.args[0].text)) attempted_.insert(*index);
        }
        return;
      }
      const auto index = resolve(d, d.args[0]);
      if (index) attempted_.insert(*index);
      const auto value = number(d, d.args[1]);
      if (!index || !value) return;
      if (amplitudes_.contains(*index)) {
        error(d.line, d.args[0].column, "second amplitude for '" + d.args[0].text + "'");
        return;
      }
      amplitudes_[*index] = *value;
      return;
    }
    if (d.name == "block") {
      note_mode('A', d);
      if (d.args.empty()) {
        error(d.line, d.name_column, "'block' needs at least one label");
        return;
      }
      Mask block = 0;
      bool good = true;
      for (const auto& t : d.args) {
        const auto index = resolve(d, t);
        if (!index) {
          good = false;
          continue;
        }
        const Mask bit = Mask{1} << *index;
        if ((block & bit) != 0 || (blocked_ & bit) != 0) {
          error(d.line, t.column, "history '" + t.text + "' already belongs to a block");
          good = false;
          continue;
        }
        block |= bit;
      }
      blocked_ |= block;
      if (good && space_) blocks_.emplace_back(space_, block);
      return;
    }
    if (d.name == "dmatrix") {
      note_mode('B', d);
      std::vector<GaussianRational> row;
      bool good = true;
      for (const auto& t : d.args) {
        auto value = number(d, t);
        if (!value) {
          good = false;
          continue;
        }
        row.push_back(*value);
      }
      if (space_ && d.args.size() != space_->size()) {
        error(d.line, d.name_column, "'dmatrix' row has " + std::to_string(d.args.size()) + " entries; expected " + std::to_string(space_->size()));
        good = false;
      }
      rows_.push_back({d.line, good ? std::move(row) : std::vector<GaussianRational>{}, d.args});
      if (!good) matrix_ok_ = false;
      return;
    }
    if (d.name == "precluded") {
      note_mode('C', d);
      if (!space_) return;
      try {
        precluded_.push_back(parse_event(d.rest, space_));
      } catch (const ParseError& e) {
        error(d.line, d.rest_column + e.column() - 1, "malformed event: " + e.detail());
      }
      return;
    }
    error(d.line, d.name_column, "unknown directive '" + d.name + "'");
  }

  void check_modes() {
    if (mode_lines_.size() > 1) {
      std::vector<std::pair<std::size_t, char>> order;
      for (const auto& [mode, line] : mode_lines_) order.emplace_back(line, mode);
      std::sort(order.begin(), order.end());
      auto mode_name = [](char m) {
        return m == 'A' ? std::string("amplitude/block") : m == 'B' ? std::string("dmatrix") : std::string("precluded");
      };
      for (std::size_t k = 1; k < order.size(); ++k) {
        error(order[k].first, 1,
              "mode conflict: '" + mode_name(order[k].second) + "' cannot be combined with '" + mode_name(order[0].second) +
                  "' (line " + std::to_string(order[0].first) + ")");
      }
      return;
    }
    if (mode_lines_.empty()) {
      error(histories_line_ == 0 ? 1 : histories_line_, 1, "no measure given: use 'amplitude', 'dmatrix' or 'precluded' lines");
      return;
    }
    if (!space_) return;
    const std::size_t n = space_->size();
    if (mode_lines_.contains('A')) {
      std::string missing;
      for (std::size_t i = 0; i < n; ++i) {
        if (!attempted_.contains(i)) missing += (missing.empty() ? "" : " ") + space_->label(i);
      }
      if (!missing.empty()) error(histories_line_, 1, "missing amplitude for: " + missing);
      if (!blocks_.empty() && blocked_ != space_->full_mask()) {
        error(mode_lines_['A'], 1, "blocks do not cover every history: " + render_mask(*space_, space_->full_mask() & ~blocked_));
      }
    }
    if (mode_lines_.contains('B')) check_matrix();
  }

  void check_matrix() {
    const std::size_t n = space_->size();
    if (rows_.size() != n) {
      error(rows_.empty() ? 1 : rows_.back().line, 1, "'dmatrix' needs " + std::to_string(n) + " rows; found " + std::to_string(rows_.size()));
      matrix_ok_ = false;
    }
    if (!matrix_ok_) return;
    for (std::size_t i = 0; i < n; ++i) {
      const GaussianRational& diag = rows_[i].values[i];
      if (!diag.is_real() || diag.re < 0) {
        error(rows_[i].line, rows_[i].tokens[i].column, "diagonal entry must be real and non-negative");
        matrix_ok_ = false;
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rows_[i].values[j] != conj(rows_[j].values[i])) {
          error(rows_[j].line, rows_[j].tokens[i].column,
                "matrix is not Hermitian: entry (" + space_->label(j) + "," + space_->label(i) + ") must be the conjugate of (" +
                    space_->label(i) + "," + space_->label(j) + ")");
          matrix_ok_ = false;
        }
      }
    }
  }

  Scenario assemble() {
    Scenario s;
    s.space = space_;
    s.title = title_;
    s.comments = comments_;
    if (mode_lines_.contains('A')) {
      AmplitudeSpec amplitude_spec;
      for (std::size_t i = 0; i < space_->size(); ++i) amplitude_spec.amplitudes.push_back(amplitudes_.at(i));
      amplitude_spec.blocks = blocks_;
      s.measure = std::move(amplitude_spec);
    } else if (mode_lines_.contains('B')) {
      std::vector<GaussianRational> entries;
      for (const auto& r : rows_) entries.insert(entries.end(), r.values.begin(), r.values.end());
      s.measure = MatrixSpec{DecoherenceMatrix(space_, std::move(entries))};
    } else {
      s.measure = ExplicitSpec{precluded_};
    }
    return s;
  }

  struct MatrixRow {
    std::size_t line;
    std::vector<GaussianRational> values;
    std::vector<Token> tokens;
  };

  std::string_view text_;
  std::vector<DirectiveLine> directives_;
  std::vector<ParseDiagnostic> diagnostics_;
  std::vector<std::string> comments_;
  SpacePtr space_;
  std::size_t histories_line_ = 0;
  std::size_t title_line_ = 0;
  std::string title_;
  std::map<char, std::size_t> mode_lines_;
  std::map<std::size_t, GaussianRational> amplitudes_;
  std::set<std::size_t> attempted_;
  std::vector<Event> blocks_;
  Mask blocked_ = 0;
  std::vector<MatrixRow> rows_;
  bool matrix_ok_ = true;
  std::vector<Event> precluded_;
};

}  // namespace

ScenarioParse parse_scenario(std::string_view text) {
  try {
    return ScenarioParser(text).run();
  } catch (const std::exception& e) {
    // Unreachable after validation.
    ScenarioParse out;
    out.diagnostics.push_back({1, 1, std::string("internal error: ") + e.what(), Severity::error});
    return out;
  }
}

std::string render_scenario(const Scenario& scenario) {
  std::ostringstream out;
  for (const auto& c : scenario.comments) out << '#' << c << '\n';
  if (!scenario.title.empty()) out << "title " << scenario.title << '\n';
  const SampleSpace& space = *scenario.space;
  out << "histories";
  for (const auto& label : space.labels()) out << ' ' << label;
  out << '\n';
  if (const auto* a = std::get_if<AmplitudeSpec>(&scenario.measure)) {
    for (std::size_t i = 0; i < space.size(); ++i) out << "amplitude " << space.label(i) << ' ' << format_complex(a->amplitudes[i]) << '\n';
    for (const Event& block : a->blocks) {
      out << "block";
      for (std::size_t i = 0; i < space.size(); ++i) {
        if (block.contains(i)) out << ' ' << space.label(i);
      }
      out << '\n';
    }
  } else if (const auto* m = std::get_if<MatrixSpec>(&scenario.measure)) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      out << "dmatrix";
      for (std::size_t j = 0; j < space.size(); ++j) out << ' ' << format_complex(m->matrix(i, j));
      out << '\n';
    }
  } else {
    for (const Event& e : std::get<ExplicitSpec>(scenario.measure).precluded) out << "precluded " << render_event(e) << '\n';
  }
  return out.str();
}

std::string format_diagnostic(const ParseDiagnostic& diagnostic, std::string_view source_name) {
  return std::string(source_name) + ":" + std::to_string(diagnostic.line) + ":" + std::to_string(diagnostic.column) + ": " +
         (diagnostic.severity == Severity::error ? "error" : "warning") + ": " + diagnostic.message;
}

std::optional<DecoherenceMatrix> scenario_decoherence(const Scenario& scenario) {
  if (const auto* a = std::get_if<AmplitudeSpec>(&scenario.measure)) {
    return decoherence_from_amplitudes(scenario.space, a->amplitudes, a->blocks);
  }
  if (const auto* m = std::get_if<MatrixSpec>(&scenario.measure)) return m->matrix;
  return std::nullopt;
}

PreclusionSet scenario_preclusions(const Scenario& scenario) {
  if (auto d = scenario_decoherence(scenario)) return preclusions(*d);
  return explicit_preclusions(scenario.space, std::get<ExplicitSpec>(scenario.measure).precluded);
}

}  // namespace anhom
