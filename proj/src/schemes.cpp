#include "anhom/schemes.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <stdexcept>

namespace anhom {

std::string_view scheme_name(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::multiplicative:
      return "multiplicative";
    case Scheme::linear:
      return "linear";
    case Scheme::ideal:
      return "ideal";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view text) noexcept {
  if (text == "multiplicative") return Scheme::multiplicative;
  if (text == "linear") return Scheme::linear;
  if (text == "ideal") return Scheme::ideal;
  return std::nullopt;
}

std::string_view inference_name(Inference inference) noexcept {
  switch (inference) {
    case Inference::always_true:
      return "always-true";
    case Inference::always_false:
      return "always-false";
    case Inference::contingent:
      return "contingent";
    case Inference::vacuous:
      return "vacuous";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

// Keeps the inclusion-minimal masks; input order is irrelevant.
std::vector<Mask> inclusion_minimal(std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end(), canonical_less);
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Mask> kept;
  for (Mask m : masks) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [m](Mask k) { return (k & ~m) == 0; });
    if (!dominated) kept.push_back(m);
  }
  return kept;
}

void require_preclusive(const std::vector<Coevent>& coevents, const PreclusionSet& precluded) {
  for (const Coevent& phi : coevents) {
    if (!is_preclusive(phi, precluded)) throw std::logic_error("solver produced a non-preclusive coevent: " + render_coevent(phi));
  }
}

Coevent linear_coevent(const SpacePtr& space, Mask support_mask) {
  std::vector<Mask> atoms;
  for (Mask bits = support_mask; bits != 0; bits &= bits - 1) atoms.push_back(bits & (~bits + 1));
  return Coevent(space, std::move(atoms));
}

// Row space of the parity checks in reduced echelon form.
struct EchelonBasis {
  std::vector<Mask> rows;
  std::vector<int> pivots;  // pivot column of each row

  void insert(Mask row) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (((row >> pivots[r]) & 1U) != 0) row ^= rows[r];
    }
    if (row == 0) return;
    const int pivot = std::countr_zero(row);
    for (auto& existing : rows) {
      if (((existing >> pivot) & 1U) != 0) existing ^= row;
    }
    rows.push_back(row);
    pivots.push_back(pivot);
  }

  Mask pivot_mask() const {
    Mask m = 0;
    for (int p : pivots) m |= Mask{1} << p;
    return m;
  }
};

std::size_t rank_restricted(const std::vector<Mask>& rows, Mask columns) {
  std::vector<Mask> basis;
  for (Mask row : rows) {
    Mask v = row & columns;
    for (Mask b : basis) v = std::min(v, v ^ b);
    if (v == 0) continue;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return basis.size();
}

}  // namespace

std::vector<Mask> minimal_transversals(std::vector<Mask> edges, std::uint64_t* examined) {
  edges = inclusion_minimal(std::move(edges));
  if (!edges.empty() && edges.front() == 0) return {};
  std::vector<Mask> transversals{0};
  std::uint64_t generated = 0;
  for (Mask edge : edges) {
    std::vector<Mask> next;
    for (Mask t : transversals) {
      if ((t & edge) != 0) {
        next.push_back(t);
        continue;
      }
      for (Mask bits = edge; bits != 0; bits &= bits - 1) next.push_back(t | (bits & (~bits + 1)));
    }
    generated += next.size();
    transversals = inclusion_minimal(std::move(next));
  }
  if (examined != nullptr) *examined += generated;
  return transversals;
}

SchemeResult multiplicative_scheme(const PreclusionSet& precluded) {
  const auto start = Clock::now();
  const SpacePtr& space = precluded.space();
  SchemeResult result;
  result.scheme = Scheme::multiplicative;
  result.space = space;

  // F must meet the complement of every precluded event. The empty event is
  // always precluded, so F is nonempty.
  std::vector<Mask> edges;
  edges.reserve(precluded.size());
  for (Mask z : precluded.masks()) edges.push_back(space->full_mask() & ~z);
  for (Mask f : minimal_transversals(std::move(edges), &result.diagnostics.examined)) {
    result.coevents.push_back(monomial(Event(space, f)));
  }
  std::sort(result.coevents.begin(), result.coevents.end());
  require_preclusive(result.coevents, precluded);
  result.diagnostics.wall_time = Clock::now() - start;
  return result;
}

SchemeResult linear_scheme(const PreclusionSet& precluded, LinearMinimality minimality) {
  const auto start = Clock::now();
  const SpacePtr& space = precluded.space();
  SchemeResult result;
  result.scheme = Scheme::linear;
  result.space = space;

  // Preclusive iff |S n Z| is even for every precluded Z: S lies in the
  // null space of the parity checks given by the precluded events.
  EchelonBasis checks;
  for (Mask z : precluded.masks()) checks.insert(z);
  std::vector<Mask> null_basis;
  const Mask pivots = checks.pivot_mask();
  for (std::size_t col = 0; col < space->size(); ++col) {
    if (((pivots >> col) & 1U) != 0) continue;
    Mask v = Mask{1} << col;
    for (std::size_t r = 0; r < checks.rows.size(); ++r) {
      if (((checks.rows[r] >> col) & 1U) != 0) v |= Mask{1} << checks.pivots[r];
    }
    null_basis.push_back(v);
  }

  std::vector<Mask> chosen;
  std::vector<Mask> odd_codewords;
  Mask codeword = 0;
  const std::uint64_t count = std::uint64_t{1} << null_basis.size();
  for (std::uint64_t i = 1; i < count; ++i) {
    codeword ^= null_basis[static_cast<std::size_t>(std::countr_zero(i))];
    ++result.diagnostics.examined;
    if (minimality == LinearMinimality::among_nonzero) {
      // Codewords supported inside S form a space of dimension |S| - rank(checks on S);
      // S is minimal exactly when that dimension is one.
      const auto weight = static_cast<std::size_t>(std::popcount(codeword));
      if (weight % 2 == 1 && weight - rank_restricted(checks.rows, codeword) == 1) chosen.push_back(codeword);
    } else if (std::popcount(codeword) % 2 == 1) {
      odd_codewords.push_back(codeword);
    }
  }
  if (minimality == LinearMinimality::among_unital) chosen = inclusion_minimal(std::move(odd_codewords));

  for (Mask s : chosen) result.coevents.push_back(linear_coevent(space, s));
  std::sort(result.coevents.begin(), result.coevents.end());
  require_preclusive(result.coevents, precluded);
  result.diagnostics.wall_time = Clock::now() - start;
  return result;
}

IdealGenerator ideal_generator(const PreclusionSet& precluded) {
  const SpacePtr& space = precluded.space();
  TruthTable table(space->size());
  for (std::uint64_t a = 0; a < table.size(); ++a) table.set(static_cast<Mask>(a), Bit::one);
  for (Mask z : precluded.masks()) table.set(z, Bit::zero);
  return IdealGenerator{from_truth_table(space, table)};
}

namespace {

// Min-cost cover of the non-precluded events by true-sets of preclusive
// coevents. Events outside the preclusion set are renumbered 0..u-1 so a
// candidate coevent is just a u-bit subset ("compressed truth table").
class IdealCoverSearch {
 public:
  IdealCoverSearch(const PreclusionSet& precluded) : space_(precluded.space()) {
    const std::size_t n = space_->size();
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
      if (!precluded.contains(a)) free_events_.push_back(a);
    }
    const std::size_t u = free_events_.size();
    universe_ = u == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << u) - 1;

    weight_.assign(std::size_t{1} << u, 0);
    for (std::uint32_t c = 1; c <= universe_ && c != 0; ++c) weight_[c] = polynomial_complexity(c);

    // cheapest_[T] = least weight of a candidate containing T.
    cheapest_ = weight_;
    cheapest_[0] = 0;
    for (std::size_t bit = 0; bit < u; ++bit) {
      const std::uint32_t b = std::uint32_t{1} << bit;
      for (std::uint32_t t = 0; t <= universe_; ++t) {
        if ((t & b) == 0) cheapest_[t] = std::min(cheapest_[t], cheapest_[t | b]);
        if (t == universe_) break;
      }
    }

    // best_[R] = least total weight of candidates covering R. Any cover of R
    // induces a partition of R with one block per member, each block costing
    // at least cheapest_[block]; conversely each block can be covered at that cost.
    best_.assign(std::size_t{1} << u, 0);
    for (std::uint32_t r = 1; r <= universe_ && r != 0; ++r) {
      const std::uint32_t low = r & (~r + 1);
      const std::uint32_t rest = r ^ low;
      std::uint32_t value = std::numeric_limits<std::uint32_t>::max();
      for (std::uint32_t s = rest;; s = (s - 1) & rest) {
        const std::uint32_t block = s | low;
        value = std::min(value, cheapest_[block] + best_[r ^ block]);
        if (s == 0) break;
      }
      best_[r] = value;
    }

    for (std::uint32_t c = 1; c <= universe_ && c != 0; ++c) by_weight_.push_back(c);
    std::stable_sort(by_weight_.begin(), by_weight_.end(), [this](std::uint32_t a, std::uint32_t b) { return weight_[a] < weight_[b]; });
  }

  bool feasible() const { return !free_events_.empty(); }
  std::uint32_t optimum() const { return best_[universe_]; }

  /// Branch on the lowest uncovered event, candidates in nondecreasing
  /// weight, keeping only branches whose exact remaining-cover bound still
  /// reaches the optimum.
  std::set<std::vector<std::uint32_t>> all_optimal_covers(std::uint64_t& nodes) const {
    std::set<std::vector<std::uint32_t>> covers;
    std::vector<std::uint32_t> chosen;
    descend(universe_, chosen, covers, nodes);
    return covers;
  }

  Coevent to_coevent(std::uint32_t candidate) const {
    TruthTable table(space_->size());
    for (std::size_t i = 0; i < free_events_.size(); ++i) {
      if (((candidate >> i) & 1U) != 0) table.set(free_events_[i], Bit::one);
    }
    return from_truth_table(space_, table);
  }

 private:
  std::uint64_t expand(std::uint32_t candidate) const {
    std::uint64_t table = 0;
    for (std::size_t i = 0; i < free_events_.size(); ++i) {
      if (((candidate >> i) & 1U) != 0) table |= std::uint64_t{1} << free_events_[i];
    }
    return table;
  }

  std::uint32_t polynomial_complexity(std::uint32_t candidate) const {
    std::uint64_t coefficients = subset_transform_word(expand(candidate), space_->size());
    std::uint32_t total = 0;
    for (; coefficients != 0; coefficients &= coefficients - 1) total += static_cast<std::uint32_t>(std::popcount(static_cast<unsigned>(std::countr_zero(coefficients))));
    return total;
  }

  void descend(std::uint32_t remaining, std::vector<std::uint32_t>& chosen, std::set<std::vector<std::uint32_t>>& covers,
               std::uint64_t& nodes) const {
    ++nodes;
    if (remaining == 0) {
      std::vector<std::uint32_t> cover = chosen;
      std::sort(cover.begin(), cover.end());
      covers.insert(std::move(cover));
      return;
    }
    const std::uint32_t target = best_[remaining];
    const std::uint32_t low = remaining & (~remaining + 1);
    for (std::uint32_t c : by_weight_) {
      if (weight_[c] > target) break;
      if ((c & low) == 0) continue;
      if (weight_[c] + best_[remaining & ~c] != target) continue;
      chosen.push_back(c);
      descend(remaining & ~c, chosen, covers, nodes);
      chosen.pop_back();
    }
  }

  SpacePtr space_;
  std::vector<Mask> free_events_;
  std::uint32_t universe_ = 0;
  std::vector<std::uint32_t> weight_;
  std::vector<std::uint32_t> cheapest_;
  std::vector<std::uint32_t> best_;
  std::vector<std::uint32_t> by_weight_;
};

}  // namespace

SchemeResult ideal_scheme(const PreclusionSet& precluded) {
  const auto start = Clock::now();
  const SpacePtr& space = precluded.space();
  if (space->size() > kMaxIdealSearchHistories) {
    throw GuardExceeded("ideal scheme search is limited to " + std::to_string(kMaxIdealSearchHistories) + " histories");
  }
  SchemeResult result;
  result.scheme = Scheme::ideal;
  result.space = space;

  const IdealGenerator generator = ideal_generator(precluded);
  const IdealCoverSearch search(precluded);
  if (!search.feasible()) {
    result.diagnostics.unital_covers_all = false;
    result.diagnostics.wall_time = Clock::now() - start;
    return result;
  }

  result.total_complexity = search.optimum();
  for (const auto& cover : search.all_optimal_covers(result.diagnostics.examined)) {
    std::vector<Coevent> set;
    for (std::uint32_t c : cover) set.push_back(search.to_coevent(c));
    std::sort(set.begin(), set.end());
    result.generating_sets.push_back(std::move(set));
  }
  std::sort(result.generating_sets.begin(), result.generating_sets.end());
  result.unique = result.generating_sets.size() == 1;

  std::vector<Coevent> unital;
  for (const auto& set : result.generating_sets) {
    require_preclusive(set, precluded);
    Coevent join = Coevent::zero(space);
    std::size_t total = 0;
    for (const Coevent& phi : set) {
      join = coevent_join(join, phi);
      total += complexity(phi);
      if (is_unital(phi)) unital.push_back(phi);
    }
    if (join != generator.g) throw std::logic_error("generating set does not join to the ideal generator");
    if (total != *result.total_complexity) throw std::logic_error("generating set complexity disagrees with the optimum");
  }
  std::sort(unital.begin(), unital.end());
  unital.erase(std::unique(unital.begin(), unital.end()), unital.end());
  result.coevents = std::move(unital);

  bool covered = true;
  for (const Event& a : all_events(space)) {
    if (precluded.contains(a)) continue;
    const bool hit = std::any_of(result.coevents.begin(), result.coevents.end(), [&](const Coevent& phi) { return to_bool(evaluate(phi, a)); });
    covered = covered && hit;
  }
  result.diagnostics.unital_covers_all = covered;
  result.diagnostics.wall_time = Clock::now() - start;
  return result;
}

SchemeResult solve(Scheme scheme, const PreclusionSet& precluded) {
  switch (scheme) {
    case Scheme::multiplicative:
      return multiplicative_scheme(precluded);
    case Scheme::linear:
      return linear_scheme(precluded);
    case Scheme::ideal:
      return ideal_scheme(precluded);
  }
  throw std::invalid_argument("unknown scheme");
}

Inference infer(const SchemeResult& result, std::span<const Observation> given, const Event& query) {
  require_same_space(result.space, query.space());
  bool any_true = false;
  bool any_false = false;
  for (const Coevent& phi : result.coevents) {
    const bool consistent = std::all_of(given.begin(), given.end(), [&](const Observation& o) { return evaluate(phi, o.event) == o.value; });
    if (!consistent) continue;
    if (to_bool(evaluate(phi, query))) {
      any_true = true;
    } else {
      any_false = true;
    }
  }
  if (any_true && any_false) return Inference::contingent;
  if (any_true) return Inference::always_true;
  if (any_false) return Inference::always_false;
  return Inference::vacuous;
}

}  // namespace anhom
