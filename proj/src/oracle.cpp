#include "anhom/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <limits>
#include <set>

namespace anhom::oracle {

namespace {

void guard(const SpacePtr& space, std::size_t limit, const char* what) {
  if (space->size() > limit) {
    throw GuardExceeded(std::string(what) + " is limited to " + std::to_string(limit) + " histories");
  }
}

bool bit(PackedTable table, Mask event) { return ((table >> event) & 1U) != 0; }

PackedTable all_ones(std::size_t histories) {
  const std::uint64_t events = std::uint64_t{1} << histories;
  return events == 64 ? ~PackedTable{0} : (PackedTable{1} << events) - 1;
}

PackedTable event_indicator(const PreclusionSet& precluded) {
  PackedTable mask = 0;
  for (Mask z : precluded.masks()) mask |= PackedTable{1} << z;
  return mask;
}

Coevent unpack(const SpacePtr& space, PackedTable table) {
  return Coevent(space, naive_monomials(table, space->size()));
}

std::vector<PackedTable> tables_where(std::size_t histories, bool (*predicate)(PackedTable, std::size_t)) {
  std::vector<PackedTable> out;
  const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << histories);
  for (PackedTable t = 0; t < count; ++t) {
    if (predicate(t, histories)) out.push_back(t);
  }
  return out;
}

// Tables passing a definitional predicate, computed once per space size.
const std::vector<PackedTable>& cached(std::size_t histories, bool linear) {
  static const auto tables = [] {
    std::array<std::array<std::vector<PackedTable>, kMaxEnumerationHistories + 1>, 2> t;
    for (std::size_t n = 0; n <= kMaxEnumerationHistories; ++n) {
      t[0][n] = tables_where(n, pairwise_multiplicative);
      t[1][n] = tables_where(n, pairwise_linear);
    }
    return t;
  }();
  return tables[linear ? 1 : 0][histories];
}

std::vector<Coevent> canonical(const SpacePtr& space, const std::vector<PackedTable>& tables) {
  std::vector<Coevent> out;
  for (PackedTable t : tables) out.push_back(unpack(space, t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CoeventEnumeration::CoeventEnumeration(SpacePtr space) : space_(std::move(space)) {
  guard(space_, kMaxEnumerationHistories, "coevent enumeration");
}

std::optional<Coevent> CoeventEnumeration::next() {
  if (position_ >= count()) return std::nullopt;
  TruthTable table(space_->size());
  for (Mask a = 0; a < space_->event_count(); ++a) table.set(a, to_bit(bit(position_, a)));
  ++position_;
  return from_truth_table(space_, table);
}

CoeventEnumeration enumerate_coevents(const SpacePtr& space) { return CoeventEnumeration(space); }

PackedTable pack(const Coevent& phi) {
  guard(phi.space(), kMaxEnumerationHistories, "packed truth tables");
  PackedTable table = 0;
  for (Mask a = 0; a < phi.space()->event_count(); ++a) {
    if (to_bool(phi.at(a))) table |= PackedTable{1} << a;
  }
  return table;
}

std::vector<Mask> naive_monomials(PackedTable table, std::size_t histories) {
  std::vector<Mask> monomials;
  const Mask events = Mask{1} << histories;
  for (Mask f = 0; f < events; ++f) {
    bool coefficient = false;
    for (Mask g = f;; g = (g - 1) & f) {
      coefficient ^= bit(table, g);
      if (g == 0) break;
    }
    if (coefficient) monomials.push_back(f);
  }
  return monomials;
}

std::size_t naive_complexity(PackedTable table, std::size_t histories) {
  std::size_t total = 0;
  for (Mask f : naive_monomials(table, histories)) total += static_cast<std::size_t>(std::popcount(f));
  return total;
}

bool pairwise_multiplicative(PackedTable table, std::size_t histories) {
  const Mask events = Mask{1} << histories;
  for (Mask a = 0; a < events; ++a) {
    for (Mask b = 0; b < events; ++b) {
      if (bit(table, a & b) != (bit(table, a) && bit(table, b))) return false;
    }
  }
  return true;
}

bool pairwise_linear(PackedTable table, std::size_t histories) {
  const Mask events = Mask{1} << histories;
  for (Mask a = 0; a < events; ++a) {
    for (Mask b = 0; b < events; ++b) {
      if (bit(table, a ^ b) != (bit(table, a) != bit(table, b))) return false;
    }
  }
  return true;
}

std::vector<Coevent> brute_multiplicative(const PreclusionSet& precluded) {
  const SpacePtr& space = precluded.space();
  guard(space, kMaxEnumerationHistories, "brute multiplicative search");
  const std::size_t n = space->size();
  const PackedTable forbidden = event_indicator(precluded);
  std::vector<PackedTable> viable;
  for (PackedTable t : cached(n, false)) {
    if (t == 0 || t == all_ones(n)) continue;
    if ((t & forbidden) != 0) continue;
    viable.push_back(t);
  }
  // Smaller support means a larger filter of true events.
  std::vector<PackedTable> minimal;
  for (PackedTable t : viable) {
    const bool beaten = std::any_of(viable.begin(), viable.end(), [t](PackedTable s) { return s != t && (t & ~s) == 0; });
    if (!beaten) minimal.push_back(t);
  }
  return canonical(space, minimal);
}

std::vector<Coevent> brute_linear(const PreclusionSet& precluded) {
  const SpacePtr& space = precluded.space();
  guard(space, kMaxEnumerationHistories, "brute linear search");
  const std::size_t n = space->size();
  const PackedTable forbidden = event_indicator(precluded);
  auto support_of = [n](PackedTable t) {
    Mask s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (bit(t, Mask{1} << i)) s |= Mask{1} << i;
    }
    return s;
  };
  std::vector<PackedTable> viable;
  for (PackedTable t : cached(n, true)) {
    if (t != 0 && (t & forbidden) == 0) viable.push_back(t);
  }
  std::vector<PackedTable> chosen;
  for (PackedTable t : viable) {
    const Mask s = support_of(t);
    const bool beaten = std::any_of(viable.begin(), viable.end(), [&](PackedTable other) {
      const Mask o = support_of(other);
      return o != s && (o & ~s) == 0;
    });
    if (!beaten && bit(t, space->full_mask())) chosen.push_back(t);
  }
  return canonical(space, chosen);
}

std::vector<Coevent> brute_ideal_closure(const SpacePtr& space, const std::vector<Coevent>& generators) {
  guard(space, kMaxClosureHistories, "brute ideal closure");
  const std::size_t n = space->size();
  const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
  std::bitset<256> member;
  member.set(0);
  for (const Coevent& g : generators) member.set(pack(g));
  for (bool changed = true; changed;) {
    changed = false;
    for (PackedTable x = 0; x < count; ++x) {
      if (!member.test(x)) continue;
      for (PackedTable y = 0; y < count; ++y) {
        const PackedTable product = x & y;
        if (!member.test(product)) {
          member.set(product);
          changed = true;
        }
        if (member.test(y) && !member.test(x ^ y)) {
          member.set(x ^ y);
          changed = true;
        }
      }
    }
  }
  std::vector<PackedTable> tables;
  for (PackedTable t = 0; t < count; ++t) {
    if (member.test(t)) tables.push_back(t);
  }
  return canonical(space, tables);
}

namespace {

struct Candidate {
  PackedTable table;
  std::size_t weight;
};

class CoverSearch {
 public:
  CoverSearch(std::vector<Candidate> candidates, PackedTable universe)
      : candidates_(std::move(candidates)), universe_(universe) {}

  void run() {
    std::vector<PackedTable> chosen;
    descend(0, 0, chosen);
  }

  std::size_t best() const { return best_; }
  const std::set<std::vector<PackedTable>>& sets() const { return sets_; }

 private:
  void descend(PackedTable covered, std::size_t cost, std::vector<PackedTable>& chosen) {
    const PackedTable uncovered = universe_ & ~covered;
    if (uncovered == 0) {
      if (cost < best_) {
        best_ = cost;
        sets_.clear();
      }
      std::vector<PackedTable> set = chosen;
      std::sort(set.begin(), set.end());
      sets_.insert(std::move(set));
      return;
    }
    const PackedTable lowest = uncovered & (~uncovered + 1);
    for (const Candidate& c : candidates_) {
      if (cost + c.weight > best_) break;
      if ((c.table & lowest) == 0) continue;
      chosen.push_back(c.table);
      descend(covered | c.table, cost + c.weight, chosen);
      chosen.pop_back();
    }
  }

  std::vector<Candidate> candidates_;
  PackedTable universe_;
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
  std::set<std::vector<PackedTable>> sets_;
};

}  // namespace

MinCover brute_min_cover(const PreclusionSet& precluded) {
  const SpacePtr& space = precluded.space();
  guard(space, kMaxClosureHistories, "brute minimum cover");
  const std::size_t n = space->size();
  const PackedTable universe = all_ones(n) & ~event_indicator(precluded);
  MinCover out;
  if (universe == 0) return out;

  // Preclusive coevents are exactly the nonzero tables vanishing on the precluded events.
  std::vector<Candidate> candidates;
  for (PackedTable t = universe; t != 0; t = (t - 1) & universe) candidates.push_back({t, naive_complexity(t, n)});
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) { return a.weight < b.weight; });

  CoverSearch search(std::move(candidates), universe);
  search.run();
  out.feasible = true;
  out.total_complexity = search.best();
  for (const auto& tables : search.sets()) {
    out.sets.push_back(canonical(space, tables));
  }
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

}  // namespace anhom::oracle
