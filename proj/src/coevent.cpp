#include "anhom/coevent.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace anhom {

TruthTable::TruthTable(std::size_t histories) : histories_(histories) {
  if (histories > kMaxTruthTableHistories) {
    throw GuardExceeded("truth tables are limited to " + std::to_string(kMaxTruthTableHistories) + " histories");
  }
  words_.assign(histories < 6 ? 1 : std::size_t{1} << (histories - 6), 0);
}

namespace {

constexpr std::array<std::uint64_t, 6> kLowHalves = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

}  // namespace

std::uint64_t subset_transform_word(std::uint64_t table, std::size_t histories) noexcept {
  const std::size_t in_word = std::min<std::size_t>(histories, 6);
  for (std::size_t bit = 0; bit < in_word; ++bit) {
    table ^= (table & kLowHalves[bit]) << (std::size_t{1} << bit);
  }
  return table;
}

void subset_transform(TruthTable& table) {
  auto& words = table.words();
  for (auto& word : words) word = subset_transform_word(word, table.histories());
  for (std::size_t stride = 1; stride < words.size(); stride <<= 1) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      if ((w & stride) != 0) words[w] ^= words[w ^ stride];
    }
  }
}

Coevent::Coevent(SpacePtr space, std::vector<Mask> monomials) : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("coevent needs a sample space");
  const Mask full = space_->full_mask();
  for (Mask m : monomials) {
    if ((m & ~full) != 0) throw std::invalid_argument("monomial mentions histories outside the sample space");
  }
  std::sort(monomials.begin(), monomials.end(), canonical_less);
  // Z2 accumulation: keep a monomial iff it occurs an odd number of times.
  monomials_.reserve(monomials.size());
  for (std::size_t i = 0; i < monomials.size();) {
    std::size_t j = i;
    while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
    if ((j - i) % 2 == 1) monomials_.push_back(monomials[i]);
    i = j;
  }
}

Bit Coevent::at(Mask event) const noexcept {
  bool parity = false;
  for (Mask m : monomials_) {
    if ((m & ~event) == 0) parity = !parity;
  }
  return to_bit(parity);
}

std::weak_ordering operator<=>(const Coevent& a, const Coevent& b) {
  const auto& x = a.monomials_;
  const auto& y = b.monomials_;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] == y[i]) continue;
    return canonical_less(x[i], y[i]) ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  return x.size() <=> y.size();
}

Coevent classical(const Event& atom) {
  if (!is_atom(atom)) throw std::invalid_argument("classical coevent requires an atom");
  return Coevent(atom.space(), {atom.mask()});
}

Coevent monomial(const Event& support) { return Coevent(support.space(), {support.mask()}); }

Bit evaluate(const Coevent& phi, const Event& event) {
  require_same_space(phi.space(), event.space());
  return phi.at(event.mask());
}

TruthTable truth_table(const Coevent& phi) {
  TruthTable table(phi.space()->size());
  for (Mask m : phi.monomials()) table.set(m, table.get(m) ^ Bit::one);
  subset_transform(table);
  return table;
}

Coevent from_truth_table(SpacePtr space, const TruthTable& table) {
  if (table.histories() != space->size()) throw std::invalid_argument("truth table size does not match the sample space");
  TruthTable coefficients = table;
  subset_transform(coefficients);
  std::vector<Mask> monomials;
  const auto& words = coefficients.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
      monomials.push_back(static_cast<Mask>((w << 6) + static_cast<std::size_t>(std::countr_zero(bits))));
    }
  }
  return Coevent(std::move(space), std::move(monomials));
}

Coevent from_truth_table(SpacePtr space, const std::function<Bit(const Event&)>& mapping) {
  TruthTable table(space->size());
  for (const Event& event : all_events(space)) table.set(event.mask(), mapping(event));
  return from_truth_table(std::move(space), table);
}

Coevent coevent_add(const Coevent& a, const Coevent& b) {
  require_same_space(a.space(), b.space());
  std::vector<Mask> monomials = a.monomials();
  monomials.insert(monomials.end(), b.monomials().begin(), b.monomials().end());
  return Coevent(a.space(), std::move(monomials));
}

Coevent coevent_multiply(const Coevent& a, const Coevent& b) {
  require_same_space(a.space(), b.space());
  std::vector<Mask> products;
  products.reserve(a.monomials().size() * b.monomials().size());
  for (Mask f : a.monomials()) {
    for (Mask g : b.monomials()) products.push_back(f | g);
  }
  return Coevent(a.space(), std::move(products));
}

Coevent coevent_join(const Coevent& a, const Coevent& b) { return a + b + a * b; }

Event support(const Coevent& phi) {
  Mask members = 0;
  for (Mask m : phi.monomials()) members |= m;
  return Event(phi.space(), members);
}

std::size_t complexity(const Coevent& phi) {
  std::size_t total = 0;
  for (Mask m : phi.monomials()) total += static_cast<std::size_t>(std::popcount(m));
  return total;
}

bool is_unital(const Coevent& phi) { return to_bool(phi.at(phi.space()->full_mask())); }

bool is_linear(const Coevent& phi) {
  return std::all_of(phi.monomials().begin(), phi.monomials().end(), [](Mask m) { return std::popcount(m) == 1; });
}

bool is_multiplicative(const Coevent& phi) { return phi.monomials().size() <= 1; }

bool is_homomorphism(const Coevent& phi) {
  return phi.monomials().size() == 1 && std::popcount(phi.monomials().front()) == 1;
}

bool is_preclusive(const Coevent& phi, const PreclusionSet& precluded) {
  require_same_space(phi.space(), precluded.space());
  return std::none_of(precluded.masks().begin(), precluded.masks().end(),
                      [&](Mask z) { return to_bool(phi.at(z)); });
}

namespace {

class CoeventParser {
 public:
  CoeventParser(std::string_view text, const SampleSpace& space) : text_(text), space_(space) {}

  std::vector<Mask> parse() {
    skip_space();
    if (at_end()) fail("expected a polynomial");
    std::vector<Mask> monomials;
    if (peek() == '0' && is_lone_digit()) {
      ++pos_;
      skip_space();
      if (!at_end()) fail("'0' must stand alone");
      return monomials;
    }
    for (;;) {
      monomials.push_back(parse_term());
      skip_space();
      if (at_end()) break;
      if (peek() != '+') fail("expected '+' or end of polynomial");
      ++pos_;
      skip_space();
    }
    return monomials;
  }

 private:
  Mask parse_term() {
    skip_space();
    if (at_end()) fail("expected a term");
    if (peek() == '1' && is_lone_digit()) {
      ++pos_;
      return 0;
    }
    Mask term = 0;
    bool any = false;
    for (;;) {
      skip_space();
      const std::size_t start = pos_;
      while (!at_end() && is_label_char(peek())) ++pos_;
      if (start == pos_) {
        if (any) break;
        if (at_end()) fail("expected a history label");
        fail(std::string("unexpected character '") + peek() + "'");
      }
      const std::string_view label = text_.substr(start, pos_ - start);
      const auto index = space_.index_of(label);
      if (!index) fail_at(start, "unknown history label '" + std::string(label) + "'");
      skip_space();
      if (at_end() || peek() != '*') fail("expected '*' after label '" + std::string(label) + "'");
      ++pos_;
      term |= Mask{1} << *index;  // g*g* = g*
      any = true;
    }
    return term;
  }

  static bool is_label_char(char c) {
    return std::isspace(static_cast<unsigned char>(c)) == 0 && std::string_view("{}+*#=,").find(c) == std::string_view::npos;
  }

  // A '0' or '1' that is a constant rather than the start of a longer label.
  bool is_lone_digit() const {
    std::size_t next = pos_ + 1;
    if (next >= text_.size()) return true;
    const char c = text_[next];
    return !is_label_char(c);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const { throw ParseError(pos + 1, message); }

  std::string_view text_;
  const SampleSpace& space_;
  std::size_t pos_ = 0;
};

}  // namespace

Coevent parse_coevent(std::string_view text, const SpacePtr& space) {
  return Coevent(space, CoeventParser(text, *space).parse());
}

std::string render_coevent(const Coevent& phi) {
  if (phi.is_zero()) return "0";
  const SampleSpace& space = *phi.space();
  std::string out;
  for (std::size_t k = 0; k < phi.monomials().size(); ++k) {
    if (k > 0) out += '+';
    const Mask m = phi.monomials()[k];
    if (m == 0) {
      out += '1';
      continue;
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (((m >> i) & 1U) == 0) continue;
      out += space.label(i);
      out += '*';
    }
  }
  return out;
}

}  // namespace anhom
