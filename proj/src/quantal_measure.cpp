#include "anhom/quantal_measure.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace anhom {

PreclusionSet::PreclusionSet(SpacePtr space, std::vector<Mask> events, Provenance provenance)
    : space_(std::move(space)), events_(std::move(events)), provenance_(provenance) {
  const Mask full = space_->full_mask();
  for (Mask e : events_) {
    if ((e & ~full) != 0) throw std::invalid_argument("precluded event outside the sample space");
  }
  events_.push_back(0);
  std::sort(events_.begin(), events_.end(), canonical_less);
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

std::vector<Event> PreclusionSet::events() const {
  std::vector<Event> out;
  out.reserve(events_.size());
  for (Mask e : events_) out.emplace_back(space_, e);
  return out;
}

bool PreclusionSet::contains(Mask event) const {
  return std::binary_search(events_.begin(), events_.end(), event, canonical_less);
}

bool PreclusionSet::contains(const Event& event) const {
  require_same_space(space_, event.space());
  return contains(event.mask());
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// `offset` shifts reported columns when parsing a slice of a larger literal.
Rational parse_rational_at(std::string_view text, std::size_t offset) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  const std::size_t slash = text.find('/', pos);
  const std::string_view numerator = text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
  if (!all_digits(numerator)) throw ParseError(offset + pos + 1, "expected an integer in '" + std::string(text) + "'");
  Rational value{boost::multiprecision::cpp_int(std::string(numerator))};
  if (slash != std::string_view::npos) {
    const std::string_view denominator = text.substr(slash + 1);
    if (!all_digits(denominator)) throw ParseError(offset + slash + 2, "expected a positive denominator");
    const boost::multiprecision::cpp_int den(std::string{denominator});
    if (den == 0) throw ParseError(offset + slash + 2, "denominator must be positive");
    value /= den;
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) { return parse_rational_at(text, 0); }

std::string format_rational(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) { return {a.re + b.re, a.im + b.im}; }

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) { return {a.re - b.re, a.im - b.im}; }

GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw std::domain_error("division by zero");
  const GaussianRational top = a * conj(b);
  return {top.re / norm, top.im / norm};
}

GaussianRational parse_complex(std::string_view text) {
  if (text.empty()) throw ParseError(1, "expected a number");
  if (text.back() != 'i') return {parse_rational_at(text, 0), Rational(0)};
  const std::string_view body = text.substr(0, text.size() - 1);
  if (body.empty() || body == "-") throw ParseError(1, "imaginary unit needs an explicit coefficient, e.g. '1i'");
  // The sign between real and imaginary parts is the last '+'/'-' after the first character.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {Rational(0), parse_rational_at(body, 0)};
  if (split > 1 && (body[split - 1] == '+' || body[split - 1] == '-')) throw ParseError(split + 1, "doubled sign");
  const Rational re = parse_rational_at(body.substr(0, split), 0);
  const std::string_view imag = body.substr(split + 1);
  if (!imag.empty() && imag.front() == '-') throw ParseError(split + 2, "doubled sign in imaginary part");
  Rational im = parse_rational_at(imag, split + 1);
  if (body[split] == '-') im = -im;
  return {re, im};
}

std::string format_complex(const GaussianRational& z) {
  if (z.im == 0) return format_rational(z.re);
  if (z.re == 0) return format_rational(z.im) + "i";
  const bool negative = z.im < 0;
  return format_rational(z.re) + (negative ? "-" : "+") + format_rational(negative ? Rational(-z.im) : z.im) + "i";
}

DecoherenceMatrix::DecoherenceMatrix(SpacePtr space, std::vector<GaussianRational> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const std::size_t n = dimension();
  if (entries_.size() != n * n) throw std::invalid_argument("decoherence matrix must be n x n for n histories");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if ((*this)(i, j) != conj((*this)(j, i))) {
        throw std::invalid_argument("decoherence matrix is not Hermitian at (" + space_->label(i) + ", " + space_->label(j) + ")");
      }
    }
  }
}

DecoherenceMatrix decoherence_from_amplitudes(const SpacePtr& space, const std::vector<GaussianRational>& amplitudes,
                                              const std::vector<Event>& blocks) {
  const std::size_t n = space->size();
  if (amplitudes.size() != n) throw std::invalid_argument("need exactly one amplitude per history");
  std::vector<Mask> block_masks;
  if (blocks.empty()) {
    block_masks.push_back(space->full_mask());
  } else {
    Mask covered = 0;
    for (const Event& block : blocks) {
      require_same_space(space, block.space());
      if (block.is_empty()) throw std::invalid_argument("blocks must be nonempty");
      if ((covered & block.mask()) != 0) throw std::invalid_argument("blocks overlap");
      covered |= block.mask();
      block_masks.push_back(block.mask());
    }
    if (covered != space->full_mask()) throw std::invalid_argument("blocks do not cover every history");
  }
  std::vector<GaussianRational> entries(n * n);
  for (Mask block : block_masks) {
    for (std::size_t i = 0; i < n; ++i) {
      if (((block >> i) & 1U) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (((block >> j) & 1U) != 0) entries[i * n + j] = amplitudes[i] * conj(amplitudes[j]);
      }
    }
  }
  return DecoherenceMatrix(space, std::move(entries));
}

Rational measure(const DecoherenceMatrix& d, const Event& event) {
  require_same_space(d.space(), event.space());
  GaussianRational total;
  const std::size_t n = d.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    if (!event.contains(i)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (event.contains(j)) total = total + d(i, j);
    }
  }
  if (!total.is_real()) throw std::logic_error("quantal measure has a nonzero imaginary part");
  return total.re;
}

std::vector<Rational> measure_table(const DecoherenceMatrix& d) {
  const std::size_t n = d.dimension();
  if (n > kMaxHistories) throw GuardExceeded("measure table limited to " + std::to_string(kMaxHistories) + " histories");
  std::vector<Rational> mu(std::size_t{1} << n);
  // mu(A + {k}) = mu(A) + D(k,k) + 2 Re sum_{j in A} D(k,j), for k above every member of A.
  for (Mask a = 1; a < mu.size(); ++a) {
    const std::size_t k = static_cast<std::size_t>(std::bit_width(a)) - 1;
    const Mask rest = a & ~(Mask{1} << k);
    Rational cross = 0;
    for (Mask bits = rest; bits != 0; bits &= bits - 1) cross += d(k, static_cast<std::size_t>(std::countr_zero(bits))).re;
    mu[a] = mu[rest] + d(k, k).re + 2 * cross;
  }
  return mu;
}

PreclusionSet preclusions(const DecoherenceMatrix& d) {
  const std::vector<Rational> mu = measure_table(d);
  std::vector<Mask> zeros;
  for (Mask a = 0; a < mu.size(); ++a) {
    if (mu[a] == 0) zeros.push_back(a);
  }
  return PreclusionSet(d.space(), std::move(zeros), Provenance::derived_from_measure);
}

PreclusionSet explicit_preclusions(const SpacePtr& space, const std::vector<Event>& events) {
  std::vector<Mask> masks;
  masks.reserve(events.size());
  for (const Event& e : events) {
    require_same_space(space, e.space());
    masks.push_back(e.mask());
  }
  return PreclusionSet(space, std::move(masks), Provenance::explicit_list);
}

Rational principal_minor(const DecoherenceMatrix& d, Mask rows) {
  std::vector<std::size_t> index;
  for (Mask bits = rows; bits != 0; bits &= bits - 1) index.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
  const std::size_t k = index.size();
  std::vector<GaussianRational> m(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r * k + c] = d(index[r], index[c]);
  }
  GaussianRational det = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && m[pivot * k + col].is_zero()) ++pivot;
    if (pivot == k) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(m[pivot * k + c], m[col * k + c]);
      det = -det;
    }
    const GaussianRational p = m[col * k + col];
    det = det * p;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (m[r * k + col].is_zero()) continue;
      const GaussianRational factor = m[r * k + col] / p;
      for (std::size_t c = col; c < k; ++c) m[r * k + c] = m[r * k + c] - factor * m[col * k + c];
    }
  }
  if (!det.is_real()) throw std::logic_error("Hermitian determinant has a nonzero imaginary part");
  return det.re;
}

bool is_strongly_positive(const DecoherenceMatrix& d) {
  const Mask full = d.space()->full_mask();
  for (Mask rows = 1; rows <= full && rows != 0; ++rows) {
    if (principal_minor(d, rows) < 0) return false;
  }
  return true;
}

bool is_classical_preclusion(const PreclusionSet& precluded) {
  for (Mask z : precluded.masks()) {
    // Immediate subsets suffice.
    for (Mask bits = z; bits != 0; bits &= bits - 1) {
      if (!precluded.contains(z & ~(bits & (~bits + 1)))) return false;
    }
  }
  return true;
}

bool null_set_absorption_check(const DecoherenceMatrix& d) {
  const std::vector<Rational> mu = measure_table(d);
  const Mask full = d.space()->full_mask();
  for (Mask null = 0; null <= full; ++null) {
    if (mu[null] != 0) continue;
    const Mask rest = full & ~null;
    for (Mask a = rest;; a = (a - 1) & rest) {
      if (mu[a | null] != mu[a]) return false;
      if (a == 0) break;
    }
  }
  return true;
}

}  // namespace anhom
