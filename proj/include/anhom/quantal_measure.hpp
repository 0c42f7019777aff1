#pragma once

// Exact quantal measures. Amplitudes and decoherence entries are Gaussian
// rationals (p/q + r/s i), so mu(A) = 0 is decided without tolerance.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "anhom/event_algebra.hpp"
#include "anhom/preclusion.hpp"

namespace anhom {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// `['-'] int ['/' posint]`. Throws ParseError.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(int real) : re(real) {}  // NOLINT(google-explicit-constructor)

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

GaussianRational conj(const GaussianRational& z);
GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
/// Throws std::domain_error on division by zero.
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

/// `rational | rational ('+'|'-') rational 'i' | rational 'i'`, e.g. `3/2-1/2i`.
GaussianRational parse_complex(std::string_view text);
std::string format_complex(const GaussianRational& z);

/// Hermitian n x n matrix of Gaussian rationals over a sample space.
class DecoherenceMatrix {
 public:
  /// Row-major entries. Throws std::invalid_argument unless the matrix is
  /// n x n and Hermitian. Negative diagonals are accepted here; they fail
  /// is_strongly_positive.
  DecoherenceMatrix(SpacePtr space, std::vector<GaussianRational> entries);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return space_->size(); }
  const GaussianRational& operator()(std::size_t row, std::size_t col) const { return entries_[row * dimension() + col]; }
  const std::vector<GaussianRational>& entries() const noexcept { return entries_; }

  friend bool operator==(const DecoherenceMatrix& a, const DecoherenceMatrix& b) {
    return a.entries_ == b.entries_ && same_space(a.space_, b.space_);
  }

 private:
  SpacePtr space_;
  std::vector<GaussianRational> entries_;
};

/// D(g, h) = a_g conj(a_h) when g and h share a block, else 0. `blocks`
/// must partition the space; an empty list means one block of everything.
DecoherenceMatrix decoherence_from_amplitudes(const SpacePtr& space, const std::vector<GaussianRational>& amplitudes,
                                              const std::vector<Event>& blocks);

/// mu(A) = sum of D(g, h) over g, h in A. Real by Hermiticity.
Rational measure(const DecoherenceMatrix& d, const Event& event);

/// mu of every event, indexed by mask.
std::vector<Rational> measure_table(const DecoherenceMatrix& d);

/// All events of exactly zero measure.
PreclusionSet preclusions(const DecoherenceMatrix& d);
PreclusionSet explicit_preclusions(const SpacePtr& space, const std::vector<Event>& events);

/// Exact Hermitian determinant of the principal submatrix on `rows`.
Rational principal_minor(const DecoherenceMatrix& d, Mask rows);

/// Positive semidefinite, decided by all principal minors being >= 0.
bool is_strongly_positive(const DecoherenceMatrix& d);

/// Downward closed under inclusion.
bool is_classical_preclusion(const PreclusionSet& precluded);

/// mu(A u N) = mu(A) for every null N disjoint from A, checked exhaustively.
bool null_set_absorption_check(const DecoherenceMatrix& d);

}  // namespace anhom
