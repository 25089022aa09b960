#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicint/rational.hpp"

namespace padicint {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// A rational prime; primality is checked on construction.
class Prime {
 public:
  explicit Prime(long p);

  long value() const { return p_; }
  operator long() const { return p_; }  // NOLINT(google-explicit-constructor)

  /// p^e as an exact integer.
  Integer pow(unsigned long e) const { return ipow(Integer(p_), e); }

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  long p_;
};

/// An integer or +infinity; infinity dominates every integer.
class ExtendedInteger {
 public:
  ExtendedInteger(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  static ExtendedInteger infinity() { return ExtendedInteger(); }

  bool is_infinite() const { return !value_.has_value(); }
  long value() const;

  ExtendedInteger operator+(long n) const {
    return is_infinite() ? infinity() : ExtendedInteger(*value_ + n);
  }
  ExtendedInteger operator+(const ExtendedInteger& other) const {
    if (is_infinite() || other.is_infinite()) return infinity();
    return ExtendedInteger(*value_ + *other.value_);
  }

  friend bool operator==(const ExtendedInteger&, const ExtendedInteger&) = default;
  friend std::strong_ordering operator<=>(const ExtendedInteger& a, const ExtendedInteger& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const;

 private:
  ExtendedInteger() = default;
  std::optional<long> value_;
};

/// A rational number regarded as an element of Q_p.
class PAdicPoint {
 public:
  PAdicPoint(Rational value, Prime prime);

  const Rational& value() const { return value_; }
  const Prime& prime() const { return prime_; }

 private:
  Rational value_;
  Prime prime_;
};

/// Residue class ac_m(x) in (Z/p^m)^x or 0.
struct AngularResidue {
  int depth = 1;
  long residue = 0;

  friend bool operator==(const AngularResidue&, const AngularResidue&) = default;
};

/// v_p of a nonzero integer.
long valuation(const Integer& n, const Prime& prime);

ExtendedInteger ord(const Rational& x, const Prime& prime);
inline ExtendedInteger ord(const PAdicPoint& x) { return ord(x.value(), x.prime()); }

/// Unit part x / p^{ord x} reduced modulo p^m; 0 when x = 0.
AngularResidue ac(const Rational& x, const Prime& prime, int m);
inline AngularResidue ac(const PAdicPoint& x, int m) { return ac(x.value(), x.prime(), m); }

/// Reduces a rational with p-integral value modulo p^m; throws Domain when
/// the denominator is divisible by p.
Integer reduce_mod_power(const Rational& x, const Prime& prime, int m);

/// p^exponent as an int64, throwing BudgetExceeded when it exceeds `budget`.
std::uint64_t checked_power(const Prime& prime, std::uint64_t exponent, std::uint64_t budget);

/// Lexicographic walk over {0, ..., p^m - 1}^n.
///
///   ResidueEnumerator it(n, m, prime);
///   do { use(it.current()); } while (it.advance());
class ResidueEnumerator {
 public:
  ResidueEnumerator(int n, int m, const Prime& prime, std::uint64_t budget = kDefaultBudget);

  const std::vector<long>& current() const { return tuple_; }
  bool advance();
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t size() const { return size_; }

 private:
  std::vector<long> tuple_;
  std::uint64_t modulus_;
  std::uint64_t size_;
};

/// Collects the residue tuples of ResidueEnumerator into a vector.
std::vector<std::vector<long>> enumerate_residues(int n, int m, const Prime& prime,
                                                  std::uint64_t budget = kDefaultBudget);

}  // namespace padicint
