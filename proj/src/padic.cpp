#include "padicint/padic.hpp"

#include "padicint/error.hpp"

namespace padicint {

Prime::Prime(long p) : p_(p) {
  bool prime = p >= 2;
  for (long d = 2; prime && d * d <= p; ++d) {
    if (p % d == 0) prime = false;
  }
  if (!prime) throw Error(ErrorKind::Domain, std::to_string(p) + " is not a prime");
}

long ExtendedInteger::value() const {
  if (!value_) throw Error(ErrorKind::Domain, "value of infinite extended integer");
  return *value_;
}

std::string ExtendedInteger::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("INFINITY");
}

PAdicPoint::PAdicPoint(Rational value, Prime prime) : value_(std::move(value)), prime_(prime) {
  value_.canonicalize();
}

long valuation(const Integer& n, const Prime& prime) {
  if (n == 0) throw Error(ErrorKind::Domain, "valuation of zero");
  Integer rest = abs(n);
  const Integer p(prime.value());
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
}

ExtendedInteger ord(const Rational& x, const Prime& prime) {
  if (x == 0) return ExtendedInteger::infinity();
  return valuation(x.get_num(), prime) - valuation(x.get_den(), prime);
}

Integer reduce_mod_power(const Rational& value, const Prime& prime, int m) {
  Rational x = value;
  x.canonicalize();
  Integer modulus = prime.pow(static_cast<unsigned long>(m));
  Integer num = x.get_num() % modulus;
  if (num < 0) num += modulus;
  if (x.get_den() == 1) return num;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw Error(ErrorKind::Domain, to_string(x) + " is not p-integral");
  }
  Integer r = (num * inv) % modulus;
  return r;
}

AngularResidue ac(const Rational& x, const Prime& prime, int m) {
  if (m < 1) throw Error(ErrorKind::Domain, "angular component depth must be >= 1");
  if (x == 0) return {m, 0};
  long v = ord(x, prime).value();
  Rational unit = x * rpow(Rational(prime.value()), -v);
  Integer r = reduce_mod_power(unit, prime, m);
  return {m, to_long(r)};
}

std::uint64_t checked_power(const Prime& prime, std::uint64_t exponent, std::uint64_t budget) {
  std::uint64_t result = 1;
  const auto p = static_cast<std::uint64_t>(prime.value());
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (result > budget / p) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(prime.value()) + "^" + std::to_string(exponent) +
                      " exceeds the enumeration budget " + std::to_string(budget));
    }
    result *= p;
  }
  if (result > budget) {
    throw Error(ErrorKind::BudgetExceeded, "enumeration exceeds budget " + std::to_string(budget));
  }
  return result;
}

ResidueEnumerator::ResidueEnumerator(int n, int m, const Prime& prime, std::uint64_t budget)
    : tuple_(static_cast<std::size_t>(n), 0) {
  if (n < 1 || m < 0) throw Error(ErrorKind::Domain, "residue enumeration needs n >= 1, m >= 0");
  size_ = checked_power(prime, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(m),
                        budget);
  modulus_ = checked_power(prime, static_cast<std::uint64_t>(m), budget);
}

bool ResidueEnumerator::advance() {
  for (std::size_t i = tuple_.size(); i-- > 0;) {
    if (static_cast<std::uint64_t>(++tuple_[i]) < modulus_) return true;
    tuple_[i] = 0;
  }
  return false;
}

std::vector<std::vector<long>> enumerate_residues(int n, int m, const Prime& prime,
                                                  std::uint64_t budget) {
  ResidueEnumerator it(n, m, prime, budget);
  std::vector<std::vector<long>> out;
  out.reserve(it.size());
  do {
    out.push_back(it.current());
  } while (it.advance());
  return out;
}

}  // namespace padicint
