#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace silting {

/// Error raised for malformed input (bad files, inconsistent dimensions, violated preconditions).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Residues modulo a prime p < 2^31.
struct PrimeField {
  using value_type = std::uint32_t;

  std::uint32_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw Error("field characteristic " + std::to_string(prime) + " is not prime");
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2 || n > (1ULL << 31)) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return value_type(s >= p ? s - p : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : value_type(std::uint64_t(a) + p - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const { return value_type(std::uint64_t(a) * b % p); }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p));
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return value_type(result);
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return value_type(r);
  }
  value_type parse(std::string_view s) const {
    try {
      std::size_t slash = s.find('/');
      if (slash != std::string_view::npos)
        return mul(from_int(std::stoll(std::string(s.substr(0, slash)))),
                   inv(from_int(std::stoll(std::string(s.substr(slash + 1))))));
      return from_int(std::stoll(std::string(s)));
    } catch (const std::logic_error&) {
      throw Error("malformed scalar '" + std::string(s) + "'");
    }
  }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "F_" + std::to_string(p); }
  bool is_finite() const { return true; }
  std::uint64_t size() const { return p; }
  /// Enumerates the field for small p; used by exhaustive searches.
  value_type element(std::uint64_t i) const { return value_type(i % p); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

/// Exact rationals as reduced fractions of arbitrary-precision integers.
struct RationalField {
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error("division by zero in Q");
    return value_type(1) / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type from_int(long long v) const { return value_type(v); }
  value_type parse(std::string_view s) const {
    try {
      std::size_t slash = s.find('/');
      if (slash != std::string_view::npos) {
        boost::multiprecision::cpp_int num(std::string(s.substr(0, slash)));
        boost::multiprecision::cpp_int den(std::string(s.substr(slash + 1)));
        if (den == 0) throw Error("zero denominator in '" + std::string(s) + "'");
        return value_type(num, den);
      }
      return value_type(boost::multiprecision::cpp_int(std::string(s)));
    } catch (const std::runtime_error& e) {
      throw Error("malformed scalar '" + std::string(s) + "'");
    }
  }
  std::string to_string(const value_type& a) const {
    const auto num = boost::multiprecision::numerator(a);
    const auto den = boost::multiprecision::denominator(a);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
  std::string name() const { return "Q"; }
  bool is_finite() const { return false; }
  std::uint64_t size() const { return 0; }
  value_type element(std::uint64_t i) const {
    // 0, 1, -1, 2, -2, ...
    long long k = static_cast<long long>((i + 1) / 2);
    return value_type(i % 2 ? k : -k);
  }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <typename F>
concept Field = requires(const F f, const typename F::value_type a, long long n, std::string_view s) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.from_int(n) } -> std::convertible_to<typename F::value_type>;
  { f.parse(s) } -> std::convertible_to<typename F::value_type>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.is_finite() } -> std::same_as<bool>;
};

/// Runtime description of the ground field, as it appears in definition files.
struct FieldSpec {
  enum class Kind { prime, rational };
  Kind kind = Kind::prime;
  std::uint32_t p = 2;

  static FieldSpec prime(std::uint32_t p) {
    if (!PrimeField::is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
    return {Kind::prime, p};
  }
  static FieldSpec rational() { return {Kind::rational, 0}; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline FieldSpec spec_of(const PrimeField& f) { return FieldSpec::prime(f.p); }
inline FieldSpec spec_of(const RationalField&) { return FieldSpec::rational(); }

}  // namespace silting
