#pragma once

// Exact scalar types used throughout the library: arbitrary-precision
// integers and rationals (GMP) and the two-element field.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace widthlab {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Ring { Z, Q, GF2 };

inline std::string to_string(Ring r) {
  switch (r) {
    case Ring::Z: return "Z";
    case Ring::Q: return "Q";
    case Ring::GF2: return "GF2";
  }
  return "?";
}

inline Ring parse_ring(std::string_view s) {
  if (s == "Z") return Ring::Z;
  if (s == "Q") return Ring::Q;
  if (s == "GF2" || s == "Z2" || s == "F2") return Ring::GF2;
  throw std::invalid_argument("unknown coefficient ring '" + std::string(s) + "' (expected Z, Q or GF2)");
}

/// Element of the field with two elements.
class Gf2 {
 public:
  constexpr Gf2() = default;
  constexpr Gf2(int v) : bit_(static_cast<std::uint8_t>(v & 1)) {}  // NOLINT: implicit from literals

  constexpr bool value() const { return bit_ != 0; }

  friend constexpr Gf2 operator+(Gf2 a, Gf2 b) { return Gf2(a.bit_ ^ b.bit_); }
  friend constexpr Gf2 operator-(Gf2 a, Gf2 b) { return Gf2(a.bit_ ^ b.bit_); }
  friend constexpr Gf2 operator*(Gf2 a, Gf2 b) { return Gf2(a.bit_ & b.bit_); }
  friend Gf2 operator/(Gf2 a, Gf2 b) {
    if (!b.bit_) throw std::domain_error("division by zero in GF(2)");
    return a;
  }
  constexpr Gf2 operator-() const { return *this; }
  constexpr Gf2& operator+=(Gf2 o) { bit_ ^= o.bit_; return *this; }
  constexpr Gf2& operator-=(Gf2 o) { bit_ ^= o.bit_; return *this; }
  constexpr Gf2& operator*=(Gf2 o) { bit_ &= o.bit_; return *this; }
  friend constexpr bool operator==(Gf2 a, Gf2 b) { return a.bit_ == b.bit_; }
  friend constexpr bool operator!=(Gf2 a, Gf2 b) { return a.bit_ != b.bit_; }
  friend std::ostream& operator<<(std::ostream& os, Gf2 g) { return os << int(g.bit_); }

 private:
  std::uint8_t bit_ = 0;
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Integer> {
  static constexpr bool is_field = false;
  static constexpr Ring ring = Ring::Z;
  static Integer from_integer(const Integer& v) { return v; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_field = true;
  static constexpr Ring ring = Ring::Q;
  static Rational from_integer(const Integer& v) { return Rational(v); }
};

template <>
struct scalar_traits<Gf2> {
  static constexpr bool is_field = true;
  static constexpr Ring ring = Ring::GF2;
  static Gf2 from_integer(const Integer& v) { return Gf2(mpz_odd_p(v.get_mpz_t()) ? 1 : 0); }
};

template <class T>
concept ExactScalar = requires { scalar_traits<T>::ring; };

template <class T>
concept ExactField = ExactScalar<T> && scalar_traits<T>::is_field;

inline bool is_zero(const Integer& v) { return sgn(v) == 0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(Gf2 v) { return !v.value(); }

inline bool is_unit(const Integer& v) { return v == 1 || v == -1; }
inline bool is_unit(const Rational& v) { return sgn(v) != 0; }
inline bool is_unit(Gf2 v) { return v.value(); }

template <ExactScalar T>
T convert(const Integer& v) {
  return scalar_traits<T>::from_integer(v);
}

inline std::string to_string(const Integer& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }
inline std::string to_string(Gf2 v) { return v.value() ? "1" : "0"; }

/// Parses "p" or "p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline Integer parse_integer(std::string_view text) {
  Integer z;
  if (z.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return z;
}

/// Runs `fn.template operator()<T>()` with T the scalar type of `ring`.
template <class Fn>
decltype(auto) with_ring(Ring ring, Fn&& fn) {
  switch (ring) {
    case Ring::Z: return fn.template operator()<Integer>();
    case Ring::Q: return fn.template operator()<Rational>();
    case Ring::GF2: return fn.template operator()<Gf2>();
  }
  throw std::logic_error("unreachable ring");
}

}  // namespace widthlab
