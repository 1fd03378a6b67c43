#ifndef QSPECTRA_RATIONAL_HPP
#define QSPECTRA_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qspectra {

// Exact rational on 64-bit words.  Intermediate products run through
// __int128 and overflow past 64 bits throws; the symmetric-function layer
// stays far below that at the supported sizes.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    return Rational(checked(n), checked(d));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.num;
    __int128 d = (__int128)a.den * b.den;
    return Rational(checked(n), checked(d));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    __int128 n = (__int128)a.num * b.den;
    __int128 d = (__int128)a.den * b.num;
    return Rational(checked(n), checked(d));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  Rational operator-() const { return Rational(-num, den); }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  bool is_integer() const { return den == 1; }
  double to_double() const { return double(num) / double(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

} // namespace qspectra

#endif
