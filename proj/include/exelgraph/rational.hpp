#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace exelgraph {

/// Exact rational number on 64-bit integers.
///
/// Intermediate products are formed in 128 bits and reduced before being
/// narrowed back; a result that does not fit throws std::overflow_error
/// instead of wrapping. The denominator is always positive and the pair is
/// always in lowest terms, so structural equality is numeric equality.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == b.den_) return from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
    const __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    const __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational{};
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    if (a.num_ == 0) return Rational{};
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  /// Canonical "p/q" form used in every serialized report.
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "p/q" or a bare integer "p".
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text));
      return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational{};
    constexpr __int128 lo = INT64_MIN + 1;
    constexpr __int128 hi = INT64_MAX;
    if (d == 1 && n >= lo && n <= hi) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      return r;
    }
    if (n >= lo && n <= hi && d <= hi) {
      const auto g = std::gcd(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
      Rational r;
      r.num_ = static_cast<std::int64_t>(n) / g;
      r.den_ = static_cast<std::int64_t>(d) / g;
      return r;
    }
    const __int128 g = gcd_wide(n, d);
    n /= g;
    d /= g;
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Gaussian rational re + i·im.
struct Gaussian {
  Rational re;
  Rational im;

  constexpr Gaussian() = default;
  constexpr Gaussian(Rational r) : re(r) {}  // NOLINT(implicit)
  constexpr Gaussian(std::int64_t r) : re(r) {}  // NOLINT(implicit)
  Gaussian(Rational r, Rational i) : re(r), im(i) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Gaussian conj() const { return {re, -im}; }
  /// |z|², always a nonnegative rational.
  Rational norm2() const { return re * re + im * im; }

  Gaussian operator-() const { return {-re, -im}; }
  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    const Rational n = b.norm2();
    if (n.is_zero()) throw std::domain_error("gaussian division by zero");
    const Gaussian t = a * b.conj();
    return {t.re / n, t.im / n};
  }
  Gaussian& operator+=(const Gaussian& o) { return *this = *this + o; }
  Gaussian& operator-=(const Gaussian& o) { return *this = *this - o; }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }

  friend bool operator==(const Gaussian&, const Gaussian&) = default;

  std::string str() const {
    if (im.is_zero()) return re.str();
    return re.str() + (im.sign() < 0 ? "-" : "+") + (im.sign() < 0 ? (-im).str() : im.str()) + "i";
  }
  friend std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.str(); }
};

}  // namespace exelgraph
