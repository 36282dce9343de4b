#ifndef TUBES_SCALAR_HPP
#define TUBES_SCALAR_HPP

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tubes {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Floats are rejected.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find_first_of(".eE") != std::string::npos)
    throw std::invalid_argument("floating-point literal not allowed: " + s);
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// a + b i with a, b rational.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(const Rational& r) : re(r) {}  // NOLINT: rationals embed implicitly
  Gaussian(long r) : re(r) {}             // NOLINT
  Gaussian(const Rational& r, const Rational& i) : re(r), im(i) {}

  static Gaussian i() { return Gaussian(0, 1); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gaussian conj() const { return Gaussian(re, -im); }
  Rational norm() const { return re * re + im * im; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    if (o.is_real()) {
      re *= o.re;
      im *= o.re;
      return *this;
    }
    if (is_real()) {
      im = re * o.im;
      re *= o.re;
      return *this;
    }
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_real()) {
      re /= o.re;
      im /= o.re;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return Gaussian(-a.re, -a.im); }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

inline std::string to_string(const Gaussian& g) {
  if (g.is_real()) return to_string(g.re);
  if (sgn(g.re) == 0) {
    if (g.im == 1) return "I";
    if (g.im == -1) return "-I";
    return to_string(g.im) + "*I";
  }
  std::string s = "(" + to_string(g.re);
  if (sgn(g.im) > 0) s += "+";
  if (g.im == 1) return s + "I)";
  if (g.im == -1) return s + "-I)";
  return s + to_string(g.im) + "*I)";
}

/// Uniform access to the two coefficient fields.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_complex = false;
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_one(const Rational& a) { return a == 1; }
  static Rational conj(const Rational& a) { return a; }
  static Rational real(const Rational& a) { return a; }
  static Rational imag(const Rational&) { return Rational(0); }
  static Rational from_rational(const Rational& a) { return a; }
  static Rational from_gaussian(const Gaussian& g) {
    if (!g.is_real()) throw std::domain_error("non-real coefficient " + to_string(g));
    return g.re;
  }
  static bool negative_sign(const Rational& a) { return sgn(a) < 0; }
};

template <>
struct scalar_traits<Gaussian> {
  static constexpr bool is_complex = true;
  static bool is_zero(const Gaussian& a) { return a.is_zero(); }
  static bool is_one(const Gaussian& a) { return a.is_real() && a.re == 1; }
  static Gaussian conj(const Gaussian& a) { return a.conj(); }
  static Rational real(const Gaussian& a) { return a.re; }
  static Rational imag(const Gaussian& a) { return a.im; }
  static Gaussian from_rational(const Rational& a) { return Gaussian(a); }
  static Gaussian from_gaussian(const Gaussian& g) { return g; }
  static bool negative_sign(const Gaussian& a) {
    return a.is_real() ? sgn(a.re) < 0 : (sgn(a.re) == 0 && sgn(a.im) < 0);
  }
};

inline std::size_t hash_value(const Rational& r) {
  return std::hash<std::string>{}(r.get_str(16));
}

}  // namespace tubes

#endif
