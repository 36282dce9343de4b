#ifndef TUBES_POLYNOMIAL_HPP
#define TUBES_POLYNOMIAL_HPP

#include "tubes/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tubes {

inline constexpr std::size_t kMaxVars = 32;

/// Exponent vector with cached total degree. Compared in graded-lex order,
/// the first variable being the most significant.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t deg = 0;

  std::uint8_t operator[](std::size_t i) const { return e[i]; }

  void set(std::size_t i, unsigned v) {
    if (v > 255) throw std::overflow_error("exponent exceeds 255");
    deg = static_cast<std::uint16_t>(deg - e[i] + v);
    e[i] = static_cast<std::uint8_t>(v);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned v = unsigned(a.e[i]) + b.e[i];
      if (v > 255) throw std::overflow_error("exponent exceeds 255");
      m.e[i] = static_cast<std::uint8_t>(v);
    }
    m.deg = static_cast<std::uint16_t>(a.deg + b.deg);
    return m;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
    m.deg = static_cast<std::uint16_t>(a.deg - b.deg);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg == b.deg && a.e == b.e; }

  /// grlex comparison, negative when a < b.
  friend int compare(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars);
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto b : m.e) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
  if (names.size() > kMaxVars) throw std::length_error("too many variables (max 32)");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw std::invalid_argument("duplicate variable " + names[i]);
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline bool same_vars(const VarList& a, const VarList& b) { return a == b || *a == *b; }

inline std::optional<std::size_t> index_of(const std::vector<std::string>& names, const std::string& v) {
  auto it = std::find(names.begin(), names.end(), v);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

/// Union of two variable lists: a's order first, then b's new names.
inline VarList union_vars(const VarList& a, const VarList& b) {
  if (same_vars(a, b)) return a;
  std::vector<std::string> out = *a;
  bool grew = false;
  for (const auto& v : *b)
    if (!index_of(out, v)) {
      out.push_back(v);
      grew = true;
    }
  return grew ? make_vars(std::move(out)) : a;
}

/// Sparse multivariate polynomial, terms kept in decreasing grlex order with
/// no zero coefficients.
template <class K>
class Polynomial {
 public:
  using Coeff = K;
  using Traits = scalar_traits<K>;
  using Term = std::pair<Monomial, K>;

  Polynomial() : vars_(empty_vars()) {}
  explicit Polynomial(VarList vars) : vars_(std::move(vars)) {}
  Polynomial(VarList vars, const K& c) : vars_(std::move(vars)) {
    if (!Traits::is_zero(c)) terms_.emplace_back(Monomial{}, c);
  }

  static Polynomial constant(const K& c) { return Polynomial(empty_vars(), c); }

  static Polynomial variable(const VarList& vars, std::size_t idx, unsigned power = 1) {
    if (idx >= vars->size()) throw std::out_of_range("variable index");
    Polynomial p(vars);
    Monomial m;
    m.set(idx, power);
    p.terms_.emplace_back(m, K(1));
    return p;
  }

  static Polynomial variable(const std::string& name) { return variable(make_vars({name}), 0); }

  static Polynomial from_terms(VarList vars, std::vector<Term> terms) {
    Polynomial p(std::move(vars));
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare(a.first, b.first) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
    }
    p.drop_zeros();
    return p;
  }

  const VarList& vars() const { return vars_; }
  const std::vector<std::string>& var_names() const { return *vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0); }
  K constant_term() const {
    if (!terms_.empty() && terms_.back().first.deg == 0) return terms_.back().second;
    return K(0);
  }
  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.front();
  }

  int total_degree() const { return terms_.empty() ? -1 : terms_.front().first.deg; }

  int degree_in(std::size_t idx) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m[idx]);
    return d;
  }

  int degree_in(const std::string& name) const {
    auto i = index_of(*vars_, name);
    if (!i) return is_zero() ? -1 : 0;
    return degree_in(*i);
  }

  std::optional<std::size_t> var_index(const std::string& name) const { return index_of(*vars_, name); }

  /// Names of variables occurring with nonzero exponent.
  std::vector<std::string> used_vars() const {
    std::vector<bool> used(nvars(), false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < nvars(); ++i)
        if (m[i]) used[i] = true;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < nvars(); ++i)
      if (used[i]) out.push_back((*vars_)[i]);
    return out;
  }

  bool uses(const std::string& name) const {
    auto i = var_index(name);
    return i && degree_in(*i) > 0;
  }

  /// Re-expresses over `target`, which must contain every used variable.
  Polynomial with_vars(const VarList& target) const {
    if (same_vars(vars_, target)) {
      Polynomial p(*this);
      p.vars_ = target;
      return p;
    }
    std::vector<int> map(nvars(), -1);
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto j = index_of(*target, (*vars_)[i]);
      if (j) map[i] = static_cast<int>(*j);
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial n;
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (!m[i]) continue;
        if (map[i] < 0) throw std::invalid_argument("variable " + (*vars_)[i] + " missing from target list");
        n.set(static_cast<std::size_t>(map[i]), m[i]);
      }
      out.emplace_back(n, c);
    }
    return from_terms(target, std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = add(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = multiply(*this, o); }
  Polynomial& operator*=(const K& c) {
    if (Traits::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }
  friend Polynomial operator*(Polynomial a, const K& c) { return a *= c; }
  friend Polynomial operator*(const K& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend Polynomial operator+(const Polynomial& a, const K& c) { return a + Polynomial(a.vars_, c); }
  friend Polynomial operator-(const Polynomial& a, const K& c) { return a - Polynomial(a.vars_, c); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (same_vars(a.vars_, b.vars_)) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned n) const {
    Polynomial result(vars_, K(1));
    Polynomial base = *this;
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  Polynomial derivative(std::size_t idx) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      if (!m[idx]) continue;
      Monomial n = m;
      n.set(idx, m[idx] - 1u);
      out.emplace_back(n, c * K(static_cast<long>(m[idx])));
    }
    Polynomial p(vars_);
    p.terms_ = std::move(out);
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return compare(a.first, b.first) > 0; });
    return p;
  }

  Polynomial derivative(const std::string& name) const {
    auto i = var_index(name);
    if (!i) return Polynomial(vars_);
    return derivative(*i);
  }

  /// Value at a full point given in variable order.
  K evaluate(std::span<const K> point) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluation point has wrong length");
    K sum(0);
    for (const auto& [m, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < nvars(); ++i)
        for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
      sum += t;
    }
    return sum;
  }

  /// Substitutes numeric values for some variables; others stay symbolic.
  Polynomial evaluate_partial(const std::map<std::string, K>& values) const {
    std::vector<std::pair<std::size_t, K>> subs;
    for (const auto& [name, v] : values)
      if (auto i = var_index(name)) subs.emplace_back(*i, v);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      K t = c;
      for (const auto& [i, v] : subs) {
        for (unsigned k = 0; k < m[i]; ++k) t *= v;
        n.set(i, 0);
      }
      out.emplace_back(n, std::move(t));
    }
    return from_terms(vars_, std::move(out));
  }

  Polynomial truncate(int max_degree) const {
    Polynomial p(vars_);
    for (const auto& t : terms_)
      if (t.first.deg <= max_degree) p.terms_.push_back(t);
    return p;
  }

  Polynomial homogeneous_part(int d) const {
    Polynomial p(vars_);
    for (const auto& t : terms_)
      if (t.first.deg == d) p.terms_.push_back(t);
    return p;
  }

  K coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.first == m) return t.second;
    return K(0);
  }

  template <class F>
  auto map_coefficients(F&& f) const -> Polynomial<decltype(f(std::declval<const K&>()))> {
    using K2 = decltype(f(std::declval<const K&>()));
    std::vector<typename Polynomial<K2>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m, f(c));
    return Polynomial<K2>::from_terms(vars_, std::move(out));
  }

  /// Groups terms by the exponents of `group`, returning coefficient
  /// polynomials in the remaining variables (kept in the same list).
  std::map<std::vector<int>, Polynomial> collect(const std::vector<std::string>& group) const {
    std::vector<std::size_t> idx;
    for (const auto& g : group)
      if (auto i = var_index(g)) idx.push_back(*i);
    std::map<std::vector<int>, std::vector<Term>> buckets;
    for (const auto& [m, c] : terms_) {
      std::vector<int> key;
      Monomial rest = m;
      for (auto i : idx) {
        key.push_back(m[i]);
        rest.set(i, 0);
      }
      buckets[key].emplace_back(rest, c);
    }
    std::map<std::vector<int>, Polynomial> out;
    for (auto& [k, ts] : buckets) out.emplace(k, from_terms(vars_, std::move(ts)));
    return out;
  }

  /// Exact quotient; throws if `d` does not divide this polynomial.
  Polynomial divide_exact(const Polynomial& d) const {
    auto [q, r] = divide(*this, d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }

  /// Single-divisor multivariate division in grlex order.
  friend std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& d) {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    VarList vars = union_vars(a.vars_, d.vars_);
    Polynomial f = a.with_vars(vars);
    Polynomial g = d.with_vars(vars);
    const auto& [lm, lc] = g.terms_.front();
    std::vector<Term> q;
    Polynomial r(vars);
    while (!f.is_zero()) {
      const auto& [fm, fc] = f.terms_.front();
      if (lm.divides(fm)) {
        Term t{fm / lm, fc / lc};
        Polynomial mono(vars);
        mono.terms_.push_back(t);
        q.push_back(std::move(t));
        f -= mono * g;
      } else {
        r.terms_.push_back(f.terms_.front());
        f.terms_.erase(f.terms_.begin());
      }
    }
    return {from_terms(vars, std::move(q)), std::move(r)};
  }

  /// Human-readable form, e.g. "x1^2 - 3/2*x1*x2 + I".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string mono;
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (!m[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += (*vars_)[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      bool neg = Traits::negative_sign(c);
      K a = neg ? K(-c) : c;
      std::string cs = tubes::to_string(a);
      std::string term;
      if (mono.empty())
        term = cs;
      else if (Traits::is_one(a))
        term = mono;
      else
        term = cs + "*" + mono;
      if (first)
        s += neg ? "-" + term : term;
      else
        s += neg ? " - " + term : " + " + term;
      first = false;
    }
    return s;
  }

 private:
  static const VarList& empty_vars() {
    static const VarList v = make_vars({});
    return v;
  }

  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return Traits::is_zero(t.second); }),
                 terms_.end());
  }

  static Polynomial add(const Polynomial& a0, const Polynomial& b0, bool subtract) {
    if (!same_vars(a0.vars_, b0.vars_)) {
      VarList v = union_vars(a0.vars_, b0.vars_);
      return add(a0.with_vars(v), b0.with_vars(v), subtract);
    }
    Polynomial out(a0.vars_);
    out.terms_.reserve(a0.terms_.size() + b0.terms_.size());
    auto ia = a0.terms_.begin();
    auto ib = b0.terms_.begin();
    while (ia != a0.terms_.end() || ib != b0.terms_.end()) {
      int c = ia == a0.terms_.end()   ? -1
              : ib == b0.terms_.end() ? 1
                                      : compare(ia->first, ib->first);
      if (c > 0) {
        out.terms_.push_back(*ia++);
      } else if (c < 0) {
        out.terms_.emplace_back(ib->first, subtract ? K(-ib->second) : ib->second);
        ++ib;
      } else {
        K s = subtract ? K(ia->second - ib->second) : K(ia->second + ib->second);
        if (!Traits::is_zero(s)) out.terms_.emplace_back(ia->first, std::move(s));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  static Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    if (!same_vars(a.vars_, b.vars_)) {
      VarList v = union_vars(a.vars_, b.vars_);
      return multiply(a.with_vars(v), b.with_vars(v));
    }
    if (a.is_zero() || b.is_zero()) return Polynomial(a.vars_);
    if (b.terms_.size() == 1 && b.terms_[0].first.deg == 0) return a * b.terms_[0].second;
    if (a.terms_.size() == 1 && a.terms_[0].first.deg == 0) return b * a.terms_[0].second;
    std::unordered_map<Monomial, K, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ma * mb, ca);
        if (inserted)
          it->second *= cb;
        else
          it->second += ca * cb;
      }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!Traits::is_zero(c)) out.emplace_back(m, std::move(c));
    Polynomial p(a.vars_);
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return compare(x.first, y.first) > 0; });
    p.terms_ = std::move(out);
    return p;
  }

  VarList vars_;
  std::vector<Term> terms_;
};

using QPoly = Polynomial<Rational>;
using CPoly = Polynomial<Gaussian>;

inline CPoly to_complex(const QPoly& p) {
  return p.map_coefficients([](const Rational& c) { return Gaussian(c); });
}

/// Throws std::domain_error if any coefficient is non-real.
inline QPoly to_real(const CPoly& p) {
  return p.map_coefficients([](const Gaussian& c) { return scalar_traits<Rational>::from_gaussian(c); });
}

inline QPoly real_part(const CPoly& p) {
  return p.map_coefficients([](const Gaussian& c) { return c.re; });
}

inline QPoly imag_part(const CPoly& p) {
  return p.map_coefficients([](const Gaussian& c) { return c.im; });
}

}  // namespace tubes

#endif
