#ifndef TUBES_RATIONAL_FUNCTION_HPP
#define TUBES_RATIONAL_FUNCTION_HPP

#include "tubes/polynomial.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace tubes {

/// num/den with den != 0. Never reduced by gcd; equality is decided by
/// cross-multiplication.
template <class K>
class RationalFunction {
 public:
  using Poly = Polynomial<K>;

  RationalFunction() : num_(), den_(Poly::constant(K(1))) {}
  RationalFunction(Poly num)  // NOLINT: polynomials embed implicitly
      : num_(std::move(num)), den_(num_.vars(), K(1)) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    align();
    normalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const VarList& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// The numerator when the denominator is constant; throws otherwise.
  Poly as_polynomial() const {
    if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial");
    return num_;
  }

  RationalFunction with_vars(const VarList& v) const {
    RationalFunction r;
    r.num_ = num_.with_vars(v);
    r.den_ = den_.with_vars(v);
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return combine(a, b, false);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return combine(a, b, true);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  RationalFunction pow(unsigned n) const {
    RationalFunction r;
    r.num_ = num_.pow(n);
    r.den_ = den_.pow(n);
    r.normalize();
    return r;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction derivative(const std::string& var) const {
    Poly dn = num_.derivative(var);
    Poly dd = den_.derivative(var);
    if (dd.is_zero()) return RationalFunction(dn, den_);
    return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
  }

  RationalFunction evaluate_partial(const std::map<std::string, K>& values) const {
    Poly d = den_.evaluate_partial(values);
    if (d.is_zero()) throw std::domain_error("denominator vanishes identically after evaluation");
    return RationalFunction(num_.evaluate_partial(values), d);
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void align() {
    if (!same_vars(num_.vars(), den_.vars())) {
      VarList v = union_vars(num_.vars(), den_.vars());
      num_ = num_.with_vars(v);
      den_ = den_.with_vars(v);
    }
  }

  // Constant denominators are folded into the numerator; otherwise the
  // denominator's leading coefficient is made 1.
  void normalize() {
    const K lc = den_.leading_term().second;
    if (den_.is_constant()) {
      num_ *= K(K(1) / lc);
      den_ = Poly(num_.vars(), K(1));
      return;
    }
    if (!scalar_traits<K>::is_one(lc)) {
      K inv = K(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  static RationalFunction combine(const RationalFunction& a, const RationalFunction& b, bool subtract) {
    auto sum = [&](const Poly& x, const Poly& y) { return subtract ? x - y : x + y; };
    if (a.den_ == b.den_) return RationalFunction(sum(a.num_, b.num_), a.den_);
    if (b.den_.is_constant()) return RationalFunction(sum(a.num_, b.num_ * a.den_), a.den_);
    if (a.den_.is_constant()) return RationalFunction(sum(a.num_ * b.den_, b.num_), b.den_);
    // Use the larger denominator when one divides the other.
    if (b.den_.total_degree() <= a.den_.total_degree()) {
      auto [q, r] = divide(a.den_, b.den_);
      if (r.is_zero()) return RationalFunction(sum(a.num_, b.num_ * q), a.den_);
    } else {
      auto [q, r] = divide(b.den_, a.den_);
      if (r.is_zero()) return RationalFunction(sum(a.num_ * q, b.num_), b.den_);
    }
    return RationalFunction(sum(a.num_ * b.den_, b.num_ * a.den_), a.den_ * b.den_);
  }

  Poly num_;
  Poly den_;
};

using CRational = RationalFunction<Gaussian>;
using QRational = RationalFunction<Rational>;

template <class K>
using Assignment = std::map<std::string, RationalFunction<K>>;

namespace detail {

template <class K>
RationalFunction<K> substitute_impl(const Polynomial<K>& p, const Assignment<K>& assignment, bool strict) {
  const auto& names = p.var_names();
  VarList out_vars = make_vars({});
  for (const auto& [v, f] : assignment) out_vars = union_vars(out_vars, f.vars());
  // Assigned variables that actually occur; the rest stay in place or error.
  std::vector<std::string> assigned;
  std::vector<int> max_deg;
  for (std::size_t i = 0; i < names.size(); ++i) {
    int d = std::max(0, p.degree_in(i));
    if (d == 0) continue;
    if (assignment.count(names[i])) {
      assigned.push_back(names[i]);
      max_deg.push_back(d);
    } else if (strict) {
      throw std::invalid_argument("missing assignment for variable " + names[i]);
    } else {
      out_vars = union_vars(out_vars, make_vars({names[i]}));
    }
  }
  // Powers num_i^k and den_i^k, k <= max_deg[i].
  const std::size_t na = assigned.size();
  std::vector<std::vector<Polynomial<K>>> npow(na), dpow(na);
  Polynomial<K> common(out_vars, K(1));
  for (std::size_t i = 0; i < na; ++i) {
    const auto f = assignment.at(assigned[i]).with_vars(out_vars);
    if (f.den().is_zero()) throw std::domain_error("zero denominator in assignment for " + assigned[i]);
    npow[i].push_back(Polynomial<K>(out_vars, K(1)));
    dpow[i].push_back(Polynomial<K>(out_vars, K(1)));
    for (int k = 1; k <= max_deg[i]; ++k) {
      npow[i].push_back(npow[i].back() * f.num());
      dpow[i].push_back(f.den().is_constant() ? dpow[i].back() : dpow[i].back() * f.den());
    }
    common *= dpow[i][max_deg[i]];
  }
  Polynomial<K> num(out_vars);
  for (const auto& [key, coef] : p.collect(assigned)) {
    Polynomial<K> c = coef.with_vars(out_vars);
    for (std::size_t i = 0; i < na; ++i) {
      if (key[i] > 0) c *= npow[i][key[i]];
      if (max_deg[i] - key[i] > 0) c *= dpow[i][max_deg[i] - key[i]];
    }
    num += c;
  }
  return RationalFunction<K>(num, common);
}

}  // namespace detail

/// Exact composition p(assignment). Every variable occurring in p must be
/// assigned; the result denominator is a product of assignment denominators.
template <class K>
RationalFunction<K> substitute(const Polynomial<K>& p, const Assignment<K>& assignment) {
  return detail::substitute_impl(p, assignment, true);
}

/// As substitute(), but unassigned variables are left in place.
template <class K>
RationalFunction<K> substitute_partial(const Polynomial<K>& p, const Assignment<K>& assignment) {
  return detail::substitute_impl(p, assignment, false);
}

template <class K>
RationalFunction<K> substitute_partial(const RationalFunction<K>& f, const Assignment<K>& assignment) {
  return substitute_partial(f.num(), assignment) / substitute_partial(f.den(), assignment);
}

}  // namespace tubes

#endif
