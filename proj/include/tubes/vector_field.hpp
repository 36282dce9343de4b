#ifndef TUBES_VECTOR_FIELD_HPP
#define TUBES_VECTOR_FIELD_HPP

#include "tubes/linalg.hpp"
#include "tubes/parse.hpp"
#include "tubes/series.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

/// Polynomial vector field sum_i comps[i] d/d vars[i]. Components live in
/// a ring whose variables start with the coordinates; any further variables
/// are parameters.
template <class K>
class VectorField {
 public:
  using Poly = Polynomial<K>;

  VectorField() : vars_(make_vars({})), ring_(vars_) {}
  explicit VectorField(VarList vars) : vars_(std::move(vars)), ring_(vars_), comps_(vars_->size(), Poly(vars_)) {}
  VectorField(VarList vars, std::vector<Poly> comps) : vars_(std::move(vars)), ring_(vars_), comps_(std::move(comps)) {
    if (comps_.size() != vars_->size()) throw std::invalid_argument("component count differs from variable count");
    for (const auto& c : comps_) ring_ = union_vars(ring_, c.vars());
    for (auto& c : comps_) c = c.with_vars(ring_);
  }

  /// Fields written as expressions, one per variable.
  static VectorField parse(const std::vector<std::string>& names, const std::vector<std::string>& comps);

  const VarList& vars() const { return vars_; }
  const VarList& ring() const { return ring_; }
  const std::vector<std::string>& var_names() const { return *vars_; }
  std::size_t dim() const { return comps_.size(); }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool is_affine() const {
    for (const auto& c : comps_)
      if (c.total_degree() > 1) return false;
    return true;
  }

  int degree() const {
    int d = -1;
    for (const auto& c : comps_) d = std::max(d, c.total_degree());
    return d;
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) { return zip(a, b, false); }
  friend VectorField operator-(const VectorField& a, const VectorField& b) { return zip(a, b, true); }
  friend VectorField operator*(const K& c, VectorField a) {
    for (auto& p : a.comps_) p *= c;
    return a;
  }
  friend VectorField operator*(const Poly& f, const VectorField& a) {
    std::vector<Poly> comps;
    for (const auto& p : a.comps_) comps.push_back(f * p);
    return VectorField(a.vars_, std::move(comps));
  }
  friend VectorField operator-(VectorField a) {
    for (auto& p : a.comps_) p = -p;
    return a;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) {
    if (!same_vars(a.vars_, b.vars_)) return false;
    for (std::size_t i = 0; i < a.comps_.size(); ++i)
      if (a.comps_[i] != b.comps_[i]) return false;
    return true;
  }

  /// Evaluates parameters; the result lives over the coordinates only if
  /// every parameter is assigned.
  VectorField evaluate_params(const std::map<std::string, K>& values) const {
    std::vector<Poly> comps;
    for (const auto& c : comps_) {
      Poly e = c.evaluate_partial(values);
      bool only_coords = true;
      for (const auto& v : e.used_vars())
        if (!index_of(*vars_, v)) only_coords = false;
      comps.push_back(only_coords ? e.with_vars(vars_) : e);
    }
    return VectorField(vars_, std::move(comps));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (comps_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + comps_[i].to_string() + ")*d/d" + (*vars_)[i];
    }
    return s.empty() ? "0" : s;
  }

 private:
  static VectorField zip(const VectorField& a, const VectorField& b, bool subtract) {
    if (!same_vars(a.vars_, b.vars_)) throw std::invalid_argument("vector fields over different variables");
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < a.comps_.size(); ++i)
      comps.push_back(subtract ? a.comps_[i] - b.comps_[i] : a.comps_[i] + b.comps_[i]);
    return VectorField(a.vars_, std::move(comps));
  }

  VarList vars_;
  VarList ring_;
  std::vector<Poly> comps_;
};

using QField = VectorField<Rational>;
using CField = VectorField<Gaussian>;

/// X(p) = sum_i X_i dp/dx_i. Variables of p outside X's coordinates are
/// treated as parameters.
template <class K>
Polynomial<K> apply_field(const VectorField<K>& x, const Polynomial<K>& p) {
  VarList u = union_vars(x.ring(), p.vars());
  Polynomial<K> q = p.with_vars(u);
  Polynomial<K> out(u);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    Polynomial<K> d = q.derivative(x.var_names()[i]);
    if (!d.is_zero()) out += x[i].with_vars(u) * d;
  }
  return out;
}

/// Requires p's variables to be coordinates of x.
template <class K>
Polynomial<K> apply_field_strict(const VectorField<K>& x, const Polynomial<K>& p) {
  for (const auto& v : p.used_vars())
    if (!index_of(x.var_names(), v)) throw std::invalid_argument("variable " + v + " is not a coordinate of the field");
  return apply_field(x, p);
}

template <class K>
VectorField<K> lie_bracket(const VectorField<K>& x, const VectorField<K>& y) {
  if (!same_vars(x.vars(), y.vars())) throw std::invalid_argument("lie_bracket: variable lists differ");
  std::vector<Polynomial<K>> comps;
  comps.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) comps.push_back(apply_field(x, y[i]) - apply_field(y, x[i]));
  return VectorField<K>(x.vars(), std::move(comps));
}

template <class K>
VectorField<K> VectorField<K>::parse(const std::vector<std::string>& names, const std::vector<std::string>& comps) {
  if (names.size() != comps.size()) throw std::invalid_argument("component count differs from variable count");
  VarList vars = make_vars(names);
  std::vector<Poly> out;
  for (const auto& c : comps) {
    CPoly p = parse_polynomial(c, names);
    for (const auto& v : p.used_vars())
      if (!index_of(names, v)) throw std::invalid_argument("field component uses unknown variable " + v);
    if constexpr (scalar_traits<K>::is_complex)
      out.push_back(p.with_vars(vars));
    else
      out.push_back(to_real(p).with_vars(vars));
  }
  return VectorField(vars, std::move(out));
}

/// Holomorphic field on C^n. The variable list must not contain conjugate
/// names of its own members.
struct HoloField {
  CField field;

  HoloField() = default;
  explicit HoloField(CField f) : field(std::move(f)) {
    const auto& names = field.var_names();
    for (const auto& v : names)
      if (index_of(names, bar_name(v))) throw std::invalid_argument("holomorphic field depends on conjugate variable " + bar_name(v));
  }
};

/// Real coordinate names (x_j, y_j) for a complex coordinate z_j.
inline std::pair<std::string, std::string> real_names(const std::string& z) {
  if (!z.empty() && z[0] == 'z') return {"x" + z.substr(1), "y" + z.substr(1)};
  return {"x_" + z, "y_" + z};
}

inline std::vector<std::string> realified_vars(const std::vector<std::string>& holo) {
  std::vector<std::string> xs, ys;
  for (const auto& z : holo) {
    auto [x, y] = real_names(z);
    xs.push_back(x);
    ys.push_back(y);
  }
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}

/// Real field on R^{2n} with z_j = x_j + i y_j: the x_j component is
/// Re f_j(x+iy), the y_j component Im f_j(x+iy).
inline QField realify(const HoloField& z) {
  const auto& f = z.field;
  const std::size_t n = f.dim();
  VarList rv = make_vars(realified_vars(f.var_names()));
  Assignment<Gaussian> subs;
  for (std::size_t j = 0; j < n; ++j) {
    CPoly xj = CPoly::variable(rv, j), yj = CPoly::variable(rv, n + j);
    subs[f.var_names()[j]] = CRational(xj + yj * Gaussian::i());
  }
  std::vector<QPoly> comps(2 * n, QPoly(rv));
  for (std::size_t j = 0; j < n; ++j) {
    CPoly g = substitute(f[j], subs).as_polynomial().with_vars(rv);
    comps[j] = real_part(g);
    comps[n + j] = imag_part(g);
  }
  return QField(rv, std::move(comps));
}

template <class K>
struct TangencyCertificate {
  Polynomial<K> multiplier;
  Polynomial<K> image;  // X(P)
  int degree_bound = 0;
};

/// All monomials of total degree <= d in n variables.
inline std::vector<Monomial> monomials_up_to(std::size_t n, int d) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      Monomial mm;
      for (std::size_t k = 0; k < n; ++k) mm.set(k, e[k]);
      out.push_back(mm);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = static_cast<unsigned>(k);
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (d >= 0) rec(0, d);
  return out;
}

/// Q with X(P) = Q P and deg Q <= max(0, deg X(P) - deg P), by a linear
/// solve over Q's coefficients; nullopt when X is not tangent.
template <class K>
std::optional<TangencyCertificate<K>> tangency_multiplier(const VectorField<K>& x, const Polynomial<K>& p) {
  if (p.is_zero()) throw std::invalid_argument("tangency to the zero polynomial");
  Polynomial<K> xp = apply_field(x, p);
  VarList u = union_vars(xp.vars(), p.vars());
  xp = xp.with_vars(u);
  Polynomial<K> pp = p.with_vars(u);
  TangencyCertificate<K> cert{Polynomial<K>(u), xp, 0};
  if (xp.is_zero()) return cert;
  int bound = std::max(0, xp.total_degree() - pp.total_degree());
  cert.degree_bound = bound;
  auto monos = monomials_up_to(u->size(), bound);
  // Rows indexed by monomials of Q*P and X(P).
  std::map<std::vector<uint8_t>, std::size_t> row_of;
  auto key = [&](const Monomial& m) { return std::vector<uint8_t>(m.e.begin(), m.e.begin() + static_cast<long>(u->size())); };
  std::vector<std::vector<std::pair<std::size_t, K>>> cols(monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j) {
    for (const auto& [m, c] : pp.terms()) {
      auto k = key(m * monos[j]);
      auto it = row_of.try_emplace(k, row_of.size()).first;
      cols[j].emplace_back(it->second, c);
    }
  }
  for (const auto& [m, c] : xp.terms()) row_of.try_emplace(key(m), row_of.size());
  Matrix<K> a(row_of.size(), monos.size(), K(0));
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (const auto& [r, c] : cols[j]) a(r, j) += c;
  std::vector<K> b(row_of.size(), K(0));
  for (const auto& [m, c] : xp.terms()) b[row_of.at(key(m))] = c;
  auto sol = solve_linear(a, b);
  if (!sol) return std::nullopt;
  std::vector<typename Polynomial<K>::Term> terms;
  for (std::size_t j = 0; j < monos.size(); ++j)
    if (!scalar_traits<K>::is_zero((*sol)[j])) terms.emplace_back(monos[j], (*sol)[j]);
  cert.multiplier = Polynomial<K>::from_terms(u, std::move(terms));
  if (cert.multiplier * pp != xp) throw std::logic_error("tangency multiplier failed verification");
  return cert;
}

/// Component matrix (rows = coordinates, columns = fields).
template <class K>
Matrix<Polynomial<K>> component_matrix(const std::vector<VectorField<K>>& fields) {
  if (fields.empty()) throw std::invalid_argument("no fields");
  const std::size_t n = fields[0].dim();
  Matrix<Polynomial<K>> m(n, fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (!same_vars(fields[j].vars(), fields[0].vars())) throw std::invalid_argument("fields over different variables");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = fields[j][i];
  }
  return m;
}

template <class K>
std::size_t rank_at(const std::vector<VectorField<K>>& fields, const std::vector<K>& point) {
  if (fields.empty()) return 0;
  const std::size_t n = fields[0].dim();
  if (point.size() != n) throw std::invalid_argument("point dimension differs from field dimension");
  Matrix<K> m(n, fields.size(), K(0));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (!same_vars(fields[j].vars(), fields[0].vars())) throw std::invalid_argument("fields over different variables");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = fields[j][i].evaluate(std::span<const K>(point));
  }
  return field_rank(m);
}

/// Index subsets of size k from {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

template <class K>
struct Minor {
  std::vector<std::size_t> rows, cols;
  Polynomial<K> value;
};

/// All maximal minors of the component matrix.
template <class K>
std::vector<Minor<K>> minors_scan(const std::vector<VectorField<K>>& fields) {
  Matrix<Polynomial<K>> m = component_matrix(fields);
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<Minor<K>> out;
  for (const auto& rows : combinations(m.rows(), r)) {
    for (const auto& cols : combinations(m.cols(), r)) {
      Matrix<Polynomial<K>> sub(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub(i, j) = m(rows[i], cols[j]);
      out.push_back({rows, cols, det_exact(sub)});
    }
  }
  return out;
}

}  // namespace tubes

#endif
