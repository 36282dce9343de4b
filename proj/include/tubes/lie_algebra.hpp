#ifndef TUBES_LIE_ALGEBRA_HPP
#define TUBES_LIE_ALGEBRA_HPP

#include "tubes/vector_field.hpp"

#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

/// Structure constants c_{ij}^k of a real Lie algebra in a fixed basis.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  /// [B_i, B_j] as a coordinate vector.
  QVector bracket_basis(std::size_t i, std::size_t j) const {
    QVector v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = (*this)(i, j, k);
    return v;
  }

  QVector bracket(const QVector& a, const QVector& b) const {
    QVector out(dim_, Rational(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (sgn(b[j]) == 0) continue;
        Rational ab = a[i] * b[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn((*this)(i, j, k)) != 0) out[k] += ab * (*this)(i, j, k);
      }
    }
    return out;
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if ((*this)(i, j, k) != -(*this)(j, i, k)) return false;
    return true;
  }

  bool satisfies_jacobi() const {
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a + 1; b < dim_; ++b)
        for (std::size_t c = b + 1; c < dim_; ++c) {
          QVector s = bracket(unit(a), bracket(unit(b), unit(c)));
          QVector t = bracket(unit(b), bracket(unit(c), unit(a)));
          QVector u = bracket(unit(c), bracket(unit(a), unit(b)));
          for (std::size_t k = 0; k < dim_; ++k)
            if (sgn(s[k] + t[k] + u[k]) != 0) return false;
        }
    return true;
  }

  QVector unit(std::size_t i) const {
    QVector v(dim_, Rational(0));
    v[i] = 1;
    return v;
  }

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

/// Subspace of Q^n held as a reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient) {}
  Subspace(std::size_t ambient, const std::vector<QVector>& gens) : n_(ambient) {
    for (const auto& g : gens) add(g);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<QVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

  /// Residual of v after reduction by the echelon basis.
  QVector reduce(QVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational f = v[piv_[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(rows_[r][j]) != 0) v[j] -= f * rows_[r][j];
    }
    return v;
  }

  bool contains(const QVector& v) const {
    for (const auto& x : reduce(v))
      if (sgn(x) != 0) return false;
    return true;
  }

  bool contains(const Subspace& o) const {
    for (const auto& v : o.rows_)
      if (!contains(v)) return false;
    return true;
  }

  /// Returns true if the dimension grew.
  bool add(const QVector& v) {
    if (v.size() != n_) throw std::invalid_argument("vector length differs from ambient dimension");
    QVector w = reduce(v);
    std::size_t p = 0;
    while (p < n_ && sgn(w[p]) == 0) ++p;
    if (p == n_) return false;
    Rational inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    for (auto& r : rows_) {
      Rational f = r[p];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r[j] -= f * w[j];
    }
    // Keep rows ordered by pivot.
    std::size_t at = 0;
    while (at < piv_.size() && piv_[at] < p) ++at;
    rows_.insert(rows_.begin() + static_cast<long>(at), std::move(w));
    piv_.insert(piv_.begin() + static_cast<long>(at), p);
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  std::size_t n_ = 0;
  std::vector<QVector> rows_;
  std::vector<std::size_t> piv_;
};

/// span{[a, b] : a in A, b in B}.
inline Subspace bracket_span(const StructureConstants& sc, const Subspace& a, const Subspace& b) {
  Subspace out(sc.dim());
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) out.add(sc.bracket(x, y));
  return out;
}

inline bool is_subalgebra(const StructureConstants& sc, const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j)
      if (!s.contains(sc.bracket(s.basis()[i], s.basis()[j]))) return false;
  return true;
}

/// Real coordinates of `x` in the real span of `basis`, or nullopt.
/// Complex coefficients are split into real and imaginary equations.
template <class K>
std::optional<QVector> expand_fields(const VectorField<K>& x, const std::vector<VectorField<K>>& basis) {
  const std::size_t m = basis.size();
  std::map<std::pair<std::size_t, std::vector<uint8_t>>, std::size_t> row_of;
  auto key = [](std::size_t comp, const Monomial& mono, std::size_t nv) {
    return std::make_pair(comp, std::vector<uint8_t>(mono.e.begin(), mono.e.begin() + static_cast<long>(nv)));
  };
  VarList ring = x.ring();
  for (const auto& b : basis) {
    if (!same_vars(b.vars(), x.vars())) throw std::invalid_argument("expand_in_basis: variable lists differ");
    ring = union_vars(ring, b.ring());
  }
  const std::size_t nv = ring->size();
  auto collect_rows = [&](const VectorField<K>& f) {
    std::vector<std::pair<std::size_t, K>> entries;
    for (std::size_t i = 0; i < f.dim(); ++i) {
      const Polynomial<K> c = f[i].with_vars(ring);
      for (const auto& [mono, coef] : c.terms()) {
        auto it = row_of.try_emplace(key(i, mono, nv), row_of.size()).first;
        entries.emplace_back(it->second, coef);
      }
    }
    return entries;
  };
  std::vector<std::vector<std::pair<std::size_t, K>>> cols;
  for (const auto& b : basis) cols.push_back(collect_rows(b));
  auto rhs = collect_rows(x);
  constexpr bool cplx = scalar_traits<K>::is_complex;
  const std::size_t rows = row_of.size() * (cplx ? 2 : 1);
  QMatrix a(rows, m, Rational(0));
  QVector b(rows, Rational(0));
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [r, c] : cols[j]) {
      a(r, j) += scalar_traits<K>::real(c);
      if constexpr (cplx) a(row_of.size() + r, j) += scalar_traits<K>::imag(c);
    }
  for (const auto& [r, c] : rhs) {
    b[r] += scalar_traits<K>::real(c);
    if constexpr (cplx) b[row_of.size() + r] += scalar_traits<K>::imag(c);
  }
  return solve_linear(a, b);
}

/// Real rank of a list of fields.
template <class K>
std::size_t real_rank(const std::vector<VectorField<K>>& fields) {
  if (fields.empty()) return 0;
  std::map<std::pair<std::size_t, std::vector<uint8_t>>, std::size_t> row_of;
  VarList ring = fields[0].ring();
  for (const auto& f : fields) ring = union_vars(ring, f.ring());
  const std::size_t nv = ring->size();
  std::vector<std::vector<std::pair<std::size_t, K>>> cols;
  for (const auto& f : fields) {
    std::vector<std::pair<std::size_t, K>> entries;
    for (std::size_t i = 0; i < f.dim(); ++i) {
      const Polynomial<K> c = f[i].with_vars(ring);
      for (const auto& [mono, coef] : c.terms()) {
        auto k = std::make_pair(i, std::vector<uint8_t>(mono.e.begin(), mono.e.begin() + static_cast<long>(nv)));
        auto it = row_of.try_emplace(k, row_of.size()).first;
        entries.emplace_back(it->second, coef);
      }
    }
    cols.push_back(std::move(entries));
  }
  constexpr bool cplx = scalar_traits<K>::is_complex;
  QMatrix a(row_of.size() * (cplx ? 2 : 1), fields.size(), Rational(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, c] : cols[j]) {
      a(r, j) += scalar_traits<K>::real(c);
      if constexpr (cplx) a(row_of.size() + r, j) += scalar_traits<K>::imag(c);
    }
  return rank(a);
}

/// Ordered basis of fields together with its structure constants.
template <class K>
struct LieAlgebraPresentation {
  std::vector<VectorField<K>> basis;
  StructureConstants constants;

  std::size_t dim() const { return basis.size(); }

  /// Computes the structure constants; throws if a bracket leaves the span.
  static LieAlgebraPresentation from_basis(std::vector<VectorField<K>> basis) {
    LieAlgebraPresentation out;
    out.constants = StructureConstants(basis.size());
    if (real_rank(basis) != basis.size()) throw std::invalid_argument("basis fields are linearly dependent");
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        auto c = expand_fields(lie_bracket(basis[i], basis[j]), basis);
        if (!c)
          throw std::logic_error("internal error: bracket of basis fields " + std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " is not in the span");
        for (std::size_t k = 0; k < basis.size(); ++k) {
          out.constants(i, j, k) = (*c)[k];
          out.constants(j, i, k) = -(*c)[k];
        }
      }
    out.basis = std::move(basis);
    return out;
  }

  /// Field sum_k v_k B_k.
  VectorField<K> field(const QVector& v) const {
    VectorField<K> out(basis.at(0).vars());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (sgn(v[k]) != 0) out = out + K(scalar_traits<K>::from_rational(v[k])) * basis[k];
    return out;
  }
};

template <class K>
std::optional<QVector> expand_in_basis(const VectorField<K>& x, const LieAlgebraPresentation<K>& l) {
  return expand_fields(x, l.basis);
}

/// Smallest bracket-closed subspace containing the seeds.
inline Subspace generated_subalgebra(const StructureConstants& sc, const std::vector<QVector>& seeds) {
  Subspace s(sc.dim(), seeds);
  bool grew = true;
  while (grew) {
    grew = false;
    auto b = s.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (s.add(sc.bracket(b[i], b[j]))) grew = true;
  }
  return s;
}

template <class K>
Subspace generated_subalgebra(const std::vector<VectorField<K>>& seeds, const LieAlgebraPresentation<K>& ambient) {
  std::vector<QVector> coords;
  for (const auto& s : seeds) {
    auto c = expand_in_basis(s, ambient);
    if (!c) throw std::invalid_argument("seed field lies outside the ambient algebra");
    coords.push_back(*c);
  }
  return generated_subalgebra(ambient.constants, coords);
}

/// Structure constants of a subalgebra in its echelon basis.
inline StructureConstants restrict_constants(const StructureConstants& sc, const Subspace& s) {
  StructureConstants out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      QVector v = sc.bracket(s.basis()[i], s.basis()[j]);
      // Coordinates in the echelon basis are the pivot entries.
      QVector rest = v;
      for (std::size_t k = 0; k < s.dim(); ++k) {
        Rational f = v[s.pivots()[k]];
        out(i, j, k) = f;
        for (std::size_t t = 0; t < sc.dim(); ++t) rest[t] -= f * s.basis()[k][t];
      }
      for (const auto& x : rest)
        if (sgn(x) != 0) throw std::invalid_argument("subspace is not a subalgebra");
    }
  return out;
}

struct NilpotencyResult {
  bool nilpotent = false;
  std::vector<std::size_t> series_dims;
};

/// Lower central series L, [L,L], [L,[L,L]], ... until stable or zero.
inline NilpotencyResult is_nilpotent(const StructureConstants& sc) {
  NilpotencyResult r;
  Subspace whole(sc.dim());
  for (std::size_t i = 0; i < sc.dim(); ++i) whole.add(sc.unit(i));
  Subspace cur = whole;
  r.series_dims.push_back(cur.dim());
  while (cur.dim() > 0) {
    Subspace next = bracket_span(sc, whole, cur);
    r.series_dims.push_back(next.dim());
    if (next.dim() == cur.dim()) break;
    cur = std::move(next);
  }
  r.nilpotent = r.series_dims.back() == 0;
  return r;
}

struct ObstructionCertificate {
  struct Condition {
    std::string name;
    bool holds = true;
    std::string detail;
  };
  std::vector<Condition> conditions;
  std::vector<Rational> z4_coefficients;  // of sampled iterated brackets
  bool passed = false;

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : conditions) {
      os << c.name << ": " << (c.holds ? "holds" : "FAILED");
      if (!c.detail.empty()) os << " (" << c.detail << ")";
      os << "; ";
    }
    os << "sampled Z4-coefficients:";
    for (const auto& z : z4_coefficients) os << " " << to_string(z);
    return os.str();
  }
};

namespace detail {
inline std::string vec_string(const QVector& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(v[k]) + "*B" + std::to_string(k + 1);
  }
  return s.empty() ? "0" : s;
}
}  // namespace detail

/// Checks (a) [B_z1, B_z4] = -B_z4, (b) [B_z1, S] in S, (c) [iso, B_z4] in S,
/// (d) [iso, S] in S, (e) iso in S, with S spanned by basis vectors s_idx.
/// Together these force every iterated bracket [Z1',[Z1',...,[Z1',Z4']]]
/// with Z1' = Z - B_z1, Z4' = B_z4 + W (Z, W in iso) to have B_z4-coefficient 1.
inline ObstructionCertificate non_nilpotent_transitive_obstruction(const StructureConstants& sc,
                                                                   const std::vector<QVector>& iso, std::size_t z1,
                                                                   std::size_t z4, const std::vector<std::size_t>& s_idx,
                                                                   unsigned seed = 1, int depth = 6) {
  ObstructionCertificate cert;
  const std::size_t n = sc.dim();
  std::vector<bool> in_s(n, false);
  for (auto i : s_idx) in_s.at(i) = true;
  auto in_span_s = [&](const QVector& v) {
    for (std::size_t k = 0; k < n; ++k)
      if (!in_s[k] && sgn(v[k]) != 0) return false;
    return true;
  };
  auto note = [&](const std::string& name, bool ok, const std::string& detail) {
    cert.conditions.push_back({name, ok, detail});
  };
  if (in_s.at(z4) || in_s.at(z1)) note("setup", false, "S must exclude Z1 and Z4");

  QVector a = sc.bracket(sc.unit(z1), sc.unit(z4));
  QVector want(n, Rational(0));
  want[z4] = -1;
  note("(a) [Z1,Z4] = -Z4", a == want, a == want ? "" : "[Z1,Z4] = " + detail::vec_string(a));

  std::string bad;
  for (auto s : s_idx) {
    QVector v = sc.bracket(sc.unit(z1), sc.unit(s));
    if (!in_span_s(v)) bad = "[Z1,B" + std::to_string(s + 1) + "] = " + detail::vec_string(v);
  }
  note("(b) [Z1,S] in S", bad.empty(), bad);

  bad.clear();
  for (const auto& w : iso) {
    QVector v = sc.bracket(w, sc.unit(z4));
    if (!in_span_s(v)) bad = "[" + detail::vec_string(w) + ", Z4] = " + detail::vec_string(v);
  }
  note("(c) [iso,Z4] in S", bad.empty(), bad);

  bad.clear();
  for (const auto& w : iso)
    for (auto s : s_idx) {
      QVector v = sc.bracket(w, sc.unit(s));
      if (!in_span_s(v)) bad = "[" + detail::vec_string(w) + ", B" + std::to_string(s + 1) + "] = " + detail::vec_string(v);
    }
  note("(d) [iso,S] in S", bad.empty(), bad);

  bad.clear();
  for (const auto& w : iso)
    if (!in_span_s(w)) bad = detail::vec_string(w) + " not in S";
  note("(e) iso in S", bad.empty(), bad);

  // Sample Z, W in iso and follow the induction explicitly.
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  QVector z(n, Rational(0)), w(n, Rational(0));
  for (const auto& b : iso) {
    Rational cz = coef(rng), cw = coef(rng);
    for (std::size_t k = 0; k < n; ++k) {
      z[k] += cz * b[k];
      w[k] += cw * b[k];
    }
  }
  QVector z1p = z, cur = w;
  z1p[z1] -= 1;
  cur[z4] += 1;
  for (int d = 0; d < depth; ++d) {
    cur = sc.bracket(z1p, cur);
    cert.z4_coefficients.push_back(cur[z4]);
  }
  cert.passed = true;
  for (const auto& c : cert.conditions) cert.passed = cert.passed && c.holds;
  return cert;
}

}  // namespace tubes

#endif
