#ifndef TUBES_SERIES_HPP
#define TUBES_SERIES_HPP

#include "tubes/rational_function.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tubes {

inline constexpr int kDefaultSeriesCutoff = 8;

/// Taylor expansion of num/den at the origin through total degree `cutoff`.
template <class K>
Polynomial<K> series_expand(const RationalFunction<K>& f, int cutoff = kDefaultSeriesCutoff) {
  if (cutoff < 0) throw std::invalid_argument("negative series cutoff");
  const auto& den = f.den();
  const K d0 = den.constant_term();
  if (scalar_traits<K>::is_zero(d0)) throw std::domain_error("singular expansion point");
  const VarList& vars = f.vars();
  const K inv_d0 = K(K(1) / d0);

  // inv = 1/den degree by degree: inv_d = -(1/d0) * sum_{j>=1} den_j * inv_{d-j}.
  std::vector<Polynomial<K>> den_parts, inv;
  for (int d = 0; d <= cutoff; ++d) den_parts.push_back(den.homogeneous_part(d));
  inv.push_back(Polynomial<K>(vars, inv_d0));
  for (int d = 1; d <= cutoff; ++d) {
    Polynomial<K> acc(vars);
    for (int j = 1; j <= d; ++j)
      if (!den_parts[j].is_zero() && !inv[d - j].is_zero()) acc += den_parts[j] * inv[d - j];
    inv.push_back(acc * K(-inv_d0));
  }
  Polynomial<K> result(vars);
  for (int a = 0; a <= cutoff; ++a) {
    Polynomial<K> na = f.num().homogeneous_part(a);
    if (na.is_zero()) continue;
    for (int b = 0; a + b <= cutoff; ++b)
      if (!inv[b].is_zero()) result += na * inv[b];
  }
  return result;
}

using Bidegree = std::pair<int, int>;

/// Splits p by (degree in holo_vars, degree in anti_vars). Every variable
/// occurring in p must belong to exactly one of the groups.
template <class K>
std::map<Bidegree, Polynomial<K>> bidegree_split(const Polynomial<K>& p, const std::vector<std::string>& holo_vars,
                                                 const std::vector<std::string>& anti_vars) {
  std::set<std::string> h(holo_vars.begin(), holo_vars.end()), a(anti_vars.begin(), anti_vars.end());
  for (const auto& v : h)
    if (a.count(v)) throw std::invalid_argument("variable " + v + " is in both groups");
  for (const auto& v : p.used_vars())
    if (!h.count(v) && !a.count(v)) throw std::invalid_argument("unclassified variable " + v);
  std::vector<int> kind(p.nvars(), 0);
  for (std::size_t i = 0; i < p.nvars(); ++i) kind[i] = h.count(p.var_names()[i]) ? 1 : (a.count(p.var_names()[i]) ? 2 : 0);
  std::map<Bidegree, std::vector<typename Polynomial<K>::Term>> buckets;
  for (const auto& t : p.terms()) {
    int k = 0, l = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (kind[i] == 1) k += t.first[i];
      if (kind[i] == 2) l += t.first[i];
    }
    buckets[{k, l}].push_back(t);
  }
  std::map<Bidegree, Polynomial<K>> out;
  for (auto& [kl, ts] : buckets) out.emplace(kl, Polynomial<K>::from_terms(p.vars(), std::move(ts)));
  return out;
}

/// Holomorphic/antiholomorphic variable pairing, e.g. w1 <-> wb1. Real
/// parameters pair with themselves.
class Pairing {
 public:
  Pairing() = default;

  Pairing& pair(const std::string& a, const std::string& b) {
    auto check = [&](const std::string& x, const std::string& y) {
      auto it = map_.find(x);
      if (it != map_.end() && it->second != y) throw std::invalid_argument("pairing is not an involution at " + x);
    };
    check(a, b);
    check(b, a);
    map_[a] = b;
    map_[b] = a;
    return *this;
  }

  Pairing& self(const std::string& a) { return pair(a, a); }

  bool contains(const std::string& v) const { return map_.count(v) != 0; }
  const std::string& partner(const std::string& v) const {
    auto it = map_.find(v);
    if (it == map_.end()) throw std::invalid_argument("unpaired variable " + v);
    return it->second;
  }
  const std::map<std::string, std::string>& entries() const { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

/// Conjugate name used throughout: "w1" -> "wb1", "c" -> "cb".
inline std::string bar_name(const std::string& v) {
  std::size_t i = 0;
  while (i < v.size() && std::isalpha(static_cast<unsigned char>(v[i]))) ++i;
  return v.substr(0, i) + "b" + v.substr(i);
}

/// Pairs each name with its bar_name().
inline Pairing holomorphic_pairing(const std::vector<std::string>& holo) {
  Pairing p;
  for (const auto& v : holo) p.pair(v, bar_name(v));
  return p;
}

/// Conjugates coefficients and swaps paired variables. Every variable
/// occurring in p must be paired.
inline CPoly conjugate(const CPoly& p, const Pairing& pairing) {
  std::vector<std::string> names = p.var_names();
  for (const auto& v : p.used_vars()) (void)pairing.partner(v);
  std::vector<std::string> swapped;
  for (const auto& v : names) swapped.push_back(pairing.contains(v) ? pairing.partner(v) : v);
  // Target list: original names plus any partners not yet present.
  VarList target = union_vars(p.vars(), make_vars(std::vector<std::string>(
                                            [&] {
                                              std::vector<std::string> extra;
                                              for (const auto& s : swapped)
                                                if (!index_of(names, s) &&
                                                    std::find(extra.begin(), extra.end(), s) == extra.end())
                                                  extra.push_back(s);
                                              return extra;
                                            }())));
  std::vector<std::size_t> dest(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) dest[i] = *index_of(*target, swapped[i]);
  std::vector<CPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial n;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (m[i]) n.set(dest[i], m[i]);
    out.emplace_back(n, c.conj());
  }
  return CPoly::from_terms(target, std::move(out));
}

inline CRational conjugate(const CRational& f, const Pairing& pairing) {
  return CRational(conjugate(f.num(), pairing), conjugate(f.den(), pairing));
}

/// (p + conj p)/2, i.e. Re p as a polynomial in paired variables.
inline CPoly re_of(const CPoly& p, const Pairing& pairing) {
  return (p + conjugate(p, pairing)) * Gaussian(Rational(1, 2));
}

}  // namespace tubes

#endif
