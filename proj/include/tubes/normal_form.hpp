#ifndef TUBES_NORMAL_FORM_HPP
#define TUBES_NORMAL_FORM_HPP

#include "tubes/linalg.hpp"
#include "tubes/map_family.hpp"
#include "tubes/parse.hpp"
#include "tubes/series.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

/// Real hypersurface in C^n solved for the last coordinate:
///   Im form:   w_n = s + i R(w', w̄'),  i.e. Im w_n = R
///   tube form: z_n = R(z', z̄') + i s,  i.e. Re z_n = R
/// with s a real slice variable and R conjugation-invariant.
struct GraphSurface {
  enum class Form { Im, Re };
  Form form = Form::Im;
  std::vector<std::string> free_vars;  // w1..w_{n-1}
  std::string solved;                  // w_n
  std::string slice = "s";
  CRational r;

  std::vector<std::string> coords() const {
    auto c = free_vars;
    c.push_back(solved);
    return c;
  }
  std::vector<std::string> anti_vars() const {
    std::vector<std::string> a;
    for (const auto& v : free_vars) a.push_back(bar_name(v));
    return a;
  }
  Pairing pairing() const {
    Pairing p = holomorphic_pairing(coords());
    p.self(slice);
    return p;
  }

  static GraphSurface im_graph(std::vector<std::string> free_vars, std::string solved, CRational r) {
    GraphSurface g;
    g.form = Form::Im;
    g.free_vars = std::move(free_vars);
    g.solved = std::move(solved);
    g.r = std::move(r);
    g.check_real();
    return g;
  }

  /// Tube over x_n = f(x_1..x_{n-1}), with x_j = (z_j + z̄_j)/2.
  static GraphSurface re_tube(const QPoly& f, const std::vector<std::string>& xs, std::vector<std::string> zs) {
    if (xs.size() + 1 != zs.size()) throw std::invalid_argument("tube graph: need n-1 real and n complex names");
    GraphSurface g;
    g.form = Form::Re;
    g.solved = zs.back();
    zs.pop_back();
    g.free_vars = zs;
    g.r = CRational(tube_defining_polynomial(f, xs, zs));
    g.check_real();
    return g;
  }

  /// Values substituted for (w_n, w̄_n).
  std::pair<CRational, CRational> solved_pair() const {
    CRational s(CPoly::variable(slice));
    CRational ir = r * CRational(CPoly::constant(Gaussian::i()));
    if (form == Form::Im) return {s + ir, s - ir};
    CRational is = s * CRational(CPoly::constant(Gaussian::i()));
    return {r + is, r - is};
  }

  void check_real() const {
    Pairing p = pairing();
    if (conjugate(r, p) != r) throw std::invalid_argument("graph function is not real-valued");
  }
};

/// Polynomial defining function of the graph after clearing the denominator
/// of R: den(R) * (Im w_n) - num(R), or with Re for the tube form.
inline CPoly graph_defining_polynomial(const GraphSurface& s) {
  CPoly wn = CPoly::variable(s.solved), wbn = CPoly::variable(bar_name(s.solved));
  CPoly part = s.form == GraphSurface::Form::Im ? (wn - wbn) * Gaussian(Rational(0), Rational(-1, 2))
                                                : (wn + wbn) * Gaussian(Rational(1, 2));
  return s.r.den() * part - s.r.num();
}

/// Truncated bidegree expansion F = sum F_{k,l}.
struct BidegreeSeries {
  int cutoff = 0;
  std::vector<std::string> holo, anti;
  std::map<Bidegree, CPoly> parts;

  CPoly part(int k, int l) const {
    auto it = parts.find({k, l});
    if (it != parts.end()) return it->second;
    std::vector<std::string> all = holo;
    all.insert(all.end(), anti.begin(), anti.end());
    return CPoly(make_vars(all));
  }

  CPoly total() const {
    std::vector<std::string> all = holo;
    all.insert(all.end(), anti.begin(), anti.end());
    CPoly s(make_vars(all));
    for (const auto& [kl, p] : parts) s += p;
    return s;
  }

  /// parts(l,k) == conjugate(parts(k,l)) for every stored bidegree.
  bool is_real() const {
    Pairing pr;
    for (std::size_t i = 0; i < holo.size(); ++i) pr.pair(holo[i], anti[i]);
    for (const auto& [kl, p] : parts)
      if (conjugate(p, pr) != part(kl.second, kl.first)) return false;
    return true;
  }
};

inline BidegreeSeries defining_series(const GraphSurface& s, int cutoff = kDefaultSeriesCutoff) {
  BidegreeSeries out;
  out.cutoff = cutoff;
  out.holo = s.free_vars;
  out.anti = s.anti_vars();
  std::vector<std::string> all = out.holo;
  all.insert(all.end(), out.anti.begin(), out.anti.end());
  CRational f = s.r.with_vars(union_vars(make_vars(all), s.r.vars()));
  CPoly expanded = series_expand(f, cutoff);
  for (auto& [kl, p] : bidegree_split(expanded, out.holo, out.anti)) out.parts.emplace(kl, p.with_vars(make_vars(all)));
  if (!out.is_real()) throw std::logic_error("defining series violates reality");
  return out;
}

/// tr = sum_{a,b} g_{ab} d^2/dw_a dw̄_b.
class TraceOperator {
 public:
  TraceOperator(std::vector<std::string> holo, std::vector<std::string> anti, Matrix<Gaussian> g)
      : holo_(std::move(holo)), anti_(std::move(anti)), g_(std::move(g)) {}

  const Matrix<Gaussian>& matrix() const { return g_; }

  CPoly apply(const CPoly& f) const {
    CPoly out(f.vars());
    for (std::size_t a = 0; a < holo_.size(); ++a)
      for (std::size_t b = 0; b < anti_.size(); ++b) {
        if (g_(a, b).is_zero()) continue;
        CPoly d = f.derivative(holo_[a]).derivative(anti_[b]);
        if (!d.is_zero()) out += d * g_(a, b);
      }
    return out;
  }

  CPoly apply(const CPoly& f, int times) const {
    CPoly cur = f;
    for (int i = 0; i < times; ++i) cur = apply(cur);
    return cur;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t a = 0; a < holo_.size(); ++a)
      for (std::size_t b = 0; b < anti_.size(); ++b) {
        if (g_(a, b).is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += tubes::to_string(g_(a, b)) + "*d2/d" + holo_[a] + "d" + anti_[b];
      }
    return s.empty() ? "0" : s;
  }

 private:
  std::vector<std::string> holo_, anti_;
  Matrix<Gaussian> g_;
};

/// h_{ab} = coefficient of w_a w̄_b in F11.
inline Matrix<Gaussian> levi_matrix(const CPoly& f11, const std::vector<std::string>& holo,
                                    const std::vector<std::string>& anti) {
  const std::size_t n = holo.size();
  Matrix<Gaussian> h(n, n, Gaussian(0));
  for (const auto& [m, c] : f11.terms()) {
    if (m.deg != 2) throw std::invalid_argument("F11 is not bihomogeneous of bidegree (1,1)");
    std::optional<std::size_t> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      auto ia = f11.var_index(holo[i]);
      auto ib = f11.var_index(anti[i]);
      if (ia && m[*ia] == 1) a = i;
      if (ib && m[*ib] == 1) b = i;
    }
    if (!a || !b) throw std::invalid_argument("F11 is not bihomogeneous of bidegree (1,1)");
    h(*a, *b) += c;
  }
  return h;
}

/// Trace operator contracted with the inverse Levi matrix: g_{ab} = (h^{-1})_{ba},
/// so that tr F11 equals the number of w' variables.
inline TraceOperator trace_from_levi(const CPoly& f11, const std::vector<std::string>& holo,
                                     const std::vector<std::string>& anti) {
  const std::size_t n = holo.size();
  Matrix<Gaussian> h = levi_matrix(f11, holo, anti);
  Matrix<Gaussian> aug(n, 2 * n, Gaussian(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = h(i, j);
    aug(i, n + i) = Gaussian(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] >= n) throw std::domain_error("Levi-degenerate");
  Matrix<Gaussian> g(n, n, Gaussian(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(j, i) = aug(i, n + j);
  return TraceOperator(holo, anti, std::move(g));
}

struct NormalFormCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct NormalFormReport {
  std::vector<NormalFormCheck> conditions;  // the five stated conditions
  bool reality = false;
  bool tr3_f33_zero = false;
  std::string tr3_f33;

  bool passed() const {
    for (const auto& c : conditions)
      if (!c.holds) return false;
    return reality;
  }
};

inline NormalFormReport chern_moser_check(const BidegreeSeries& s, const TraceOperator& tr) {
  if (s.cutoff < 6) throw std::invalid_argument("normal-form check needs cutoff >= 6");
  NormalFormReport rep;
  rep.reality = s.is_real();
  std::string bad;
  for (int k = 0; k <= s.cutoff; ++k)
    if (!s.part(k, 0).is_zero()) bad += " F" + std::to_string(k) + "0";
  rep.conditions.push_back({"F(k,0) = 0 for all k", bad.empty(), bad.empty() ? "" : "nonzero:" + bad});
  bad.clear();
  for (int k = 2; k < s.cutoff; ++k)
    if (!s.part(k, 1).is_zero()) bad += " F" + std::to_string(k) + "1";
  rep.conditions.push_back({"F(k,1) = 0 for all k >= 2", bad.empty(), bad.empty() ? "" : "nonzero:" + bad});
  auto check = [&](const std::string& name, int k, int l, int times) {
    CPoly v = tr.apply(s.part(k, l), times);
    rep.conditions.push_back({name, v.is_zero(), v.is_zero() ? "" : "value " + v.to_string()});
  };
  check("tr F22 = 0", 2, 2, 1);
  check("tr^2 F32 = 0", 3, 2, 2);
  check("tr^2 F33 = 0", 3, 3, 2);
  CPoly t3 = tr.apply(s.part(3, 3), 3);
  rep.tr3_f33_zero = t3.is_zero();
  rep.tr3_f33 = t3.to_string();
  return rep;
}

struct SurfaceMapResult {
  bool identity = false;
  std::vector<Gaussian> image_of_origin;
  std::size_t residual_terms = 0;
};

/// rho(phi(w), conj phi(w̄)) with (w_n, w̄_n) eliminated through the graph
/// relations, decided as an exact polynomial identity after clearing
/// denominators.
inline SurfaceMapResult verify_surface_map(const GraphSurface& source, const CPoly& rho,
                                           const std::vector<std::string>& target_coords,
                                           const std::vector<CRational>& phi) {
  if (phi.size() != target_coords.size()) throw std::invalid_argument("map has wrong number of components");
  SurfaceMapResult res;
  Pairing pr = source.pairing();
  Assignment<Gaussian> sub;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    sub[target_coords[i]] = phi[i];
    sub[bar_name(target_coords[i])] = conjugate(phi[i], pr);
  }
  CRational composed = substitute_partial(rho, sub);
  auto [wn, wbn] = source.solved_pair();
  Assignment<Gaussian> graph{{source.solved, wn}, {bar_name(source.solved), wbn}};
  CRational on_surface = substitute_partial(composed.num(), graph);
  res.residual_terms = on_surface.num().size();
  res.identity = on_surface.num().is_zero();
  std::map<std::string, Gaussian> origin;
  for (const auto& v : source.coords()) origin[v] = Gaussian(0);
  for (const auto& f : phi) {
    CRational v = f.evaluate_partial(origin);
    if (!v.is_polynomial() || !v.num().is_constant()) throw std::invalid_argument("map is not defined at the origin");
    res.image_of_origin.push_back(v.num().constant_term());
  }
  return res;
}

}  // namespace tubes

#endif
