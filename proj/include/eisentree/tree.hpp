#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eisentree/laurent.hpp"
#include "eisentree/poly.hpp"

namespace eisentree {

/// Vertex of the (q+1)-regular tree: the class of [[T^n, x], [0, 1]] in G/K.
/// Two parameter pairs give the same vertex iff n matches and x agrees modulo
/// T^n r_inf, so x is stored with every term T^j, j <= n, dropped. The
/// canonical form makes vertex equality a finite comparison.
struct TreeVertex {
  int n;
  Laurent x;

  TreeVertex(int height, const Laurent& coord) : n(height), x(coord.truncated_to(-height)) {}

  bool operator==(const TreeVertex& o) const { return n == o.n && x.same_to_precision(o.x); }
  bool operator!=(const TreeVertex& o) const { return !(*this == o); }

  std::string key() const {
    std::string s = std::to_string(n) + "|";
    if (auto v = x.valuation()) {
      s += std::to_string(*v) + ":";
      for (int i = *v; i < -n; ++i) s += char('0' + x.coeff(i));
    }
    return s;
  }
};

inline TreeVertex base_vertex(uint32_t q) { return TreeVertex(0, Laurent::zero(q)); }

/// The q+1 tree neighbors: one up-neighbor at height n+1 and the q
/// down-neighbors (n-1, x + u T^n). Two distinct down-neighbors differ in
/// exactly the new coefficient.
inline std::vector<TreeVertex> neighbors(const TreeVertex& v, uint32_t q) {
  std::vector<TreeVertex> out;
  out.reserve(q + 1);
  out.emplace_back(v.n + 1, v.x);
  for (uint32_t u = 0; u < q; ++u) {
    const Laurent shift(q, -v.n, {u}, Laurent::kExact);  // u * T^n
    out.emplace_back(v.n - 1, v.x + shift);
  }
  return out;
}

inline Rational height_norm(uint32_t q, int n) {
  return n >= 0 ? Rational(pow_bigint(q, n)) : Rational(1, pow_bigint(q, -n));
}

/// Vertex of an invertible 2x2 matrix over k_inf with exact Laurent entries.
/// One bounded column operation makes the matrix upper triangular in K, and
/// the height obeys q^n = |det M| / max(|b0|, |b1|)^2 for bottom row (b0, b1).
inline TreeVertex point_of_matrix(const Laurent& a0_in, const Laurent& a1_in, const Laurent& b0_in,
                                  const Laurent& b1_in) {
  Laurent a1 = a1_in, b1 = b1_in;
  {
    const Laurent &b0 = b0_in;
    if (b1.is_zero_to_precision() ||
        (!b0.is_zero_to_precision() && b0.norm() > b1.norm())) {
      a1 = a0_in;
      b1 = b0_in;
    }
  }
  if (b1.is_zero_to_precision()) throw std::domain_error("point_of_matrix: zero bottom row");
  const Laurent det = a0_in * b1_in - a1_in * b0_in;
  if (det.is_zero_to_precision()) throw std::domain_error("point_of_matrix: singular matrix");
  // q^n = |det| / |b1|^2 and |y| = q^{-v(y)}
  const int n = 2 * b1.valuation().value() - det.valuation().value();
  if (a1.is_zero_to_precision()) return TreeVertex(n, Laurent::zero(a1.modulus()));
  const int need = -n + 6 - a1.valuation().value();
  const Laurent x = a1 * b1.inverse_to(need);
  if (x.known_to() < -n)
    throw precision_error("point_of_matrix: coordinate precision insufficient");
  return TreeVertex(n, x);
}

/// Image of a vertex under an integral matrix (unit determinant assumed).
inline TreeVertex apply_matrix(const Poly& alpha, const Poly& beta, const Poly& c,
                               const Poly& delta, const TreeVertex& g) {
  const uint32_t q = alpha.modulus();
  const Laurent tn(q, -g.n, {1}, Laurent::kExact);  // T^n
  const Laurent a0 = Laurent::from_poly(alpha) * tn;
  const Laurent a1 = Laurent::from_poly(alpha) * g.x + Laurent::from_poly(beta);
  const Laurent b0 = Laurent::from_poly(c) * tn;
  const Laurent b1 = Laurent::from_poly(c) * g.x + Laurent::from_poly(delta);
  return point_of_matrix(a0, a1, b0, b1);
}

struct OrbitWitness {
  Poly alpha, beta, c, delta;
};

struct OrbitResult {
  bool related = false;
  /// True when the candidate search provably covered every admissible gamma;
  /// false only when degbound clipped the enumeration.
  bool complete = true;
  std::optional<OrbitWitness> witness;
};

/// Decide whether some gamma in Gamma_0(A) maps u to v. For gamma with bottom
/// row (c, delta), the height equation forces
///   max(|c| q^{n_u}, |c x_u + delta|) = q^{(n_u - n_v)/2},
/// which pins deg c and delta up to a bounded translate; the top row is then
/// solved via Bezout and a polynomial shift. The search is exhaustive within
/// those bounds; degbound acts as a resource cap only. Every hit is verified
/// by applying the witness, so the result is never a false positive.
inline OrbitResult orbit_equal(const TreeVertex& u, const TreeVertex& v, const Poly& A,
                               int degbound) {
  const uint32_t q = A.modulus();
  OrbitResult res;
  // Unit determinant preserves the bipartition by height parity.
  if (((u.n - v.n) % 2 + 2) % 2 != 0) return res;

  auto verify = [&](const Poly& al, const Poly& be, const Poly& cc, const Poly& de) {
    const TreeVertex img = apply_matrix(al, be, cc, de, u);
    if (img == v) {
      res.related = true;
      res.witness = OrbitWitness{al, be, cc, de};
      return true;
    }
    return false;
  };

  // c = 0: gamma upper triangular. Height is preserved; x is scaled by a unit
  // and translated by an arbitrary polynomial.
  if (u.n == v.n) {
    for (uint32_t lam = 1; lam < q; ++lam) {
      const Laurent scaled = u.x * Laurent::from_poly(Poly::constant(q, lam));
      const Poly shift = (v.x - scaled).poly_part();
      if (verify(Poly::constant(q, lam), shift, Poly::zero(q), Poly::one(q))) return res;
    }
  }

  const int a = std::max(A.degree(), 0);  // A = 1 admits every c
  if ((u.n - v.n) % 2 != 0) return res;
  const int H = (u.n - v.n) / 2;
  const int max_c_deg = H - u.n;
  if (max_c_deg < a) return res;
  if (max_c_deg > degbound || (H >= 0 && H > degbound)) res.complete = false;
  const int cdeg_cap = std::min(max_c_deg, degbound);
  const int wdeg_cap = std::min(H, degbound);
  const Rational hnorm = height_norm(q, H);

  bool found = false;
  for (int m = std::max(a, 1); m <= cdeg_cap && !found; ++m) {
    for_each_monic(q, m, [&](const Poly& c) {
      if (found || (!A.is_one() && !A.divides(c))) return;
      const Laurent cx = Laurent::from_poly(c) * u.x;
      const Poly P = cx.poly_part();
      const Laurent fc = cx.frac_part();
      const Rational cheight = Rational(pow_bigint(q, m)) * height_norm(q, u.n);

      auto try_w = [&](const Poly& w) {
        if (found) return;
        // |w + f_c|: polynomial vs strictly fractional norms never tie.
        const Rational wf = w.is_zero() ? fc.norm() : w.norm();
        if (std::max(cheight, wf) != hnorm) return;
        const Poly delta = w - P;
        if (!coprime(c, delta)) return;
        auto [g, s0, t0] = extended_gcd(delta, c);
        const Poly alpha0 = s0, beta0 = -t0;  // alpha0 delta - beta0 c = 1
        const int prec = std::abs(v.n) + 10 + 2 * m + std::abs(u.n);
        // Image coordinate before the polynomial shift t: depends on which
        // bottom entry of gamma g carries the maximal norm.
        Laurent x0 = Laurent::zero(q);
        if (wf >= cheight) {
          const Laurent den = cx + Laurent::from_poly(delta);
          x0 = (Laurent::from_poly(alpha0) * u.x + Laurent::from_poly(beta0)) *
               den.inverse_to(prec);
        } else {
          x0 = Laurent::from_poly(alpha0) * Laurent::from_poly(c).inverse_to(prec);
        }
        for (uint32_t eps = 1; eps < q && !found; ++eps) {
          const Laurent ex0 = x0 * Laurent::from_poly(Poly::constant(q, eps));
          const Poly t = (v.x - ex0).poly_part();
          const Poly al = Poly::constant(q, eps) * alpha0 + t * c;
          const Poly be = Poly::constant(q, eps) * beta0 + t * delta;
          if (verify(al, be, c, delta)) found = true;
        }
      };

      try_w(Poly::zero(q));
      for (int dw = 0; dw <= wdeg_cap && !found; ++dw)
        for_each_nonzero(q, dw, [&](const Poly& w) { try_w(w); });
    });
  }
  return res;
}

/// Orbit-collapsed truncated quotient graph: BFS from the base vertex with
/// orbit_equal deduplication. Directed weights count tree-neighbors per
/// class, so every interior vertex has weighted out-degree exactly q+1.
struct QuotientGraph {
  uint32_t q = 0;
  Poly A;
  int depth = 0;
  int degbound = 0;
  std::vector<TreeVertex> reps;
  std::vector<int> dist;
  std::vector<std::vector<double>> weight;
  std::vector<bool> interior;
  bool orbit_search_complete = true;

  QuotientGraph() : A(5) {}
};

inline QuotientGraph build_quotient(const Poly& A, int depth, int degbound) {
  const uint32_t q = A.modulus();
  if (depth < 0 || depth > 10) throw resource_error("build_quotient: depth out of desk range");
  QuotientGraph G;
  G.q = q;
  G.A = A;
  G.depth = depth;
  G.degbound = degbound;
  std::map<std::string, int> by_key;

  auto classify = [&](const TreeVertex& w, bool allow_new, int at_dist) -> int {
    auto it = by_key.find(w.key());
    if (it != by_key.end()) return it->second;
    for (size_t j = 0; j < G.reps.size(); ++j) {
      const OrbitResult r = orbit_equal(w, G.reps[j], A, degbound);
      if (!r.complete) G.orbit_search_complete = false;
      if (r.related) {
        by_key.emplace(w.key(), int(j));
        return int(j);
      }
    }
    if (!allow_new) return -1;
    G.reps.push_back(w);
    G.dist.push_back(at_dist);
    by_key.emplace(w.key(), int(G.reps.size()) - 1);
    return int(G.reps.size()) - 1;
  };

  classify(base_vertex(q), true, 0);
  for (int layer = 0; layer < depth; ++layer) {
    const size_t frozen = G.reps.size();
    for (size_t i = 0; i < frozen; ++i) {
      if (G.dist[i] != layer) continue;
      for (const TreeVertex& w : neighbors(G.reps[i], q)) classify(w, true, layer + 1);
    }
  }
  const size_t V = G.reps.size();
  G.weight.assign(V, std::vector<double>(V, 0.0));
  G.interior.assign(V, false);
  for (size_t i = 0; i < V; ++i) {
    if (G.dist[i] >= depth) continue;
    G.interior[i] = true;
    for (const TreeVertex& w : neighbors(G.reps[i], q)) {
      const int j = classify(w, false, G.dist[i] + 1);
      if (j < 0) throw std::logic_error("interior neighbor not classified");
      G.weight[i][size_t(j)] += 1.0;
    }
  }
  return G;
}

struct SpectrumReport {
  std::vector<double> eigenvalues;  // sorted ascending
  int below_band = 0;               // < -2 sqrt(q)
  int inside_band = 0;              // [-2 sqrt(q), 2 sqrt(q)]
  int above_band = 0;               // > 2 sqrt(q)
  double min_eig = 0.0, max_eig = 0.0;
};

/// Eigenvalues of the symmetrized weighted adjacency matrix of the truncated
/// quotient, partitioned against the bands at +-2 sqrt(q). Exploratory:
/// truncation contaminates the band picture, so downstream assertions cover
/// only the structural bounds.
inline SpectrumReport adjacency_spectrum(const QuotientGraph& G) {
  const size_t V = G.reps.size();
  Eigen::MatrixXd S(V, V);
  for (size_t i = 0; i < V; ++i)
    for (size_t j = 0; j < V; ++j) S(i, j) = 0.5 * (G.weight[i][j] + G.weight[j][i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  SpectrumReport rep;
  const double band = 2.0 * std::sqrt(double(G.q));
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()[i];
    rep.eigenvalues.push_back(ev);
    if (ev < -band) ++rep.below_band;
    else if (ev > band) ++rep.above_band;
    else ++rep.inside_band;
  }
  if (!rep.eigenvalues.empty()) {
    rep.min_eig = rep.eigenvalues.front();
    rep.max_eig = rep.eigenvalues.back();
  }
  return rep;
}

}  // namespace eisentree
