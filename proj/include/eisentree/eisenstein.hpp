#pragma once

#include <complex>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "eisentree/arith.hpp"
#include "eisentree/character.hpp"
#include "eisentree/tree.hpp"

namespace eisentree {

/// Coset class of Gamma_inf \ Gamma_0(A), parametrized by its bottom row:
/// A | c, gcd(c, d) a unit, scaled so the first nonzero of (c, d) is monic.
struct CosetRep {
  Poly c, d;
};

/// All coset classes with max(deg c, deg d) <= maxdeg, each exactly once.
/// The class (0, 1) is always present.
inline std::vector<CosetRep> enumerate_cosets(const Poly& A, int maxdeg) {
  const uint32_t q = A.modulus();
  if (A.degree() < 1 || !A.is_monic())
    throw std::domain_error("enumerate_cosets requires monic A of positive degree");
  if (maxdeg > 12) throw resource_error("enumerate_cosets: maxdeg beyond desk scale");
  std::vector<CosetRep> out;
  out.push_back({Poly::zero(q), Poly::one(q)});
  for (int m = A.degree(); m <= maxdeg; ++m) {
    for_each_monic(q, m, [&](const Poly& c) {
      if (!A.divides(c)) return;
      // d = 0 needs c to be a unit, impossible for deg c >= 1
      for (int dd = 0; dd <= maxdeg; ++dd)
        for_each_nonzero(q, dd, [&](const Poly& d) {
          if (coprime(c, d)) out.push_back({c, d});
        });
    });
  }
  return out;
}

/// Brute validation oracle: enumerate all matrices in Gamma_0(A) with entry
/// degrees <= maxdeg, quotient by Gamma_inf (bottom row up to unit scaling),
/// and return the canonical bottom rows. Small parameters only.
inline std::set<std::pair<uint64_t, uint64_t>> coset_classes_by_matrix_enumeration(const Poly& A,
                                                                                   int maxdeg) {
  const uint32_t q = A.modulus();
  const uint64_t npolys = (pow_u64(q, maxdeg + 1));
  if (npolys > 700) throw resource_error("matrix enumeration beyond desk scale");
  std::vector<Poly> all;
  for (uint64_t k = 0; k < npolys; ++k) {
    std::vector<uint32_t> cs(maxdeg + 1);
    uint64_t kk = k;
    for (int i = 0; i <= maxdeg; ++i) {
      cs[i] = uint32_t(kk % q);
      kk /= q;
    }
    all.emplace_back(q, cs);
  }
  std::set<std::pair<uint64_t, uint64_t>> classes;
  for (const Poly& a : all)
    for (const Poly& b : all)
      for (const Poly& c : all) {
        if (!A.is_one() && !(c.is_zero() || A.divides(c))) continue;
        for (const Poly& d : all) {
          const Poly det = a * d - b * c;
          if (det.degree() != 0) continue;
          const uint32_t lead = c.is_zero() ? d.leading() : c.leading();
          const uint32_t inv = fq_inv(q, lead);
          classes.emplace(c.scaled(inv).key(), d.scaled(inv).key());
        }
      }
  return classes;
}

struct EvalResult {
  Complex value;
  double truncation_bound;
  int maxdeg_used;
};

/// Direct evaluation of the level-A Eisenstein series
///   E(g, s) = sum over cosets of (|det(gamma g)| / h((0,1) gamma g)^2)^s
/// at g = [[T^n, x], [0, 1]], Re(s) > 1. The d-sum for each modulus c is
/// collapsed exactly: for deg d >= deg c the height is |d| independently of x,
/// and for deg d < deg c it is governed by |polypart(c x) + d| (a polynomial
/// norm never ties the strictly fractional remainder). Coprime counts at each
/// norm level come from Mobius inclusion-exclusion over the squarefree
/// divisors of c, so the per-vertex cost stays polynomial in deg c.
/// The coset sum is extended shell by shell in deg c until the rigorous
/// geometric tail estimate drops below tol.
class EisensteinEvaluator {
 public:
  EisensteinEvaluator(Poly A, Factorizer& f) : A_(std::move(A)), q_(A_.modulus()), f_(&f) {
    if (!A_.is_monic() || (!A_.is_one() && !f.is_irreducible(A_)))
      throw std::domain_error("level must be monic irreducible (or 1)");
  }

  const Poly& level() const { return A_; }

  EvalResult eval(int n, const Laurent& x_in, Complex s, double tol, int maxdeg_cap = 14) {
    if (s.real() <= 1.0) throw std::domain_error("direct Eisenstein sum requires Re(s) > 1");
    if (tol <= 0.0) throw std::domain_error("tolerance must be positive");
    const double lnq = std::log(double(q_));
    // Unipotent invariance: E(n, x) = E(n, frac x).
    const Laurent x = x_in.frac_part();
    Complex total = std::exp(s * double(n) * lnq);  // the (0, 1) coset
    const double sig = s.real();
    int m = std::max(A_.degree(), 1);
    double tail = tail_bound(m, n, sig);
    while (tail > tol) {
      if (m > maxdeg_cap)
        throw resource_error("eval_direct: tail bound " + std::to_string(tail) +
                             " not met within maxdeg cap");
      extend_to(m);
      for (const CModulus& cm : by_degree_[size_t(m)]) total += modulus_contribution(cm, n, x, s);
      ++m;
      tail = tail_bound(m, n, sig);
    }
    return {total, tail, m - 1};
  }

  EvalResult eval(const TreeVertex& g, Complex s, double tol, int maxdeg_cap = 14) {
    return eval(g.n, g.x, s, tol, maxdeg_cap);
  }

  /// Rigorous bound on the total contribution of all cosets with deg c >= m.
  double tail_bound(int m, int n, double sig) const {
    const double lnq = std::log(double(q_));
    const int a = std::max(A_.degree(), 1);
    double tail = 0.0;
    for (int k = m; k < m + 400; ++k) {
      if (k < a) continue;
      const double shell = shell_bound(k, n, sig, lnq);
      tail += shell;
      if (shell < 1e-18 * (tail + 1e-300)) break;
    }
    return tail;
  }

 private:
  struct CModulus {
    Poly c;
    double phi = 0.0;
    std::vector<std::pair<Poly, int>> sqfree;  // (g, mobius sign)

    explicit CModulus(uint32_t q) : c(q) {}
  };

  double shell_bound(int m, int n, double sig, double lnq) const {
    const int a = std::max(A_.degree(), 1);
    const double count_c = std::exp(double(m - a) * lnq);  // monic multiples of A at degree m
    // deg d >= deg c block: counts phi(c)(q-1) q^{k-m} at |d| = q^k, k >= k0.
    const int k0 = std::max(m, m + n);
    double big = count_c * std::exp(double(m) * lnq) * double(q_ - 1) *
                 std::exp(-double(m) * lnq) * std::exp(sig * double(n) * lnq) *
                 std::exp(double(k0) * (1.0 - 2.0 * sig) * lnq) /
                 (1.0 - std::exp((1.0 - 2.0 * sig) * lnq));
    if (n > 0) {
      // finite range k in [m, m+n) with height pinned at q^{m+n}
      big += count_c * std::exp(double(m) * lnq) * double(q_ - 1) * double(n) *
             std::exp(double(n - 1) * lnq) * std::exp(sig * double(n - 2 * (m + n)) * lnq);
    }
    // deg d < deg c block: each term at most (q^n / q^{2(m+n)})^sig, at most
    // phi(c) + 1 <= q^m + 1 terms per modulus.
    const double small = count_c * (std::exp(double(m) * lnq) + 1.0) *
                         std::exp(sig * double(-n - 2 * m) * lnq);
    return big + small;
  }

  void extend_to(int m) {
    while (static_cast<int>(by_degree_.size()) <= m) by_degree_.emplace_back();
    if (built_.count(size_t(m)) || m < A_.degree() || m < 1) return;
    built_.emplace(size_t(m), true);
    std::vector<CModulus>& slot = by_degree_[size_t(m)];
    for_each_monic(q_, m, [&](const Poly& c) {
      if (!A_.is_one() && !A_.divides(c)) return;
      CModulus cm(q_);
      cm.c = c;
      cm.phi = double(totient(c, *f_).convert_to<double>());
      std::vector<std::pair<Poly, int>> divs{{Poly::one(q_), 1}};
      for (const auto& [p, e] : f_->factor(c)) {
        const size_t base = divs.size();
        for (size_t i = 0; i < base; ++i) divs.emplace_back(divs[i].first * p, -divs[i].second);
      }
      cm.sqfree = std::move(divs);
      slot.push_back(std::move(cm));
    });
  }

  Complex modulus_contribution(const CModulus& cm, int n, const Laurent& x, Complex s) const {
    const double lnq = std::log(double(q_));
    const int m = cm.c.degree();
    Complex out{0.0, 0.0};
    // deg d >= m, grouped by |d| = q^k: heights max(q^{m+n}, q^k).
    const int k0 = std::max(m, m + n);
    for (int k = m; k < k0; ++k) {
      const double cnt = cm.phi * double(q_ - 1) * std::exp(double(k - m) * lnq);
      out += cnt * std::exp(s * double(n - 2 * (m + n)) * lnq);
    }
    const Complex ratio = std::exp((1.0 - 2.0 * s) * lnq);
    out += cm.phi * double(q_ - 1) * std::exp(-double(m) * lnq) *
           std::exp(s * double(n) * lnq) * std::exp(Complex(k0) * (1.0 - 2.0 * s) * lnq) /
           (1.0 - ratio);
    // deg d < m: norms |polypart(cx) + d| classified by inclusion-exclusion.
    const Laurent cx = Laurent::from_poly(cm.c) * x;
    if (cx.known_to() < 1)
      throw precision_error("eval_direct: x lacks precision for the current modulus degree");
    const Poly P = cx.poly_part();
    const Laurent fc = cx.frac_part();
    std::vector<double> N(size_t(m), 0.0);
    for (const auto& [g, sign] : cm.sqfree) {
      const int dg = g.degree();
      const Poly Pg = dg > 0 ? P % g : Poly::zero(q_);
      for (int j = 0; j < m; ++j) {
        if (dg <= j)
          N[size_t(j)] += sign * double(q_ - 1) * std::exp(double(j - dg) * lnq);
        else if (Pg.degree() == j)
          N[size_t(j)] += sign;
      }
    }
    const double hfloor = std::exp(double(m + n) * lnq);
    for (int j = 0; j < m; ++j) {
      if (std::abs(N[size_t(j)]) < 0.5) continue;
      const double h = std::max(hfloor, std::exp(double(j) * lnq));
      out += N[size_t(j)] * std::exp(s * (double(n) * lnq - 2.0 * std::log(h)));
    }
    // d = -polypart(cx): the height falls through to the fractional remainder.
    const bool minusP_coprime = P.is_zero() ? m == 0 : coprime(P, cm.c);
    if (minusP_coprime) {
      const double h = std::max(hfloor, fc.norm_double());
      out += std::exp(s * (double(n) * lnq - 2.0 * std::log(h)));
    }
    return out;
  }

  Poly A_;
  uint32_t q_;
  Factorizer* f_;
  std::vector<std::vector<CModulus>> by_degree_;
  std::map<size_t, bool> built_;
};

/// Closed-form Fourier-Whittaker coefficient c(n, Q, s) of the level-A
/// Eisenstein series at the cusp at infinity (Q monic or zero), with the
/// vanishing rule c(n, Q, s) = 0 for Q != 0 and n > deg A - 2 - deg Q.
inline Complex coeff_closed(int n, const Poly& Q, Complex s, const Poly& A, Factorizer& f) {
  const uint32_t q = A.modulus();
  if (!A.is_monic() || !f.is_irreducible(A))
    throw std::domain_error("coeff_closed requires monic irreducible A");
  const int a = A.degree();
  const double lnq = std::log(double(q));
  const Complex pole = 1.0 - std::exp(-2.0 * double(a) * s * lnq);
  if (std::abs(pole) < 1e-12)
    throw std::domain_error("coeff_closed: q^{2as} = 1 pole guard triggered");
  if (Q.is_zero())
    return std::exp(double(n) * s * lnq) +
           std::exp((double(n) * (1.0 - s) + 1.0 - 2.0 * double(a) * s) * lnq) / pole;
  if (!Q.is_monic()) throw std::domain_error("coeff_closed requires monic Q (or zero)");
  const int D = Q.degree();
  if (n > a - 2 - D) return {0.0, 0.0};
  int alpha = 0;
  Poly cof = Q;
  while (A.divides(cof)) {
    cof = (cof / A).monic();
    ++alpha;
  }
  const Complex bracket =
      sigma_complex(Q, 1.0 - 2.0 * s, f) - sigma_complex(cof, 1.0 - 2.0 * s, f) / pole;
  return std::exp((double(n) * (1.0 - s) + 1.0 - double(a)) * lnq) *
         (1.0 - std::exp(-2.0 * s * lnq)) *
         (1.0 - std::exp(double(a - 1 - D - n) * (1.0 - 2.0 * s) * lnq)) * bracket;
}

struct ExtractionResult {
  Complex value;
  double truncation_bound;
};

/// Oracle side: exact finite average of eval_direct(g, s) conj(chi_Q(x)) over
/// the q^depth unit-interval samples. Exact in x (the integrand depends on
/// finitely many coefficients); the only error is the coset-sum truncation.
inline std::map<uint64_t, ExtractionResult> fourier_extract_many(
    int n, const std::vector<Poly>& Qs, Complex s, EisensteinEvaluator& ev, int depth,
    double eval_tol) {
  const uint32_t q = ev.level().modulus();
  std::map<uint64_t, Complex> acc;
  std::map<uint64_t, double> tails;
  for (const Poly& Q : Qs) {
    acc[Q.key()] = Complex{0.0, 0.0};
    tails[Q.key()] = 0.0;
  }
  for_each_unit_sample(q, depth, [&](const Laurent& x) {
    const EvalResult E = ev.eval(n, x, s, eval_tol);
    for (const Poly& Q : Qs) {
      acc[Q.key()] += E.value * std::conj(chi_twisted(Q, x).to_complex());
      tails[Q.key()] += E.truncation_bound;
    }
  });
  std::map<uint64_t, ExtractionResult> out;
  const double total = double(pow_u64(q, depth));
  for (const Poly& Q : Qs) out[Q.key()] = {acc[Q.key()] / total, tails[Q.key()] / total};
  return out;
}

inline ExtractionResult fourier_extract(int n, const Poly& Q, Complex s, const Poly& A,
                                        int depth, Factorizer& f, double eval_tol = 1e-9) {
  const int need = (Q.is_zero() ? 0 : Q.degree()) + std::abs(std::min(n, 0)) + 2;
  if (depth < need)
    throw std::domain_error("fourier_extract: depth must be >= deg Q + |min(n,0)| + 2");
  EisensteinEvaluator ev(A, f);
  auto m = fourier_extract_many(n, {Q}, s, ev, depth, eval_tol);
  return m[Q.key()];
}

struct ParsevalReport {
  double integral = 0.0;           // integral of |E(n, x)|^2 dx, exact average
  Complex c0_closed, c0_extracted;
  double sum_closed_sq = 0.0;      // sum over monic Q != 0 of |closed|^2
  double sum_extracted_sq = 0.0;   // same with extracted coefficients
  double kappa_closed = 0.0;       // fitted multiplicity against closed forms
  double kappa_extracted = 0.0;    // fitted multiplicity against the oracle
  double residual_extracted = 0.0; // |integral - (|c0|^2 + kappa |cQ|^2 sum)| at integer kappa
  int kappa_rounded = 0;
  double truncation_bound = 0.0;
};

/// Compare the exact x-average of |E|^2 against |c(n,0,s)|^2 plus a
/// unit-multiplicity constant times the monic-Q square sum, for both
/// coefficient sources. The extracted side determines the calibration.
inline ParsevalReport parseval_check(int n, Complex s, const Poly& A, int depth, Factorizer& f,
                                     double eval_tol = 1e-9) {
  const uint32_t q = A.modulus();
  const int a = A.degree();
  EisensteinEvaluator ev(A, f);
  // Q-ranges: closed forms vanish for n > a - 2 - deg Q; the oracle
  // coefficients vanish for n > -2 - deg Q. Collect the union.
  const int dmax = std::max(a - 2 - n, -2 - n);
  std::vector<Poly> Qs{Poly::zero(q)};
  for (int d = 0; d <= dmax; ++d)
    for_each_monic(q, d, [&](const Poly& Q) { Qs.push_back(Q); });

  ParsevalReport rep;
  double integ = 0.0;
  std::map<uint64_t, Complex> acc;
  for (const Poly& Q : Qs) acc[Q.key()] = Complex{0.0, 0.0};
  double tacc = 0.0;
  for_each_unit_sample(q, depth, [&](const Laurent& x) {
    const EvalResult E = ev.eval(n, x, s, eval_tol);
    integ += std::norm(E.value);
    tacc += E.truncation_bound;
    for (const Poly& Q : Qs) acc[Q.key()] += E.value * std::conj(chi_twisted(Q, x).to_complex());
  });
  const double total = double(pow_u64(q, depth));
  rep.integral = integ / total;
  rep.truncation_bound = tacc / total;
  rep.c0_extracted = acc[Poly::zero(q).key()] / total;
  rep.c0_closed = coeff_closed(n, Poly::zero(q), s, A, f);
  for (const Poly& Q : Qs) {
    if (Q.is_zero()) continue;
    rep.sum_closed_sq += std::norm(coeff_closed(n, Q, s, A, f));
    rep.sum_extracted_sq += std::norm(acc[Q.key()] / total);
  }
  if (rep.sum_closed_sq > 0)
    rep.kappa_closed = (rep.integral - std::norm(rep.c0_closed)) / rep.sum_closed_sq;
  if (rep.sum_extracted_sq > 1e-300)
    rep.kappa_extracted = (rep.integral - std::norm(rep.c0_extracted)) / rep.sum_extracted_sq;
  rep.kappa_rounded = int(std::lround(rep.kappa_extracted));
  rep.residual_extracted = std::abs(
      rep.integral - (std::norm(rep.c0_extracted) + rep.kappa_rounded * rep.sum_extracted_sq));
  return rep;
}

struct EigenCheckReport {
  Complex neighbor_sum;
  Complex eigenvalue_times_value;
  double relative_residual;
};

/// Adjacency eigen-relation: the sum of E over the q+1 tree neighbors of g
/// equals (q^s + q^{1-s}) E(g, s), within the combined truncation tolerance.
inline EigenCheckReport adjacency_eigen_check(const TreeVertex& g, Complex s,
                                              EisensteinEvaluator& ev, double tol) {
  const uint32_t q = ev.level().modulus();
  const double lnq = std::log(double(q));
  Complex lhs{0.0, 0.0};
  for (const TreeVertex& w : neighbors(g, q)) lhs += ev.eval(w, s, tol).value;
  const Complex ew = std::exp(s * lnq) + std::exp((1.0 - s) * lnq);
  const Complex rhs = ew * ev.eval(g, s, tol).value;
  return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

/// Index of Gamma_0(A) in PGL_2(F_q[T]): |A| + 1.
inline BigInt index_gamma0(const Poly& A, Factorizer& f) {
  if (!A.is_monic() || !f.is_irreducible(A))
    throw std::domain_error("index_gamma0 requires monic irreducible A");
  return pow_bigint(A.modulus(), A.degree()) + 1;
}

/// Order of PGL_2(F_q[T]/(A)) by direct enumeration of invertible matrices
/// modulo scalars. Desk scale: q^{4 deg A} tuples.
inline BigInt order_pgl2_residue(const Poly& A, Factorizer& f) {
  const uint32_t q = A.modulus();
  if (!A.is_monic() || !f.is_irreducible(A))
    throw std::domain_error("order_pgl2_residue requires monic irreducible A");
  const int a = A.degree();
  const uint64_t ring = pow_u64(q, a);
  const uint64_t total = ring * ring * ring * ring;
  if (total > 300000000ull)
    throw resource_error("order_pgl2_residue: enumeration beyond desk scale");
  std::vector<Poly> elems;
  elems.reserve(ring);
  for (uint64_t k = 0; k < ring; ++k) {
    std::vector<uint32_t> cs(a, 0);
    uint64_t kk = k;
    for (int i = 0; i < a; ++i) {
      cs[i] = uint32_t(kk % q);
      kk /= q;
    }
    elems.emplace_back(q, cs);
  }
  auto idx = [&](const Poly& p) -> uint64_t {
    uint64_t v = 0;
    for (int i = a - 1; i >= 0; --i) v = v * q + p.coeff(i);
    return v;
  };
  std::unordered_set<uint64_t> classes;
  classes.reserve(size_t(total / (q - 1)));
  for (uint64_t ia = 0; ia < ring; ++ia)
    for (uint64_t ib = 0; ib < ring; ++ib)
      for (uint64_t ic = 0; ic < ring; ++ic)
        for (uint64_t id = 0; id < ring; ++id) {
          const Poly det = (elems[ia] * elems[id] - elems[ib] * elems[ic]) % A;
          if (det.is_zero()) continue;
          // canonical scaling: first nonzero entry in row-major order -> 1
          const Poly* first = nullptr;
          for (const Poly* e : {&elems[ia], &elems[ib], &elems[ic], &elems[id]})
            if (!e->is_zero()) {
              first = e;
              break;
            }
          // inverse of `first` mod A via extended gcd
          auto [g, u, v] = extended_gcd(*first, A);
          const Poly inv = u;  // g = 1 since A irreducible and first != 0 mod A
          const uint64_t ka = idx((elems[ia] * inv) % A);
          const uint64_t kb = idx((elems[ib] * inv) % A);
          const uint64_t kc = idx((elems[ic] * inv) % A);
          const uint64_t kd = idx((elems[id] * inv) % A);
          classes.insert(((ka * ring + kb) * ring + kc) * ring + kd);
        }
  return BigInt(classes.size());
}

/// Table of closed-form coefficients c(n, Q, s) over a rectangular range.
struct EisCoeffTable {
  Poly A;
  Complex s;
  int a;
  std::map<std::pair<int, uint64_t>, Complex> entries;

  EisCoeffTable(const Poly& level, Complex spectral, int nmin, int nmax, int qdeg_max,
                Factorizer& f)
      : A(level), s(spectral), a(level.degree()) {
    const uint32_t q = level.modulus();
    for (int n = nmin; n <= nmax; ++n) {
      entries[{n, Poly::zero(q).key()}] = coeff_closed(n, Poly::zero(q), s, A, f);
      for (int d = 0; d <= qdeg_max; ++d)
        for_each_monic(q, d, [&](const Poly& Q) {
          entries[{n, Q.key()}] = coeff_closed(n, Q, s, A, f);
        });
    }
  }
};

}  // namespace eisentree
