#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "eisentree/dirichlet.hpp"
#include "eisentree/eisenstein.hpp"

namespace eisentree {

/// Compactly supported test weight on the height lattice: a finite map
/// n -> psi(q^n) with rational values.
class TestWeight {
 public:
  TestWeight() = default;
  explicit TestWeight(std::map<int, Rational> support) : support_(std::move(support)) {
    for (auto it = support_.begin(); it != support_.end();)
      it = (it->second == 0) ? support_.erase(it) : std::next(it);
  }

  static TestWeight delta(int n) { return TestWeight({{n, Rational(1)}}); }

  /// Parse a support list "n:value[,n:value...]"; values may be "p/q".
  static TestWeight parse(const std::string& text) {
    std::map<int, Rational> m;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("weight entry must be n:value, got '" + item + "'");
      const int n = std::stoi(item.substr(0, colon));
      const std::string val = item.substr(colon + 1);
      const auto slash = val.find('/');
      Rational r = slash == std::string::npos
                       ? Rational(BigInt(val))
                       : Rational(BigInt(val.substr(0, slash)), BigInt(val.substr(slash + 1)));
      m[n] = r;
    }
    if (m.empty()) throw std::invalid_argument("empty weight support");
    return TestWeight(std::move(m));
  }

  const std::map<int, Rational>& support() const { return support_; }

  /// Mellin transform H(s) = sum psi(q^n) q^{-ns}.
  Complex mellin(uint32_t q, Complex s) const {
    const double lnq = std::log(double(q));
    Complex h{0.0, 0.0};
    for (const auto& [n, v] : support_) h += v.convert_to<double>() * std::exp(-double(n) * s * lnq);
    return h;
  }

  Rational mass() const {  // H(0)
    Rational h = 0;
    for (const auto& [n, v] : support_) h += v;
    return h;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : support_) {
      if (!first) os << ",";
      first = false;
      os << n << ":" << v.str();
    }
    return os.str();
  }

 private:
  std::map<int, Rational> support_;
};

struct IParts {
  double I1 = 0.0;
  double I2 = 0.0;
  double I = 0.0;
  /// Q-sum with only the leading sigma term of the coefficient square kept
  /// (the route that the residue analysis actually evaluates).
  double I2_leading = 0.0;
};

/// Exact finite-sum evaluation of the inner products at s = 1/2 + it:
///   I1 = sum_n psi(q^n) |c(n, 0, s)|^2,
///   I2 = kappa sum_n psi(q^n) sum_{Q monic != 0} |c(n, Q, s)|^2,
/// with the Q-range per n finite by the vanishing rule (deg Q <= a - 2 - n).
/// I = I1 + I2 exactly. I2_leading replaces |c(n,Q,s)|^2 by its leading
/// sigma-term square q^{n+2-2a} |1-q^{-1-2it}|^2 |1-q^{-2it(a-1-degQ-n)}|^2
/// |sigma_{2it}(Q)|^2.
inline IParts compute_I(const Poly& A, double t, const TestWeight& psi, double kappa,
                        Factorizer& f) {
  const uint32_t q = A.modulus();
  require_nonsingular_t(q, t);
  const int a = A.degree();
  const double lnq = std::log(double(q));
  const Complex s{0.5, t};
  IParts out;
  const double lead_pref = std::norm(1.0 - std::exp(Complex{-1.0, -2.0 * t} * lnq));
  for (const auto& [n, wr] : psi.support()) {
    const double w = wr.convert_to<double>();
    out.I1 += w * std::norm(coeff_closed(n, Poly::zero(q), s, A, f));
    double qsum = 0.0, qlead = 0.0;
    for (int d = 0; d <= a - 2 - n; ++d) {
      for_each_monic(q, d, [&](const Poly& Q) {
        qsum += std::norm(coeff_closed(n, Q, s, A, f));
        const double osc =
            std::norm(1.0 - std::exp(Complex{0.0, -2.0 * t * double(a - 1 - d - n)} * lnq));
        qlead += std::exp(double(n + 2 - 2 * a) * lnq) * osc *
                 std::norm(sigma_complex(Q, Complex{0.0, 2.0 * t}, f));
      });
    }
    out.I2 += kappa * w * qsum;
    out.I2_leading += kappa * w * lead_pref * qlead;
  }
  out.I = out.I1 + out.I2;
  return out;
}

struct LeadingPrediction {
  double value;         // ((1+1/q)/(2 log q)) log|A| H(0) / (|A|+1)
  double G0_closed;     // |A|(1+q^{-1}) / (q^2 |1-q^{-1-2it}|^2)
  double G0_assembled;  // the three-term bracket route to the same number
};

/// Residue-side prediction of the leading term, with the G(0) closed-form
/// identity exposed: the assembled bracket must match the closed form.
inline LeadingPrediction predicted_leading(const Poly& A, double t, const TestWeight& psi) {
  const uint32_t q = A.modulus();
  require_nonsingular_t(q, t);
  const double lnq = std::log(double(q));
  const double absA = std::pow(double(q), A.degree());
  const double H0 = psi.mass().convert_to<double>();
  LeadingPrediction out{};
  out.value = (1.0 + 1.0 / q) / (2.0 * lnq) * std::log(absA) * H0 / (absA + 1.0);
  const Complex z = std::exp(Complex{0.0, 2.0 * t} * lnq);
  const double r = 1.0 / q;
  const Complex bracket = 2.0 / (1.0 - r) - (1.0 / z) / (1.0 - r / z) - z / (1.0 - r * z);
  out.G0_assembled = (absA * (1.0 - r) / (q * double(q) * std::norm(1.0 - z)) * bracket).real();
  out.G0_closed = absA * (1.0 + r) / (double(q) * q * std::norm(1.0 - r / z));
  return out;
}

struct QueLevelRecord {
  int a = 0;
  Poly A;
  BigInt m;       // |A| + 1
  double I1 = 0.0, I2 = 0.0, I = 0.0;
  double I2_leading = 0.0;
  double predicted_leading = 0.0;
  double scaled_I = 0.0;  // (m / H0) * I2_leading, the regression ordinate
  double residual = 0.0;  // against the fitted line

  QueLevelRecord() : A(5) {}
};

struct QueRun {
  uint32_t q = 5;
  double t = 1.0;
  TestWeight psi;
  double kappa = 1.0;
  std::vector<QueLevelRecord> levels;
  double fitted_slope = std::numeric_limits<double>::quiet_NaN();
  double fitted_intercept = std::numeric_limits<double>::quiet_NaN();
  double target_slope = 0.0;
  double max_residual = std::numeric_limits<double>::quiet_NaN();
  bool slope_defined = false;

  json summary_json() const {
    return {{"fitted_slope", fitted_slope},
            {"target_slope", target_slope},
            {"max_residual", max_residual},
            {"kappa", kappa},
            {"slope_defined", slope_defined},
            {"q", q},
            {"t", t},
            {"psi", psi.to_string()}};
  }

  std::string csv() const {
    std::ostringstream os;
    os << "q,A,deg_A,abs_A,m,t,H0,I1,I2,I,predicted_leading,scaled_I,residual\n";
    for (const auto& r : levels) {
      os << q << "," << r.A.to_compact_string() << "," << r.a << ","
         << pow_bigint(q, r.a).str() << "," << r.m.str() << "," << t << ","
         << psi.mass().str() << "," << r.I1 << "," << r.I2 << "," << r.I << ","
         << r.predicted_leading << "," << r.scaled_I << "," << r.residual << "\n";
    }
    return os.str();
  }
};

/// Level sweep: one monic irreducible per degree (deterministic
/// first-in-enumeration choice), exact per-level sums, and a least-squares
/// fit of scaled_I against log|A|.
inline QueRun que_sweep(uint32_t q, double t, int deg_min, int deg_max, const TestWeight& psi,
                        double kappa, Factorizer& f) {
  check_modulus(q);
  require_nonsingular_t(q, t);
  if (deg_min < 1 || deg_max < deg_min) throw std::domain_error("bad degree range");
  QueRun run;
  run.q = q;
  run.t = t;
  run.psi = psi;
  run.kappa = kappa;
  const double lnq = std::log(double(q));
  run.target_slope = (1.0 + 1.0 / q) / (2.0 * lnq);
  const double H0 = psi.mass().convert_to<double>();
  if (H0 == 0.0) throw std::domain_error("weight has zero total mass");
  for (int a = deg_min; a <= deg_max; ++a) {
    QueLevelRecord rec;
    rec.a = a;
    rec.A = f.first_irreducible(a);
    rec.m = pow_bigint(q, a) + 1;
    const IParts parts = compute_I(rec.A, t, psi, kappa, f);
    rec.I1 = parts.I1;
    rec.I2 = parts.I2;
    rec.I = parts.I;
    rec.I2_leading = parts.I2_leading;
    rec.predicted_leading = predicted_leading(rec.A, t, psi).value;
    rec.scaled_I = rec.m.convert_to<double>() / H0 * rec.I2_leading;
    run.levels.push_back(rec);
  }
  // least squares y = slope x + intercept over x = log|A|
  const size_t N = run.levels.size();
  if (N >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : run.levels) {
      const double x = r.a * lnq, y = r.scaled_I;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double det = N * sxx - sx * sx;
    run.fitted_slope = (N * sxy - sx * sy) / det;
    run.fitted_intercept = (sy * sxx - sx * sxy) / det;
    run.slope_defined = true;
    run.max_residual = 0.0;
    for (auto& r : run.levels) {
      r.residual = r.scaled_I - (run.fitted_slope * r.a * lnq + run.fitted_intercept);
      run.max_residual = std::max(run.max_residual, std::abs(r.residual));
    }
  }
  return run;
}

// ---------------------------------------------------------------------------
// Flat key = value configuration for the verification harness.
// ---------------------------------------------------------------------------

struct VerifyConfig {
  uint32_t q = 5;
  double t = 1.0;
  int deg_min = 1;
  int deg_max = 6;
  TestWeight psi = TestWeight::delta(0);
  double kappa = 1.0;
  std::string out_dir = ".";

  static VerifyConfig parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
  }

  static VerifyConfig parse(const std::string& text) {
    VerifyConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::string stripped;
      for (char c : line)
        if (!isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected key = value");
      const std::string key = stripped.substr(0, eq), value = stripped.substr(eq + 1);
      try {
        if (key == "q") cfg.q = uint32_t(std::stoul(value));
        else if (key == "t") cfg.t = std::stod(value);
        else if (key == "deg_min") cfg.deg_min = std::stoi(value);
        else if (key == "deg_max") cfg.deg_max = std::stoi(value);
        else if (key == "psi") cfg.psi = TestWeight::parse(value);
        else if (key == "kappa") cfg.kappa = std::stod(value);
        else if (key == "out_dir") cfg.out_dir = value;
        else
          throw std::invalid_argument("unknown key '" + key + "'");
      } catch (const std::invalid_argument&) {
        throw;
      } catch (const std::exception& e) {
        throw std::invalid_argument("config line " + std::to_string(lineno) + ", field '" + key +
                                    "': " + e.what());
      }
    }
    cfg.validate();
    return cfg;
  }

  void validate() const {
    check_modulus(q);  // q must be prime > 3
    if (t == 0.0) throw std::domain_error("t = 0 rejected: the spectral parameter must be a nonzero real");
    require_nonsingular_t(q, t);
    if (deg_min < 1 || deg_max < deg_min) throw std::domain_error("bad degree range in config");
  }
};

}  // namespace eisentree
