#include "hexflow/schemes.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include "hexflow/numerics.hpp"

namespace hexflow {

namespace {
constexpr double kDirectWindow = 30.0;  // |f| beyond this switches to the factored form
constexpr double kAsymptote = -350.0;   // chart asymptote switch for very negative f
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

const char* to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Hyperbolic: return "hyperbolic";
    case SchemeKind::Circular: return "circular";
    case SchemeKind::Exponential: return "exponential";
    case SchemeKind::HyperbolicMixed: return "hyperbolic-mixed";
    case SchemeKind::CircularMixed: return "circular-mixed";
    case SchemeKind::ExponentialMixed: return "exponential-mixed";
  }
  return "?";
}

const char* to_string(EdgeVariant v) { return v == EdgeVariant::Plus ? "plus" : "minus"; }

std::optional<SchemeKind> scheme_kind_from_string(std::string_view name) {
  for (SchemeKind k : {SchemeKind::Hyperbolic, SchemeKind::Circular, SchemeKind::Exponential,
                       SchemeKind::HyperbolicMixed, SchemeKind::CircularMixed,
                       SchemeKind::ExponentialMixed})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::optional<EdgeVariant> edge_variant_from_string(std::string_view name) {
  if (name == "plus") return EdgeVariant::Plus;
  if (name == "minus") return EdgeVariant::Minus;
  return std::nullopt;
}

bool Scheme::is_mixed() const {
  return cfg_.kind == SchemeKind::HyperbolicMixed || cfg_.kind == SchemeKind::CircularMixed ||
         cfg_.kind == SchemeKind::ExponentialMixed;
}

Scheme::Family Scheme::family() const {
  switch (cfg_.kind) {
    case SchemeKind::Hyperbolic:
    case SchemeKind::HyperbolicMixed: return Family::Hyperbolic;
    case SchemeKind::Circular:
    case SchemeKind::CircularMixed: return Family::Circular;
    case SchemeKind::Exponential:
    case SchemeKind::ExponentialMixed: return Family::Exponential;
  }
  return Family::Exponential;
}

int Scheme::alpha(int i) const {
  if (family() != Family::Hyperbolic) return 0;
  return cfg_.alpha.empty() ? 0 : cfg_.alpha[i];
}

EdgeVariant Scheme::variant(int e) const {
  return cfg_.variant.empty() ? EdgeVariant::Plus : cfg_.variant[e];
}

double Scheme::product_weight(int e) const {
  double sigma = variant(e) == EdgeVariant::Plus ? 1.0 : -1.0;
  return family() == Family::Circular ? sigma : -sigma;
}

Scheme Scheme::build(const IdealTriangulation& tri, const SchemeConfig& cfg) {
  Scheme s;
  s.cfg_ = cfg;
  const int n = tri.n_boundaries;
  const int ne = static_cast<int>(tri.edges.size());
  s.edge_ends_.reserve(ne);
  for (const auto& e : tri.edges) s.edge_ends_.push_back(e.ends);

  if (static_cast<int>(cfg.eta.size()) != ne)
    throw Error(ErrorKind::BadInput, "eta has " + std::to_string(cfg.eta.size()) +
                                         " entries, expected one per edge (" + std::to_string(ne) + ")");
  if (!cfg.variant.empty() && static_cast<int>(cfg.variant.size()) != ne)
    throw Error(ErrorKind::BadInput, "variant has " + std::to_string(cfg.variant.size()) +
                                         " entries, expected none or one per edge");

  const bool hyperbolic_kind =
      cfg.kind == SchemeKind::Hyperbolic || cfg.kind == SchemeKind::HyperbolicMixed;
  if (!cfg.alpha.empty()) {
    if (static_cast<int>(cfg.alpha.size()) != n)
      throw Error(ErrorKind::BadInput, "alpha has " + std::to_string(cfg.alpha.size()) +
                                           " entries, expected one per boundary");
    if (!hyperbolic_kind) {
      for (int a : cfg.alpha)
        if (a != 0)
          throw Error(ErrorKind::BadInput,
                      "alpha applies only to the hyperbolic kinds; got a nonzero value under " +
                          std::string(to_string(cfg.kind)));
    }
  }
  if (hyperbolic_kind) {
    if (s.cfg_.alpha.empty()) s.cfg_.alpha.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      int a = s.cfg_.alpha[i];
      bool ok = cfg.kind == SchemeKind::Hyperbolic ? (a == -1 || a == 0 || a == 1)
                                                   : (a == 0 || a == 1);
      if (!ok)
        throw Error(ErrorKind::BadInput, "boundary " + std::to_string(i) + ": alpha " +
                                             std::to_string(a) + " not allowed under " +
                                             std::string(to_string(cfg.kind)));
    }
  }

  if (!s.is_mixed()) {
    for (int e = 0; e < ne && !cfg.variant.empty(); ++e)
      if (cfg.variant[e] == EdgeVariant::Minus)
        throw Error(ErrorKind::BadInput, "edge " + std::to_string(e) +
                                             ": minus variant requires a mixed scheme kind");
  }

  for (int e = 0; e < ne; ++e) {
    double eta = cfg.eta[e];
    auto [a, b] = tri.edges[e].ends;
    auto fail = [&](const std::string& need) {
      throw Error(ErrorKind::BadInput, "edge " + std::to_string(e) + " (" + std::to_string(a) +
                                           "," + std::to_string(b) + "): eta = " +
                                           std::to_string(eta) + " violates " + need);
    };
    switch (cfg.kind) {
      case SchemeKind::Hyperbolic: {
        double aa = static_cast<double>(s.alpha(a)) * s.alpha(b);
        if (!(eta > 0.0) || !(eta > aa)) fail("eta > 0 and eta > alpha_i alpha_j");
        break;
      }
      case SchemeKind::Circular:
        if (!(eta > -1.0)) fail("eta > -1");
        break;
      case SchemeKind::Exponential:
        if (!(eta > 0.0)) fail("eta > 0");
        break;
      case SchemeKind::HyperbolicMixed:
        if (!(eta > 1.0)) fail("eta > 1");
        break;
      case SchemeKind::CircularMixed:
        if (!(eta >= 1.0)) fail("eta >= 1");
        break;
      case SchemeKind::ExponentialMixed:
        if (!(eta > 0.0)) fail("eta > 0");
        break;
    }
  }

  // Sign classes. Minus edges join opposite classes; a variant map that cannot
  // be two-colored admits no chart making the curvature Jacobian symmetric
  // (equivalently, some face carries an odd number of minus edges).
  s.sign_class_.assign(n, 0);
  if (s.is_mixed()) {
    for (int start = 0; start < n; ++start) {
      if (s.sign_class_[start] != 0) continue;
      std::vector<int> component;
      s.sign_class_[start] = 1;
      std::deque<int> queue{start};
      while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        component.push_back(i);
        for (int e = 0; e < ne; ++e) {
          auto [a, b] = tri.edges[e].ends;
          if (a != i && b != i) continue;
          int j = a == i ? b : a;
          int want = s.sign_class_[i] * (s.variant(e) == EdgeVariant::Plus ? 1 : -1);
          if (s.sign_class_[j] == 0) {
            s.sign_class_[j] = want;
            queue.push_back(j);
          } else if (s.sign_class_[j] != want) {
            throw Error(ErrorKind::BadInput,
                        "edge " + std::to_string(e) + " (" + std::to_string(a) + "," +
                            std::to_string(b) +
                            "): variant tags are inconsistent (some face has an odd number of "
                            "minus edges); no symmetrizing chart exists");
          }
        }
      }
      // The mirrored class is the minority; on a tie, the one not containing
      // the lowest boundary id of the component (the traversal start).
      int plus = 0;
      for (int i : component) plus += s.sign_class_[i] == 1 ? 1 : 0;
      int minus = static_cast<int>(component.size()) - plus;
      if (plus < minus)
        for (int i : component) s.sign_class_[i] = -s.sign_class_[i];
    }
  } else {
    s.sign_class_.assign(n, 1);
  }
  return s;
}

bool Scheme::solver_supported(std::string* why) const {
  for (int i = 0; i < n_boundaries(); ++i) {
    if (alpha(i) == -1) {
      if (why)
        *why = "boundary " + std::to_string(i) +
               " has hyperbolic weight alpha = -1, which is evaluation-only";
      return false;
    }
  }
  return true;
}

bool Scheme::global_convergence_certified() const {
  if (cfg_.kind != SchemeKind::Circular) return false;
  for (double eta : cfg_.eta)
    if (eta > 0.0) return false;
  return true;
}

void Scheme::check_f_domain(int i, double f) const {
  if (family() == Family::Circular && !(f > 0.0))
    throw Error(ErrorKind::DomainError,
                "boundary " + std::to_string(i) + ": circular factor needs f > 0, got " +
                    std::to_string(f));
  if (family() == Family::Hyperbolic && alpha(i) == -1 && !(f < 0.0))
    throw Error(ErrorKind::DomainError,
                "boundary " + std::to_string(i) + ": alpha = -1 needs f < 0, got " +
                    std::to_string(f));
}

double Scheme::factor(int i, double f) const {
  switch (family()) {
    case Family::Hyperbolic: {
      int a = alpha(i);
      if (a == 0) return 1.0;
      if (a == 1) return f > 350.0 ? std::exp(f) : std::sqrt(1.0 + std::exp(2.0 * f));
      return std::sqrt(-std::expm1(2.0 * f));  // alpha = -1, f < 0
    }
    case Family::Circular:
      return std::sqrt(std::expm1(2.0 * f));  // f > 0
    case Family::Exponential:
      return std::exp(f);
  }
  return 0.0;
}

Interval Scheme::domain_of_u(int i) const {
  Interval base;
  switch (family()) {
    case Family::Hyperbolic:
      base = alpha(i) == 0 ? Interval{-kInf, kInf} : Interval{-kInf, 0.0};
      break;
    case Family::Circular:
      base = {-M_PI / 2.0, 0.0};
      break;
    case Family::Exponential:
      base = {-kInf, 0.0};
      break;
  }
  if (sign_class_[i] < 0) return {-base.hi, -base.lo};
  return base;
}

double Scheme::u_from_f(int i, double f) const {
  check_f_domain(i, f);
  double u;
  switch (family()) {
    case Family::Hyperbolic:
      switch (alpha(i)) {
        case 0: u = f; break;
        case 1: u = f < kAsymptote ? f - M_LN2 : -std::asinh(std::exp(-f)); break;
        default: u = f < kAsymptote ? f - M_LN2 : -num::arccosh(std::exp(-f)); break;
      }
      break;
    case Family::Circular:
      u = -std::asin(std::exp(-f));
      break;
    case Family::Exponential:
      u = -std::exp(-f);
      break;
  }
  return sign_class_[i] < 0 ? -u : u;
}

double Scheme::f_from_u(int i, double u) const {
  if (!domain_of_u(i).contains(u))
    throw Error(ErrorKind::DomainError,
                "boundary " + std::to_string(i) + ": u = " + std::to_string(u) +
                    " outside the chart domain");
  double v = sign_class_[i] < 0 ? -u : u;  // base-chart coordinate, in (lo, hi)
  switch (family()) {
    case Family::Hyperbolic:
      switch (alpha(i)) {
        case 0: return v;
        case 1: return v < kAsymptote ? v + M_LN2 : -std::log(std::sinh(-v));
        default: return v < kAsymptote ? v + M_LN2 : -std::log(std::cosh(v));
      }
    case Family::Circular:
      return -std::log(std::sin(-v));
    case Family::Exponential:
      return -std::log(-v);
  }
  return 0.0;
}

double Scheme::dfdu(int i, double f) const {
  check_f_domain(i, f);
  double c = factor(i, f);
  return sign_class_[i] < 0 ? -c : c;
}

Scheme::EdgeEval Scheme::edge_eval(int e, double f_a, double f_b) const {
  const auto [ia, ib] = edge_ends_[e];
  check_f_domain(ia, f_a);
  check_f_domain(ib, f_b);
  const double w = product_weight(e);
  const double eta = cfg_.eta[e];

  EdgeEval out;
  if (std::abs(f_a) <= kDirectWindow && std::abs(f_b) <= kDirectWindow) {
    double p = family() == Family::Exponential ? std::cosh(f_b - f_a)
                                               : factor(ia, f_a) * factor(ib, f_b);
    double chl = w * p + eta * std::exp(f_a + f_b);
    out.cosh_l = chl;
    if (!(chl > 1.0)) return out;
    out.admissible = true;
    out.sinh_l = std::sqrt((chl - 1.0) * (chl + 1.0));
    out.l = num::arccosh(chl);
    return out;
  }

  // Factored form: cosh l = e^{f_a + f_b} (eta + w t) with ln t computed
  // overflow-free per family.
  auto lam = [&](int i, double f) -> double {
    switch (family()) {
      case Family::Hyperbolic:
        switch (alpha(i)) {
          case 0: return -2.0 * f;
          case 1: return f <= 0.0 ? -2.0 * f + std::log1p(std::exp(2.0 * f))
                                  : std::log1p(std::exp(-2.0 * f));
          default: return -2.0 * f + std::log1p(-std::exp(2.0 * f));  // f < 0
        }
      case Family::Circular:
        return std::log1p(-std::exp(-2.0 * f));  // f > 0
      case Family::Exponential:
        return 0.0;  // unused
    }
    return 0.0;
  };
  double lnt;
  if (family() == Family::Exponential) {
    double hi = std::max(-2.0 * f_a, -2.0 * f_b), lo = std::min(-2.0 * f_a, -2.0 * f_b);
    lnt = hi + std::log1p(std::exp(lo - hi)) - M_LN2;
  } else {
    lnt = 0.5 * (lam(ia, f_a) + lam(ib, f_b));
  }

  double ln_q;
  if (w < 0.0) {
    // eta > 0 holds for every kind that can produce w < 0.
    if (lnt >= std::log(eta)) return out;  // Q <= 0, cosh l <= 0
    ln_q = std::log(eta - std::exp(lnt));
  } else {
    if (lnt > 60.0) {
      ln_q = lnt + std::log1p(eta * std::exp(-lnt));
    } else {
      double q = eta + std::exp(lnt);
      if (!(q > 0.0)) return out;
      ln_q = std::log(q);
    }
  }

  double ln_chl = f_a + f_b + ln_q;
  if (!(ln_chl > 0.0)) {
    out.cosh_l = std::exp(ln_chl);
    return out;
  }
  out.admissible = true;
  if (ln_chl >= 37.0) {
    // sinh and cosh agree to 1e-32 here; l = ln(2 cosh l) to the same accuracy
    out.cosh_l = ln_chl < 709.0 ? std::exp(ln_chl) : kInf;
    out.sinh_l = out.cosh_l;
    out.l = ln_chl + M_LN2;
    return out;
  }
  double chl = std::exp(ln_chl);
  out.cosh_l = chl;
  if (!(chl > 1.0)) {  // rounding right at the threshold
    out.admissible = false;
    return out;
  }
  out.sinh_l = std::sqrt((chl - 1.0) * (chl + 1.0));
  out.l = num::arccosh(chl);
  return out;
}

double Scheme::edge_cosh_length(int e, double f_a, double f_b) const {
  return edge_eval(e, f_a, f_b).cosh_l;
}

double Scheme::edge_length(int e, double f_a, double f_b) const {
  EdgeEval ev = edge_eval(e, f_a, f_b);
  if (!ev.admissible)
    throw Error(ErrorKind::NotAdmissible,
                "edge " + std::to_string(e) + " (" + std::to_string(edge_ends_[e][0]) + "," +
                    std::to_string(edge_ends_[e][1]) + ") degenerates: cosh l = " +
                    std::to_string(ev.cosh_l) + " <= 1");
  return ev.l;
}

double Scheme::coth_d_from_cosh(int e, int end, double f_a, double f_b, double cosh_l,
                                double sinh_l) const {
  const auto [ia, ib] = edge_ends_[e];
  check_f_domain(ia, f_a);
  check_f_domain(ib, f_b);
  // Differentiating the length law leaves the product term with the variant
  // sign for every family: d/df sqrt(e^{2f} - 1) flips the circular weight.
  const double sigma = variant(e) == EdgeVariant::Plus ? 1.0 : -1.0;
  const double ca = factor(ia, f_a), cb = factor(ib, f_b);
  if (end == 0) return (sigma * cb + cosh_l * ca) / (sinh_l * ca);
  return (sigma * ca + cosh_l * cb) / (sinh_l * cb);
}

double Scheme::coth_d(int e, int end, double f_a, double f_b, double l) const {
  if (!(l > 0.0)) throw Error(ErrorKind::DomainError, "coth_d needs a positive length");
  if (end != 0 && end != 1) throw Error(ErrorKind::BadInput, "coth_d end must be 0 or 1");
  return coth_d_from_cosh(e, end, f_a, f_b, std::cosh(l), std::sinh(l));
}

}  // namespace hexflow
