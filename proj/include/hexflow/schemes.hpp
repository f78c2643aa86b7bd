#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexflow/topology.hpp"

namespace hexflow {

// The six discrete conformal structures, named by the per-boundary factor
// function each family is built from:
//   Hyperbolic   factor sqrt(1 + alpha e^{2f}), alpha in {-1,0,1} per boundary
//   Circular     factor sqrt(e^{2f} - 1)
//   Exponential  factor e^{f}
// The *Mixed kinds admit a per-edge sign variant; MINUS edges flip the product
// term of the length law and force their ends into opposite sign classes.
enum class SchemeKind {
  Hyperbolic,
  Circular,
  Exponential,
  HyperbolicMixed,
  CircularMixed,
  ExponentialMixed,
};

enum class EdgeVariant { Plus, Minus };

const char* to_string(SchemeKind kind);
const char* to_string(EdgeVariant v);
std::optional<SchemeKind> scheme_kind_from_string(std::string_view name);
std::optional<EdgeVariant> edge_variant_from_string(std::string_view name);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::Exponential;
  // Per boundary; only the hyperbolic kinds read it (empty means all zero).
  std::vector<int> alpha;
  // Per edge id.
  std::vector<double> eta;
  // Per edge id; empty means all Plus. Non-mixed kinds require all Plus.
  std::vector<EdgeVariant> variant;
};

struct Interval {
  double lo = 0.0, hi = 0.0;  // open
  bool contains(double u) const { return u > lo && u < hi; }
};

// A validated scheme bound to a triangulation. Construction checks weight
// ranges, derives sign classes for mixed kinds from the variant map (Minus
// edges join opposite classes; an inconsistent map is rejected), and fixes the
// mirrored class as the minority one per connected component.
class Scheme {
 public:
  static Scheme build(const IdealTriangulation& tri, const SchemeConfig& cfg);

  const SchemeConfig& config() const { return cfg_; }
  SchemeKind kind() const { return cfg_.kind; }
  int n_boundaries() const { return static_cast<int>(sign_class_.size()); }
  bool is_mixed() const;

  // +1 for the base chart, -1 for the mirrored (u -> -u) class.
  int sign_class(int i) const { return sign_class_[i]; }
  int alpha(int i) const;
  double eta(int e) const { return cfg_.eta[e]; }
  EdgeVariant variant(int e) const;

  Interval domain_of_u(int i) const;
  double u_from_f(int i, double f) const;
  double f_from_u(int i, double u) const;
  // df_i/du_i evaluated at f; this is the chart factor of the Jacobian chain.
  double dfdu(int i, double f) const;

  // False when some boundary is evaluation-only (hyperbolic alpha = -1).
  bool solver_supported(std::string* why = nullptr) const;
  // True when every weight lies in the range with a global convergence
  // guarantee (currently: pure Circular with eta <= 0).
  bool global_convergence_certified() const;

  // cosh of the edge length law at the f-values of the edge's two ends, in end
  // order (lower id first). Values <= 1 mean the edge degenerates; callers
  // decide whether that is an error. May return 0 or -inf for configurations
  // that are inadmissible by any margin.
  double edge_cosh_length(int e, double f_a, double f_b) const;

  // Full evaluation; length stays finite even where cosh overflows.
  struct EdgeEval {
    double cosh_l = 0.0, sinh_l = 0.0, l = 0.0;
    bool admissible = false;
  };
  EdgeEval edge_eval(int e, double f_a, double f_b) const;

  // arccosh of the length law; throws NotAdmissible naming the edge.
  double edge_length(int e, double f_a, double f_b) const;

  // The oriented Jacobian coefficient d l_e / d f_end where end is 0 or 1 in
  // the edge's stored end order; l is the edge length.
  double coth_d(int e, int end, double f_a, double f_b, double l) const;
  // Same, from precomputed cosh/sinh of the length.
  double coth_d_from_cosh(int e, int end, double f_a, double f_b, double cosh_l,
                          double sinh_l) const;

  // Rejects f outside the chart image (DomainError naming the boundary).
  void check_f_domain(int i, double f) const;

 private:
  SchemeConfig cfg_;
  std::vector<int> sign_class_;
  std::vector<std::array<int, 2>> edge_ends_;  // copied from the triangulation at build

  enum class Family { Hyperbolic, Circular, Exponential };
  Family family() const;

  // Product-term weight of the length law for edge e: cosh l = w P + eta e^{f_a + f_b}.
  double product_weight(int e) const;
  // Per-boundary factor C_r(f) of the family (before any sign-class mirroring).
  double factor(int i, double f) const;
};

}  // namespace hexflow
