#pragma once

#include "specls/exact.hpp"
#include "specls/graph.hpp"
#include "specls/polynomial.hpp"

#include <Eigen/Core>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace specls {

using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// Certified enclosure of the spectral radius with an approximate Perron vector.
struct SpectralCertificate
{
  Interval lambda;          ///< contains the spectral radius
  Eigen::VectorXd perron;   ///< nonnegative, max entry exactly 1
  double residual = 0;      ///< max |A x - rho x|, rho the Rayleigh quotient
  bool converged = false;
  int iterations = 0;
  double tol = 0;

  double lambda_lo() const { return static_cast<double>(down(lambda.lo)); }
  double lambda_hi() const { return static_cast<double>(up(lambda.hi)); }
  double width() const { return static_cast<double>(lambda.width()); }
};

/// One step of the bound sequence, recorded on request.
struct EnclosureStep
{
  long double min_ratio;
  long double rayleigh;
  long double max_ratio;
};

struct EnclosureOptions
{
  int max_iterations = 200000;
  /// Positive start vector over all n vertices; all-ones when empty.
  Eigen::VectorXd start;
  /// Bound sequence of the component that supplies the Perron vector.
  std::vector<EnclosureStep> *trace = nullptr;
};

/// Two-sided enclosure of lambda(G) by shifted power iteration with
/// Collatz-Wielandt bounds on each connected component.
///
/// The per-vertex ratio (Ax)_v / x_v is evaluated in long double and widened
/// by a relative slack of (deg(v) + 3) unit roundoffs, which bounds the
/// accumulated rounding of the neighbour sum and the division. The bounds of
/// every iteration are valid for the exact x stored, so the running
/// intersection is returned.
SpectralCertificate perron_enclosure(const Graph &g, double tol, const EnclosureOptions &opts = {});

enum class Ordering
{
  Less,
  Greater,
  Tie, ///< both enclosures narrower than the floor and overlapping
};

std::string to_string(Ordering o);

struct LambdaComparison
{
  Ordering order = Ordering::Tie;
  bool indeterminate = false; ///< an enclosure failed to converge
  Interval first;
  Interval second;
  double tol_reached = 0;
};

/// Tightens both enclosures by a factor ten per round, from 1e-6 down to
/// tol_floor, until the intervals separate.
LambdaComparison compare_lambda(const Graph &g, const Graph &h, double tol_floor = 1e-12);

Rational rayleigh_lower_bound(const Graph &g);

/// G - {vw : w in W} + {uw : w in W}; throws unless W is a subset of
/// N(v) \ N(u) avoiding u and v.
Graph rotate_edges(const Graph &g, int u, int v, const VertexSet &w);

// ---------------------------------------------------------------------------
// Certified comparison of lambda(G) against a reference value.

/// A spectral reference: the spectral radius of a fixed graph, or the
/// largest root of an exact polynomial. Enclosures are cached per tolerance
/// and the object may be shared across threads.
class LambdaTarget
{
public:
  static LambdaTarget of_graph(Graph h, std::string label);
  static LambdaTarget largest_root(Polynomial p, std::string label);
  static LambdaTarget value(const BigRational &v, std::string label);
  /// sqrt(k) for k >= 0.
  static LambdaTarget sqrt_of(const BigRational &k, std::string label);

  const std::string &label() const { return state_->label; }
  Interval enclosure(double tol) const;
  const std::optional<Graph> &graph() const { return state_->graph; }
  const std::optional<Polynomial> &polynomial() const { return state_->poly; }

private:
  struct State
  {
    std::string label;
    std::optional<Graph> graph;
    std::optional<Polynomial> poly;
    std::mutex mutex;
    std::map<double, Interval> cache;
    std::optional<SpectralCertificate> last;
  };
  std::shared_ptr<State> state_;
};

enum class Decision
{
  Less,
  Equal,
  Greater,
  Indeterminate,
};

std::string to_string(Decision d);

struct LambdaDecision
{
  Decision decision = Decision::Indeterminate;
  Interval lambda;      ///< last enclosure of lambda(G)
  Interval target;      ///< last enclosure of the reference
  std::string method;   ///< "enclosure", "identical", "exact"
};

struct DecisionOptions
{
  double tol_floor = 1e-12;
  /// Graphs up to this order fall back to exact characteristic polynomials
  /// when the enclosures cannot separate.
  int exact_limit = 24;
};

LambdaDecision decide_lambda(const Graph &g, const LambdaTarget &target, const DecisionOptions &opts = {});

} // namespace specls
