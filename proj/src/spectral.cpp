#include "specls/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace specls {

namespace {

/// Adjacency of one connected component in compressed rows, local labels.
struct ComponentOperator
{
  std::vector<int> vertices;
  std::vector<int> offsets;
  std::vector<int> nbrs;

  int size() const { return static_cast<int>(vertices.size()); }
  int degree(int i) const { return offsets[i + 1] - offsets[i]; }

  template <typename Derived, typename Out>
  void apply(const Eigen::MatrixBase<Derived> &x, Out &y) const
  {
    for (int i = 0; i < size(); ++i) {
      typename Derived::Scalar s = 0;
      for (int k = offsets[i]; k < offsets[i + 1]; ++k)
        s += x[nbrs[k]];
      y[i] = s;
    }
  }
};

ComponentOperator make_operator(const Graph &g, const std::vector<int> &comp, std::vector<int> &local)
{
  ComponentOperator op;
  op.vertices = comp;
  for (std::size_t i = 0; i < comp.size(); ++i)
    local[comp[i]] = static_cast<int>(i);
  op.offsets.reserve(comp.size() + 1);
  op.offsets.push_back(0);
  for (int v : comp) {
    auto r = g.row(v);
    for (int i = 0; i < g.words(); ++i)
      for (Word w = r[i]; w; w &= w - 1)
        op.nbrs.push_back(local[i * 64 + std::countr_zero(w)]);
    op.offsets.push_back(static_cast<int>(op.nbrs.size()));
  }
  return op;
}

template <typename Scalar>
struct PowerResult
{
  Scalar lo;
  Scalar hi;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  int iterations;
  bool converged;
};

/// Shifted power iteration x <- (A + cI) x with running Collatz-Wielandt
/// bounds on A. Requires a connected component and a positive start.
template <typename Scalar>
PowerResult<Scalar> collatz_wielandt(const ComponentOperator &op, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x,
                                     Scalar shift, Scalar tol, int max_iterations,
                                     std::vector<EnclosureStep> *trace)
{
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Scalar u = std::numeric_limits<Scalar>::epsilon() / 2;
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Vec y(op.size());
  Scalar best_lo = 0, best_hi = inf;
  x /= x.maxCoeff();
  int it = 0;
  bool converged = false;
  while (true) {
    ++it;
    op.apply(x, y);
    Scalar lo = inf, hi = 0;
    for (int i = 0; i < op.size(); ++i) {
      Scalar r = y[i] / x[i];
      Scalar slack = static_cast<Scalar>(op.degree(i) + 3) * u;
      lo = std::min(lo, r * (1 - slack));
      hi = std::max(hi, r * (1 + slack));
    }
    best_lo = std::max(best_lo, lo);
    best_hi = std::min(best_hi, hi);
    if (trace)
      trace->push_back({static_cast<long double>(lo), static_cast<long double>(x.dot(y) / x.squaredNorm()),
                        static_cast<long double>(hi)});
    if (best_hi - best_lo <= tol) {
      converged = true;
      break;
    }
    if (it >= max_iterations)
      break;
    x = y + shift * x;
    x /= x.maxCoeff();
  }
  return {best_lo, best_hi, std::move(x), it, converged};
}

} // namespace

SpectralCertificate perron_enclosure(const Graph &g, double tol, const EnclosureOptions &opts)
{
  const int n = g.order();
  if (n == 0)
    throw std::invalid_argument("perron_enclosure: graph has no vertices");
  if (!(tol > 0))
    throw std::invalid_argument("perron_enclosure: tolerance must be positive");
  if (opts.start.size() != 0 && opts.start.size() != n)
    throw std::invalid_argument("perron_enclosure: start vector has wrong length");

  SpectralCertificate cert;
  cert.tol = tol;
  cert.perron = Eigen::VectorXd::Zero(n);
  cert.lambda = {-1, -1};
  cert.converged = true;

  std::vector<int> local(static_cast<std::size_t>(n), -1);
  long double overall_hi = 0;
  for (const auto &comp : components(g)) {
    Interval iv{0, 0};
    VectorXld x = VectorXld::Ones(static_cast<Eigen::Index>(comp.size()));
    int iterations = 0;
    bool conv = true;
    if (comp.size() > 1) {
      ComponentOperator op = make_operator(g, comp, local);
      std::int64_t twice_m = static_cast<std::int64_t>(op.nbrs.size());
      int max_deg = 0;
      for (int i = 0; i < op.size(); ++i)
        max_deg = std::max(max_deg, op.degree(i));
      if (opts.start.size() == n)
        for (int i = 0; i < op.size(); ++i)
          x[i] = opts.start[comp[i]] > 0 ? opts.start[comp[i]] : 1.0;
      long double lower = std::max<long double>(static_cast<long double>(twice_m) / op.size(),
                                                std::sqrt(static_cast<long double>(max_deg)));
      auto res = collatz_wielandt<long double>(op, x, lower / 2, static_cast<long double>(tol),
                                               opts.max_iterations, nullptr);
      iv = {res.lo, res.hi};
      x = res.x;
      iterations = res.iterations;
      conv = res.converged;
    }
    cert.iterations = std::max(cert.iterations, iterations);
    overall_hi = std::max(overall_hi, iv.hi);
    if (iv.lo > cert.lambda.lo) {
      cert.lambda.lo = iv.lo;
      cert.perron.setZero();
      for (std::size_t i = 0; i < comp.size(); ++i)
        cert.perron[comp[i]] = static_cast<double>(x[static_cast<Eigen::Index>(i)]);
      cert.converged = conv;
    }
  }
  cert.lambda.hi = overall_hi;
  cert.converged = cert.lambda.width() <= tol;

  // Record the trace once more on the extremal component so callers see
  // the sequence that produced the certificate.
  if (opts.trace) {
    std::vector<int> comp;
    for (int v = 0; v < n; ++v)
      if (cert.perron[v] > 0)
        comp.push_back(v);
    if (comp.size() > 1) {
      ComponentOperator op = make_operator(g, comp, local);
      VectorXld x = VectorXld::Ones(static_cast<Eigen::Index>(comp.size()));
      if (opts.start.size() == n)
        for (std::size_t i = 0; i < comp.size(); ++i)
          x[static_cast<Eigen::Index>(i)] = opts.start[comp[i]] > 0 ? opts.start[comp[i]] : 1.0;
      long double lower = static_cast<long double>(op.nbrs.size()) / op.size();
      collatz_wielandt<long double>(op, x, lower / 2, static_cast<long double>(tol), opts.max_iterations, opts.trace);
    }
  }

  double mx = cert.perron.maxCoeff();
  cert.perron /= mx;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v) {
    auto r = g.row(v);
    double s = 0;
    for (int i = 0; i < g.words(); ++i)
      for (Word w = r[i]; w; w &= w - 1)
        s += cert.perron[i * 64 + std::countr_zero(w)];
    y[v] = s;
  }
  double rho = cert.perron.dot(y) / cert.perron.squaredNorm();
  cert.residual = (y - rho * cert.perron).cwiseAbs().maxCoeff();
  return cert;
}

std::string to_string(Ordering o)
{
  switch (o) {
  case Ordering::Less: return "Less";
  case Ordering::Greater: return "Greater";
  case Ordering::Tie: return "Tie";
  }
  return "?";
}

namespace {

Eigen::VectorXd warm_start(const SpectralCertificate &c)
{
  Eigen::VectorXd s = c.perron;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (!(s[i] > 0))
      s[i] = 1.0;
  return s;
}

double first_tolerance(double floor) { return std::max(1e-6, floor); }

} // namespace

LambdaComparison compare_lambda(const Graph &g, const Graph &h, double tol_floor)
{
  if (!(tol_floor > 0))
    throw std::invalid_argument("compare_lambda: tol_floor must be positive");
  LambdaComparison out;
  double tol = first_tolerance(tol_floor);
  EnclosureOptions og, oh;
  for (;;) {
    auto cg = perron_enclosure(g, tol, og);
    auto ch = perron_enclosure(h, tol, oh);
    out.first = cg.lambda;
    out.second = ch.lambda;
    out.tol_reached = tol;
    if (cg.lambda.hi < ch.lambda.lo) {
      out.order = Ordering::Less;
      return out;
    }
    if (ch.lambda.hi < cg.lambda.lo) {
      out.order = Ordering::Greater;
      return out;
    }
    if (tol <= tol_floor) {
      out.order = Ordering::Tie;
      out.indeterminate = !cg.converged || !ch.converged;
      return out;
    }
    og.start = warm_start(cg);
    oh.start = warm_start(ch);
    tol = std::max(tol / 10, tol_floor);
  }
}

Rational rayleigh_lower_bound(const Graph &g)
{
  if (g.order() == 0)
    throw std::invalid_argument("rayleigh_lower_bound: graph has no vertices");
  return Rational(2 * g.size(), g.order());
}

Graph rotate_edges(const Graph &g, int u, int v, const VertexSet &w)
{
  const int n = g.order();
  if (u < 0 || v < 0 || u >= n || v >= n || u == v)
    throw GraphError("rotation needs two distinct vertices");
  GraphBuilder b(g);
  for (int x : w.members()) {
    if (x == u || x == v)
      throw GraphError("rotation set contains u or v");
    if (!g.adjacent(v, x) || g.adjacent(u, x))
      throw GraphError("rotation set is not contained in N(v) \\ N(u)");
    b.remove_edge(v, x);
    b.add_edge(u, x);
  }
  return b.build();
}

// ---------------------------------------------------------------------------

LambdaTarget LambdaTarget::of_graph(Graph h, std::string label)
{
  LambdaTarget t;
  t.state_ = std::make_shared<State>();
  t.state_->label = std::move(label);
  t.state_->graph = std::move(h);
  return t;
}

LambdaTarget LambdaTarget::largest_root(Polynomial p, std::string label)
{
  LambdaTarget t;
  t.state_ = std::make_shared<State>();
  t.state_->label = std::move(label);
  t.state_->poly = std::move(p);
  return t;
}

LambdaTarget LambdaTarget::value(const BigRational &v, std::string label)
{
  return largest_root(Polynomial({BigRational(-v), BigRational(1)}), std::move(label));
}

LambdaTarget LambdaTarget::sqrt_of(const BigRational &k, std::string label)
{
  if (sgn(k) < 0)
    throw std::invalid_argument("sqrt_of: negative argument");
  if (sgn(k) == 0)
    return value(BigRational(0), std::move(label));
  return largest_root(Polynomial({BigRational(-k), BigRational(0), BigRational(1)}), std::move(label));
}

Interval LambdaTarget::enclosure(double tol) const
{
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->cache.find(tol); it != state_->cache.end())
    return it->second;
  Interval iv;
  if (state_->graph) {
    EnclosureOptions o;
    if (state_->last)
      o.start = warm_start(*state_->last);
    auto c = perron_enclosure(*state_->graph, tol, o);
    iv = c.lambda;
    state_->last = std::move(c);
  } else {
    const Polynomial &p = *state_->poly;
    if (p.degree() == 1) {
      BigRational root = -p.coeff(0) / p.coeff(1);
      iv = enclose(root);
    } else {
      auto b = isolate_largest_root(p);
      if (!b)
        throw std::invalid_argument("target polynomial has no real root");
      refine(SturmSequence(p), *b, BigRational(tol / 4));
      iv = {enclose(b->lo).lo, enclose(b->hi).hi};
    }
  }
  state_->cache.emplace(tol, iv);
  return iv;
}

std::string to_string(Decision d)
{
  switch (d) {
  case Decision::Less: return "Less";
  case Decision::Equal: return "Equal";
  case Decision::Greater: return "Greater";
  case Decision::Indeterminate: return "Indeterminate";
  }
  return "?";
}

LambdaDecision decide_lambda(const Graph &g, const LambdaTarget &target, const DecisionOptions &opts)
{
  LambdaDecision out;
  double tol = first_tolerance(opts.tol_floor);
  EnclosureOptions eo;
  for (;;) {
    auto c = perron_enclosure(g, tol, eo);
    Interval t = target.enclosure(tol);
    out.lambda = c.lambda;
    out.target = t;
    out.method = "enclosure";
    if (c.lambda.hi < t.lo) {
      out.decision = Decision::Less;
      return out;
    }
    if (t.hi < c.lambda.lo) {
      out.decision = Decision::Greater;
      return out;
    }
    if (tol <= opts.tol_floor)
      break;
    eo.start = warm_start(c);
    tol = std::max(tol / 10, opts.tol_floor);
  }
  if (target.graph() && *target.graph() == g) {
    out.decision = Decision::Equal;
    out.method = "identical";
    return out;
  }
  if (g.order() <= opts.exact_limit) {
    std::optional<Polynomial> ref;
    if (target.polynomial())
      ref = *target.polynomial();
    else if (target.graph() && target.graph()->order() <= opts.exact_limit)
      ref = characteristic_polynomial(*target.graph());
    if (ref) {
      auto cmp = compare_largest_roots(characteristic_polynomial(g), *ref);
      out.method = "exact";
      out.decision = cmp < 0 ? Decision::Less : cmp > 0 ? Decision::Greater : Decision::Equal;
      return out;
    }
  }
  out.decision = Decision::Indeterminate;
  return out;
}

} // namespace specls
