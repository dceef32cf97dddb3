#include "specls/report.hpp"

#include "specls/graph6.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace specls {

namespace {

double lower_double(long double v)
{
  double d = static_cast<double>(v);
  if (static_cast<long double>(d) > v)
    d = std::nextafter(d, -HUGE_VAL);
  return d;
}

double upper_double(long double v)
{
  double d = static_cast<double>(v);
  if (static_cast<long double>(d) < v)
    d = std::nextafter(d, HUGE_VAL);
  return d;
}

Rational rational_from_string(const std::string &s)
{
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception &) {
    throw std::invalid_argument("bad rational '" + s + "'");
  }
}

Json to_json(const VertexSet &s) { return s.members(); }

VertexSet vertex_set_from_json(int n, const Json &j) { return VertexSet(n, j.get<std::vector<int>>()); }

Json to_json(const PartitionWitness &p)
{
  return {{"n", p.S.universe()}, {"S", to_json(p.S)}, {"T", to_json(p.T)},
          {"e_S", p.eS},         {"e_T", p.eT},       {"e_ST", p.eST}};
}

PartitionWitness partition_from_json(const Json &j)
{
  const int n = j.at("n").get<int>();
  PartitionWitness p;
  p.S = vertex_set_from_json(n, j.at("S"));
  p.T = vertex_set_from_json(n, j.at("T"));
  p.eS = j.at("e_S").get<std::int64_t>();
  p.eT = j.at("e_T").get<std::int64_t>();
  p.eST = j.at("e_ST").get<std::int64_t>();
  return p;
}

void reject_unknown(const Json &j, const std::set<std::string> &known, const std::string &what)
{
  if (!j.is_object())
    throw std::invalid_argument(what + " must be a JSON object");
  for (const auto &[k, v] : j.items())
    if (!known.count(k))
      throw std::invalid_argument("unknown " + what + " key '" + k + "'");
}

Json to_json(const RatioPoint &p)
{
  Json j = {{"family", p.family}, {"n", p.n},           {"t", p.t},       {"lambda", to_json(p.lambda)},
            {"ratio", to_json(p.ratio)}, {"ratio_mid", static_cast<double>(p.ratio_mid)},
            {"usable", p.usable},  {"note", p.note}};
  j["exact"] = p.exact ? Json(to_string(*p.exact)) : Json(nullptr);
  return j;
}

RatioPoint ratio_point_from_json(const Json &j)
{
  RatioPoint p;
  p.family = j.at("family").get<std::string>();
  p.n = j.at("n").get<int>();
  p.t = j.at("t").get<std::int64_t>();
  p.lambda = interval_from_json(j.at("lambda"));
  p.ratio = interval_from_json(j.at("ratio"));
  p.ratio_mid = j.at("ratio_mid").get<double>();
  p.usable = j.at("usable").get<bool>();
  p.note = j.at("note").get<std::string>();
  if (!j.at("exact").is_null())
    p.exact = rational_from_string(j.at("exact").get<std::string>());
  return p;
}

} // namespace

Json to_json(const Interval &iv) { return {{"lo", lower_double(iv.lo)}, {"hi", upper_double(iv.hi)}}; }

Interval interval_from_json(const Json &j) { return {j.at("lo").get<double>(), j.at("hi").get<double>()}; }

Json to_json(const Margin &m)
{
  Json j = to_json(m.value);
  j["exact"] = m.exact ? Json(to_string(*m.exact)) : Json(nullptr);
  return j;
}

Margin margin_from_json(const Json &j)
{
  Margin m;
  m.value = interval_from_json(j);
  if (j.contains("exact") && !j.at("exact").is_null())
    m.exact = rational_from_string(j.at("exact").get<std::string>());
  return m;
}

Json to_json(const SpectralCertificate &c, bool with_vector)
{
  Json j = {{"lambda_lo", lower_double(c.lambda.lo)},
            {"lambda_hi", upper_double(c.lambda.hi)},
            {"residual", c.residual},
            {"converged", c.converged},
            {"iterations", c.iterations},
            {"tol", c.tol}};
  if (with_vector)
    j["perron"] = std::vector<double>(c.perron.data(), c.perron.data() + c.perron.size());
  return j;
}

SpectralCertificate certificate_from_json(const Json &j)
{
  SpectralCertificate c;
  c.lambda = {j.at("lambda_lo").get<double>(), j.at("lambda_hi").get<double>()};
  c.residual = j.at("residual").get<double>();
  c.converged = j.at("converged").get<bool>();
  c.iterations = j.at("iterations").get<int>();
  c.tol = j.at("tol").get<double>();
  if (j.contains("perron")) {
    auto v = j.at("perron").get<std::vector<double>>();
    c.perron = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  return c;
}

Json to_json(const TheoremVerdict &v)
{
  Json margins = Json::object();
  for (const auto &[k, m] : v.margins)
    margins[k] = to_json(m);
  Json witness = Json::object();
  witness["partition"] = v.witness.partition ? to_json(*v.witness.partition) : Json(nullptr);
  witness["cover"] = v.witness.cover ? to_json(*v.witness.cover) : Json(nullptr);
  witness["cover_n"] = v.witness.cover ? Json(v.witness.cover->universe()) : Json(nullptr);
  witness["mapping"] = v.witness.mapping;
  return {{"theorem_id", to_string(v.id)},
          {"n", v.n},
          {"params", v.params},
          {"hypothesis", to_string(v.hypothesis)},
          {"conclusion", to_string(v.conclusion)},
          {"counterexample", v.counterexample()},
          {"margins", margins},
          {"primary", v.primary},
          {"witness", witness},
          {"notes", v.notes}};
}

TheoremVerdict verdict_from_json(const Json &j)
{
  TheoremVerdict v;
  v.id = theorem_id_from_string(j.at("theorem_id").get<std::string>());
  v.n = j.at("n").get<int>();
  v.params = j.at("params").get<std::map<std::string, std::string>>();
  v.hypothesis = truth_from_string(j.at("hypothesis").get<std::string>());
  v.conclusion = truth_from_string(j.at("conclusion").get<std::string>());
  for (const auto &[k, m] : j.at("margins").items())
    v.margins[k] = margin_from_json(m);
  v.primary = j.at("primary").get<std::string>();
  const Json &w = j.at("witness");
  if (!w.at("partition").is_null())
    v.witness.partition = partition_from_json(w.at("partition"));
  if (!w.at("cover").is_null())
    v.witness.cover = vertex_set_from_json(w.at("cover_n").get<int>(), w.at("cover"));
  v.witness.mapping = w.at("mapping").get<std::vector<int>>();
  v.notes = j.at("notes").get<std::vector<std::string>>();
  return v;
}

Json to_json(const SearchJob &job)
{
  return {{"target", to_string(job.target)},
          {"mode", to_string(job.mode)},
          {"n_min", job.n_min},
          {"n_max", job.n_max},
          {"param_min", job.param_min},
          {"param_max", job.param_max},
          {"q", job.params.q},
          {"s", job.params.s},
          {"r", job.params.r},
          {"k", to_string(job.params.k)},
          {"edges", to_string(job.edges)},
          {"skip_isolated", job.skip_isolated},
          {"ceiling", job.ceiling},
          {"budget", job.budget},
          {"perturbations", job.perturbations},
          {"seed", job.seed},
          {"workers", job.workers},
          {"tol_floor", job.verify.tol_floor},
          {"exact_limit", job.verify.exact_limit},
          {"maxcut_limit", job.verify.maxcut_limit},
          {"iso_limit", job.verify.iso_limit},
          {"gamma", to_string(job.gamma)},
          {"restarts", job.restarts},
          {"plateau", job.plateau},
          {"grid_s", job.grid_s},
          {"grid_steps", job.grid_steps},
          {"max_counterexamples", job.max_counterexamples},
          {"max_equalities", job.max_equalities}};
}

SearchJob search_job_from_json(const Json &j)
{
  static const std::set<std::string> known = {
      "target",   "mode",        "n_min",       "n_max",        "param_min",  "param_max", "q",
      "s",        "r",           "k",           "edges",        "skip_isolated", "ceiling", "budget",
      "perturbations", "seed",   "workers",     "tol_floor",    "exact_limit", "maxcut_limit", "iso_limit",
      "gamma",    "restarts",    "plateau",     "grid_s",       "grid_steps", "max_counterexamples",
      "max_equalities"};
  reject_unknown(j, known, "search job");
  SearchJob job;
  auto get = [&](const char *key, auto &out) {
    if (j.contains(key))
      j.at(key).get_to(out);
  };
  if (j.contains("target"))
    job.target = theorem_id_from_string(j.at("target").get<std::string>());
  if (j.contains("mode"))
    job.mode = search_mode_from_string(j.at("mode").get<std::string>());
  get("n_min", job.n_min);
  get("n_max", job.n_max);
  if (j.contains("n_min") && !j.contains("n_max"))
    job.n_max = job.n_min;
  get("param_min", job.param_min);
  get("param_max", job.param_max);
  get("q", job.params.q);
  get("s", job.params.s);
  get("r", job.params.r);
  if (j.contains("k"))
    job.params.k = rational_from_string(j.at("k").get<std::string>());
  if (j.contains("edges"))
    job.edges = edge_range_from_string(j.at("edges").get<std::string>());
  get("skip_isolated", job.skip_isolated);
  get("ceiling", job.ceiling);
  get("budget", job.budget);
  get("perturbations", job.perturbations);
  get("seed", job.seed);
  get("workers", job.workers);
  get("tol_floor", job.verify.tol_floor);
  get("exact_limit", job.verify.exact_limit);
  get("maxcut_limit", job.verify.maxcut_limit);
  get("iso_limit", job.verify.iso_limit);
  if (j.contains("gamma"))
    job.gamma = rational_from_string(j.at("gamma").get<std::string>());
  get("restarts", job.restarts);
  get("plateau", job.plateau);
  get("grid_s", job.grid_s);
  get("grid_steps", job.grid_steps);
  get("max_counterexamples", job.max_counterexamples);
  get("max_equalities", job.max_equalities);
  job.verify.workers = job.workers;
  job.verify.seed = job.seed;
  return job;
}

Json to_json(const SearchReport &r)
{
  Json cex = Json::array();
  for (const auto &c : r.counterexamples)
    cex.push_back({{"graph6", c.graph6}, {"verdict", to_json(c.verdict)}});
  Json eq = Json::array();
  for (const auto &e : r.equalities)
    eq.push_back({{"graph6", e.graph6}, {"n", e.n}, {"m", e.m}, {"t", e.t}, {"params", e.params}, {"notes", e.notes}});
  Json ratios = Json::array();
  for (const auto &p : r.ratios)
    ratios.push_back(to_json(p));
  Json j = {{"target", to_string(r.target)},
            {"mode", to_string(r.mode)},
            {"seed", r.seed},
            {"graphs_visited", r.graphs_visited},
            {"graphs_examined", r.graphs_examined},
            {"expected_count", r.expected_count},
            {"hypothesis_met", r.hypothesis_met},
            {"indeterminate", r.indeterminate},
            {"counterexample_count", r.counterexample_count},
            {"counterexamples", cex},
            {"equality_count", r.equality_count},
            {"equalities", eq},
            {"ratios", ratios},
            {"log", r.log}};
  j["extremal"] = r.extremal ? Json{{"graph6", r.extremal->graph6},
                                    {"n", r.extremal->n},
                                    {"params", r.extremal->params},
                                    {"margin", to_json(r.extremal->margin)}}
                             : Json(nullptr);
  j["ratio_infimum"] = r.ratio_infimum ? to_json(*r.ratio_infimum) : Json(nullptr);
  if (r.local) {
    const auto &l = *r.local;
    Json grid = Json::array();
    for (const auto &g : l.grid)
      grid.push_back({{"spec", g.spec}, {"t", g.t}, {"feasible", g.feasible}, {"lambda", to_json(g.lambda)}});
    j["local"] = {{"best_graph6", l.best_graph6},
                  {"best_t", l.best_t},
                  {"best_lambda", to_json(l.best_lambda)},
                  {"best_ratio", to_json(l.best_ratio)},
                  {"grid", grid},
                  {"grid_best_t", l.grid_best_t ? Json(*l.grid_best_t) : Json(nullptr)},
                  {"grid_best_spec", l.grid_best_spec}};
  } else {
    j["local"] = nullptr;
  }
  return j;
}

SearchReport search_report_from_json(const Json &j)
{
  SearchReport r;
  r.target = theorem_id_from_string(j.at("target").get<std::string>());
  r.mode = search_mode_from_string(j.at("mode").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.graphs_visited = j.at("graphs_visited").get<std::int64_t>();
  r.graphs_examined = j.at("graphs_examined").get<std::int64_t>();
  r.expected_count = j.at("expected_count").get<std::int64_t>();
  r.hypothesis_met = j.at("hypothesis_met").get<std::int64_t>();
  r.indeterminate = j.at("indeterminate").get<std::int64_t>();
  r.counterexample_count = j.at("counterexample_count").get<std::int64_t>();
  for (const auto &c : j.at("counterexamples"))
    r.counterexamples.push_back({c.at("graph6").get<std::string>(), verdict_from_json(c.at("verdict"))});
  r.equality_count = j.at("equality_count").get<std::int64_t>();
  for (const auto &e : j.at("equalities"))
    r.equalities.push_back({e.at("graph6").get<std::string>(), e.at("n").get<int>(), e.at("m").get<std::int64_t>(),
                            e.at("t").get<std::int64_t>(), e.at("params").get<std::map<std::string, std::string>>(),
                            e.at("notes").get<std::vector<std::string>>()});
  for (const auto &p : j.at("ratios"))
    r.ratios.push_back(ratio_point_from_json(p));
  r.log = j.at("log").get<std::vector<std::string>>();
  if (!j.at("extremal").is_null()) {
    const Json &e = j.at("extremal");
    r.extremal = ExtremalRecord{e.at("graph6").get<std::string>(), e.at("n").get<int>(),
                                e.at("params").get<std::map<std::string, std::string>>(),
                                margin_from_json(e.at("margin"))};
  }
  if (!j.at("ratio_infimum").is_null())
    r.ratio_infimum = ratio_point_from_json(j.at("ratio_infimum"));
  if (!j.at("local").is_null()) {
    const Json &l = j.at("local");
    LocalSearchResult res;
    res.best_graph6 = l.at("best_graph6").get<std::string>();
    res.best_t = l.at("best_t").get<std::int64_t>();
    res.best_lambda = interval_from_json(l.at("best_lambda"));
    res.best_ratio = interval_from_json(l.at("best_ratio"));
    for (const auto &g : l.at("grid"))
      res.grid.push_back({g.at("spec").get<std::string>(), g.at("t").get<std::int64_t>(),
                          g.at("feasible").get<bool>(), interval_from_json(g.at("lambda"))});
    if (!l.at("grid_best_t").is_null())
      res.grid_best_t = l.at("grid_best_t").get<std::int64_t>();
    res.grid_best_spec = l.at("grid_best_spec").get<std::string>();
    r.local = res;
  }
  return r;
}

Json to_json(const Construction &c)
{
  return {{"spec", c.spec.to_string()},
          {"graph6", emit_graph6(c.graph)},
          {"n", c.graph.order()},
          {"m", c.graph.size()},
          {"m_expected", c.predicted.m_expected},
          {"t_expected", c.predicted.t_expected},
          {"lambda_poly", c.predicted.lambda_poly ? Json(to_string(*c.predicted.lambda_poly)) : Json(nullptr)}};
}

Json to_json(const ReportDocument &d)
{
  Json verdicts = Json::array();
  for (const auto &v : d.verdicts) {
    Json e = to_json(v.verdict);
    e["graph_ref"] = v.graph_ref;
    verdicts.push_back(std::move(e));
  }
  Json certs = Json::array();
  for (const auto &c : d.certificates) {
    Json e = to_json(c.certificate, c.certificate.perron.size() > 0);
    e["graph_ref"] = c.graph_ref;
    certs.push_back(std::move(e));
  }
  Json searches = Json::array();
  for (const auto &s : d.searches)
    searches.push_back(to_json(s));
  Json tolerances = Json::object();
  for (const auto &[k, v] : d.tolerances)
    tolerances[k] = v;
  return {{"tool_version", d.tool_version},
          {"command", d.command},
          {"verdicts", verdicts},
          {"certificates", certs},
          {"searches", searches},
          {"results", d.results},
          {"provenance", {{"specs", d.specs}, {"seeds", d.seeds}, {"tolerances", tolerances}}}};
}

ReportDocument report_from_json(const Json &j)
{
  ReportDocument d;
  d.tool_version = j.at("tool_version").get<std::string>();
  d.command = j.at("command").get<std::vector<std::string>>();
  for (const auto &v : j.at("verdicts"))
    d.verdicts.push_back({verdict_from_json(v), v.at("graph_ref").get<std::string>()});
  for (const auto &c : j.at("certificates"))
    d.certificates.push_back({c.at("graph_ref").get<std::string>(), certificate_from_json(c)});
  for (const auto &s : j.at("searches"))
    d.searches.push_back(search_report_from_json(s));
  d.results = j.at("results").get<std::vector<Json>>();
  const Json &p = j.at("provenance");
  d.specs = p.at("specs").get<std::vector<std::string>>();
  d.seeds = p.at("seeds").get<std::vector<std::uint64_t>>();
  d.tolerances = p.at("tolerances").get<std::map<std::string, double>>();
  return d;
}

std::string verdicts_csv(const std::vector<VerdictEntry> &rows)
{
  std::ostringstream out;
  out.precision(17);
  out << "theorem_id,n,params,hypothesis,conclusion,margin_lo,margin_hi,witness_ref\n";
  for (const auto &row : rows) {
    const auto &v = row.verdict;
    std::string params;
    for (const auto &[k, val] : v.params)
      params += (params.empty() ? "" : ";") + k + "=" + val;
    out << to_string(v.id) << ',' << v.n << ',' << params << ',' << to_string(v.hypothesis) << ','
        << to_string(v.conclusion) << ',';
    if (const Margin *m = v.primary_margin())
      out << lower_double(m->value.lo) << ',' << upper_double(m->value.hi);
    else
      out << ',';
    out << ',' << row.graph_ref << '\n';
  }
  return out.str();
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace specls
