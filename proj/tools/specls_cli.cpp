// specls: spectral triangle-count toolkit command line.
//
// Exit codes: 0 success, 1 counterexample found, 2 usage or parse error,
// 3 indeterminate results present.

#include "specls/constructions.hpp"
#include "specls/graph6.hpp"
#include "specls/report.hpp"
#include "specls/search.hpp"
#include "specls/spectral.hpp"
#include "specls/theorems.hpp"
#include "specls/triangles.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace specls;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kUsage = 2;
constexpr int kIndeterminate = 3;

struct Globals
{
  double tol = 1e-9;
  double tol_floor = 1e-12;
  std::uint64_t seed = 0x5eed;
  int workers = 1;
  bool json = false;
  bool csv = false;
  int exact_limit = 24;

  VerifyOptions verify() const
  {
    VerifyOptions o;
    o.tol_floor = tol_floor;
    o.exact_limit = exact_limit;
    o.workers = workers;
    o.seed = seed;
    return o;
  }
};

/// Graphs named on the command line: graph6 literals, files, construction specs.
struct GraphSource
{
  std::vector<std::string> graphs;
  std::vector<std::string> inputs;
  std::vector<std::string> specs;

  void add_to(CLI::App *app)
  {
    app->add_option("--graph,-g", graphs, "graph6 string");
    app->add_option("--input,-i", inputs, "file with one graph6 string per line ('-' for stdin)");
    app->add_option("--spec", specs, "construction spec such as Y:n=10,q=2");
  }

  bool empty() const { return graphs.empty() && inputs.empty() && specs.empty(); }

  std::vector<std::pair<std::string, Graph>> load(ReportDocument &doc) const
  {
    std::vector<std::pair<std::string, Graph>> out;
    for (const auto &g : graphs)
      out.emplace_back(g, parse_graph6(g));
    for (const auto &path : inputs) {
      std::ifstream file;
      std::istream *in = &std::cin;
      if (path != "-") {
        file.open(path);
        if (!file)
          throw std::invalid_argument("cannot open " + path);
        in = &file;
      }
      std::string line;
      while (std::getline(*in, line)) {
        if (!line.empty() && line.back() == '\r')
          line.pop_back();
        if (line.empty())
          continue;
        out.emplace_back(line, parse_graph6(line));
      }
    }
    for (const auto &s : specs) {
      auto c = build(ConstructionSpec::parse(s));
      doc.specs.push_back(c.spec.to_string());
      out.emplace_back(c.spec.to_string(), c.graph);
    }
    return out;
  }
};

std::string interval_text(const Interval &iv)
{
  std::ostringstream os;
  os.precision(15);
  os << '[' << static_cast<double>(iv.lo) << ", " << static_cast<double>(iv.hi) << ']';
  return os.str();
}

std::string margin_text(const Margin &m)
{
  if (m.exact)
    return to_string(*m.exact);
  return interval_text(m.value);
}

void print_verdict(std::ostream &os, const VerdictEntry &e)
{
  const auto &v = e.verdict;
  os << to_string(v.id) << " n=" << v.n;
  for (const auto &[k, val] : v.params)
    os << ' ' << k << '=' << val;
  os << " hypothesis=" << to_string(v.hypothesis) << " conclusion=" << to_string(v.conclusion);
  if (const Margin *m = v.primary_margin())
    os << " margin{" << v.primary << "}=" << margin_text(*m);
  if (v.counterexample())
    os << " COUNTEREXAMPLE";
  if (!e.graph_ref.empty())
    os << " graph=" << e.graph_ref;
  os << '\n';
  for (const auto &note : v.notes)
    os << "  note: " << note << '\n';
}

void print_search(std::ostream &os, const SearchReport &r)
{
  if (!r.ratios.empty()) {
    for (const auto &p : r.ratios) {
      os << "ratio " << p.family << " t=" << p.t << " lambda=" << interval_text(p.lambda)
         << " C=" << (p.exact ? to_string(*p.exact) : interval_text(p.ratio));
      if (!p.usable)
        os << " unusable: " << p.note;
      os << '\n';
    }
    if (r.ratio_infimum)
      os << "infimum " << r.ratio_infimum->family << " C~" << static_cast<double>(r.ratio_infimum->ratio_mid) << '\n';
    for (const auto &line : r.log)
      os << "log: " << line << '\n';
    return;
  }
  os << "target=" << to_string(r.target) << " mode=" << to_string(r.mode) << '\n';
  os << "graphs_visited=" << r.graphs_visited << " graphs_examined=" << r.graphs_examined;
  if (r.expected_count)
    os << " expected_count=" << r.expected_count;
  os << '\n';
  os << "hypothesis_met=" << r.hypothesis_met << " indeterminate=" << r.indeterminate
     << " counterexamples=" << r.counterexample_count << " equalities=" << r.equality_count << '\n';
  for (const auto &c : r.counterexamples)
    os << "counterexample " << c.graph6 << '\n';
  if (r.extremal)
    os << "extremal margin=" << margin_text(r.extremal->margin) << " graph=" << r.extremal->graph6 << '\n';
  if (r.local) {
    const auto &l = *r.local;
    os << "local best t=" << l.best_t << " lambda=" << interval_text(l.best_lambda)
       << " C=" << interval_text(l.best_ratio) << " graph=" << l.best_graph6 << '\n';
    if (l.grid_best_t)
      os << "grid best t=" << *l.grid_best_t << " " << l.grid_best_spec << '\n';
  }
  for (const auto &line : r.log)
    os << "log: " << line << '\n';
}

int exit_for(const ReportDocument &doc)
{
  bool indeterminate = false;
  for (const auto &e : doc.verdicts) {
    if (e.verdict.counterexample())
      return kCounterexample;
    indeterminate = indeterminate || e.verdict.indeterminate();
  }
  for (const auto &s : doc.searches) {
    if (s.counterexample_count > 0)
      return kCounterexample;
    indeterminate = indeterminate || s.indeterminate > 0;
  }
  return indeterminate ? kIndeterminate : kOk;
}

/// "30:300:30" or "30,60,90".
std::vector<int> parse_grid(const std::string &text)
{
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    int a = 0, b = 0, step = 1;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    is >> a >> c1 >> b;
    if (is >> c2 >> step; c2 != ':' && c2 != 0)
      throw std::invalid_argument("bad grid '" + text + "'");
    if (!is.eof() && is.fail())
      throw std::invalid_argument("bad grid '" + text + "'");
    if (step <= 0 || b < a)
      throw std::invalid_argument("bad grid '" + text + "'");
    for (int n = a; n <= b; n += step)
      out.push_back(n);
    return out;
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ','))
    out.push_back(std::stoi(item));
  return out;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Spectral radius and triangle-count verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  if (const char *env = std::getenv("SPECLS_WORKERS"))
    try {
      g.workers = std::stoi(env);
    } catch (const std::exception &) {
      std::cerr << "SPECLS_WORKERS must be an integer\n";
      return kUsage;
    }
  app.add_option("--tol", g.tol, "target enclosure width")->check(CLI::PositiveNumber);
  app.add_option("--tol-floor", g.tol_floor, "narrowest width tried before reporting indeterminate")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--workers", g.workers, "worker threads (default $SPECLS_WORKERS or 1)")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "emit the JSON report");
  app.add_flag("--csv", g.csv, "emit verdicts as CSV");
  app.add_option("--exact-limit", g.exact_limit, "largest order for exact characteristic polynomials");

  ReportDocument doc;
  doc.command.assign(argv, argv + argc);
  std::ostringstream text;

  // construct
  auto *construct = app.add_subcommand("construct", "build a named construction");
  std::string family;
  std::map<std::string, std::string> cparams;
  construct->set_help_flag("--help", "print this help message and exit");
  construct->add_option("family", family, "Turan, T, Y, KabPlus, Embed, G1, G2, L, Book")->required();
  for (const char *key : {"n", "r", "q", "a", "b", "s", "t", "k", "alpha", "h", "side"})
    construct->add_option_function<std::string>(std::string("--") + key,
                                                [&cparams, key](const std::string &v) { cparams[key] = v; });

  // spectral
  auto *spectral = app.add_subcommand("spectral", "certified enclosure of lambda");
  GraphSource spectral_src;
  spectral_src.add_to(spectral);
  bool with_vector = false;
  spectral->add_flag("--vector", with_vector, "include the Perron vector");

  // count
  auto *count = app.add_subcommand("count", "triangles, tau_3 and distance from bipartite");
  GraphSource count_src;
  count_src.add_to(count);

  // verify
  auto *verify_cmd = app.add_subcommand("verify", "evaluate a theorem on graphs or exhaustively");
  GraphSource verify_src;
  verify_src.add_to(verify_cmd);
  std::string theorem;
  TheoremParams tp;
  std::string k_text = "1";
  int n_single = 0, n_min = 0, n_max = 0, u = -1, v = -1;
  std::vector<int> rot_w;
  bool exhaustive = false, skip_isolated = false;
  std::string edge_range = "auto";
  verify_cmd->add_option("theorem", theorem, "theorem id, e.g. LS, BN_INEQ, BOOK_CONJ")->required();
  verify_cmd->add_option("--q", tp.q, "q parameter");
  verify_cmd->add_option("--s", tp.s, "s parameter");
  verify_cmd->add_option("--r", tp.r, "clique parameter r");
  verify_cmd->add_option("--k", k_text, "k parameter (rational)");
  verify_cmd->add_option("--n", n_single, "order (exhaustive runs and EMBED_ORDER/X_MASS/Y_UPPER)");
  verify_cmd->add_option("--n-min", n_min, "smallest order for exhaustive runs");
  verify_cmd->add_option("--n-max", n_max, "largest order for exhaustive runs");
  verify_cmd->add_flag("--exhaustive", exhaustive, "enumerate all labeled graphs");
  verify_cmd->add_flag("--skip-isolated", skip_isolated, "exhaustive: ignore graphs with isolated vertices");
  verify_cmd->add_option("--edges", edge_range, "exhaustive edge range: auto, all, sparse");
  verify_cmd->add_option("--u", u, "ROTATION: receiving vertex");
  verify_cmd->add_option("--v", v, "ROTATION: donating vertex");
  verify_cmd->add_option("--W", rot_w, "ROTATION: rotated neighbours");

  // enumerate
  auto *enumerate = app.add_subcommand("enumerate", "count or list labeled graphs");
  int en_n = 0;
  std::int64_t min_edges = -1, max_edges = -1;
  bool print = false;
  enumerate->add_option("--n", en_n, "order")->required();
  enumerate->add_option("--min-edges", min_edges, "dense enumeration: m >= min-edges");
  enumerate->add_option("--max-edges", max_edges, "sparse enumeration: m <= max-edges");
  enumerate->add_flag("--print", print, "print each graph6 string");

  // search
  auto *search = app.add_subcommand("search", "run a search job");
  std::string job_file;
  SearchJob job;
  std::string target = "LS", mode = "exhaustive", gamma = "1/2", s_edges = "auto";
  search->add_option("--job", job_file, "JSON job file");
  search->add_option("--target", target, "theorem id");
  search->add_option("--mode", mode, "exhaustive, random, local");
  search->add_option("--n", job.n_min, "order (sets both bounds)")->each([&](const std::string &) { job.n_max = job.n_min; });
  search->add_option("--n-min", job.n_min, "smallest order");
  search->add_option("--n-max", job.n_max, "largest order");
  search->add_option("--param-min", job.param_min, "smallest q/s/r");
  search->add_option("--param-max", job.param_max, "largest q/s/r (0: all feasible)");
  search->add_option("--budget", job.budget, "random samples or local-search moves");
  search->add_option("--perturbations", job.perturbations, "random mode: edge-swap neighbours");
  search->add_option("--gamma", gamma, "local search: lambda >= gamma n");
  search->add_option("--restarts", job.restarts, "local search restarts");
  search->add_option("--edges", s_edges, "exhaustive edge range: auto, all, sparse");
  search->add_flag("--skip-isolated", job.skip_isolated, "ignore graphs with isolated vertices");

  // ratio-scan
  auto *ratio = app.add_subcommand("ratio-scan", "t / (n^2 (lambda - n/2)) along families");
  std::vector<std::string> families;
  std::string grid = "30:300:30";
  ratio->add_option("--family", families, "construction spec; n is substituted")->required();
  ratio->add_option("--n-grid", grid, "a:b:step or comma list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  doc.tolerances = {{"tol", g.tol}, {"tol_floor", g.tol_floor}};
  doc.seeds.push_back(g.seed);
  const VerifyOptions vo = g.verify();

  try {
    if (construct->parsed()) {
      std::string spec_text = family + ":";
      bool first = true;
      for (const auto &[k, val] : cparams) {
        spec_text += (first ? "" : ",") + k + "=" + val;
        first = false;
      }
      auto c = build(ConstructionSpec::parse(spec_text));
      doc.specs.push_back(c.spec.to_string());
      Json r = to_json(c);
      r["m"] = c.graph.size();
      r["t"] = triangle_count(c.graph);
      doc.results.push_back(r);
      text << emit_graph6(c.graph) << '\n'
           << "spec=" << c.spec.to_string() << " n=" << c.graph.order() << " m=" << c.graph.size()
           << " t=" << r["t"].get<std::int64_t>() << " m_expected=" << c.predicted.m_expected
           << " t_expected=" << c.predicted.t_expected;
      if (c.predicted.lambda_poly)
        text << " lambda_poly=" << to_string(*c.predicted.lambda_poly);
      text << '\n';
    } else if (spectral->parsed()) {
      if (spectral_src.empty())
        throw CLI::ValidationError("spectral", "needs --graph, --input or --spec");
      for (auto &[ref, graph] : spectral_src.load(doc)) {
        auto cert = perron_enclosure(graph, g.tol);
        if (!with_vector)
          cert.perron.resize(0);
        text << ref << " lambda=" << interval_text(cert.lambda) << " residual=" << cert.residual
             << " converged=" << (cert.converged ? "true" : "false") << " iterations=" << cert.iterations << '\n';
        doc.certificates.push_back({ref, std::move(cert)});
      }
    } else if (count->parsed()) {
      if (count_src.empty())
        throw CLI::ValidationError("count", "needs --graph, --input or --spec");
      for (auto &[ref, graph] : count_src.load(doc)) {
        Json r = {{"graph_ref", ref}, {"n", graph.order()}, {"m", graph.size()}, {"t", triangle_count(graph)}};
        try {
          auto cover = tau3(graph);
          r["tau3"] = cover.size;
          r["tau3_witness"] = cover.witness.members();
        } catch (const BudgetExceeded &) {
          r["tau3"] = nullptr;
        }
        auto eps = bipartite_distance(graph, kExactMaxCutLimit, g.workers, g.seed);
        r["epsilon"] = eps.epsilon;
        r["epsilon_exact"] = eps.exact;
        text << ref << " n=" << graph.order() << " m=" << graph.size() << " t=" << r["t"].get<std::int64_t>()
             << " tau3=" << (r["tau3"].is_null() ? std::string("budget exceeded") : r["tau3"].dump())
             << " epsilon=" << eps.epsilon << (eps.exact ? "" : " (upper bound)") << '\n';
        doc.results.push_back(r);
      }
    } else if (verify_cmd->parsed()) {
      const TheoremId id = theorem_id_from_string(theorem);
      tp.k = [&] {
        auto slash = k_text.find('/');
        if (slash == std::string::npos)
          return Rational(std::stoll(k_text));
        return Rational(std::stoll(k_text.substr(0, slash)), std::stoll(k_text.substr(slash + 1)));
      }();
      if (exhaustive) {
        SearchJob ej;
        ej.target = id;
        ej.mode = SearchMode::Exhaustive;
        ej.n_min = n_min ? n_min : n_single;
        ej.n_max = n_max ? n_max : (n_single ? n_single : ej.n_min);
        if (ej.n_min <= 0)
          throw CLI::ValidationError("verify", "--exhaustive needs --n or --n-min/--n-max");
        ej.params = tp;
        ej.param_min = ej.param_max = id == TheoremId::SPEC_BC ? tp.s
                                      : (id == TheoremId::WILF || id == TheoremId::NIKIFOROV_M) ? tp.r
                                                                                                : tp.q;
        ej.edges = edge_range_from_string(edge_range);
        ej.skip_isolated = skip_isolated;
        ej.seed = g.seed;
        ej.workers = g.workers;
        ej.verify = vo;
        auto r = run_exhaustive(ej);
        print_search(text, r);
        doc.searches.push_back(std::move(r));
      } else if (id == TheoremId::EMBED_ORDER || id == TheoremId::X_MASS || id == TheoremId::Y_UPPER) {
        if (n_single <= 0)
          throw CLI::ValidationError("verify", to_string(id) + " needs --n");
        TheoremVerdict vd = id == TheoremId::EMBED_ORDER ? check_embed_order(n_single, tp.q, vo)
                            : id == TheoremId::X_MASS    ? check_x_mass(n_single, tp.q, vo)
                                                         : check_y_upper(n_single, tp.q, vo);
        doc.verdicts.push_back({std::move(vd), ""});
      } else {
        if (verify_src.empty())
          throw CLI::ValidationError("verify", "needs --graph, --input, --spec or --exhaustive");
        for (auto &[ref, graph] : verify_src.load(doc)) {
          GraphFacts f(graph, vo);
          if (id == TheoremId::ROTATION) {
            doc.verdicts.push_back({check_rotation(f, u, v, VertexSet(graph.order(), rot_w)), ref});
          } else if (id >= TheoremId::APPROX_PARTITION) {
            for (auto &vd : check_structural_lemmas(f, tp.q))
              if (vd.id == id)
                doc.verdicts.push_back({std::move(vd), ref});
          } else {
            doc.verdicts.push_back({verify(id, f, tp), ref});
          }
        }
      }
      for (const auto &e : doc.verdicts)
        print_verdict(text, e);
    } else if (enumerate->parsed()) {
      std::int64_t seen = 0;
      auto visit = [&](std::uint64_t mask) {
        ++seen;
        if (print)
          text << emit_graph6(graph_from_mask(en_n, mask)) << '\n';
      };
      std::int64_t total = max_edges >= 0 ? enumerate_sparse(en_n, max_edges, visit)
                                          : enumerate_dense(en_n, std::max<std::int64_t>(min_edges, 0), visit);
      doc.results.push_back({{"n", en_n}, {"count", total}});
      text << "count=" << total << '\n';
    } else if (search->parsed()) {
      if (!job_file.empty()) {
        std::ifstream in(job_file);
        if (!in)
          throw std::invalid_argument("cannot open " + job_file);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const Json::parse_error &e) {
          throw std::invalid_argument(std::string("job file: ") + e.what());
        }
        job = search_job_from_json(j);
        if (!j.contains("seed"))
          job.seed = g.seed;
        if (!j.contains("workers"))
          job.workers = g.workers;
      } else {
        job.target = theorem_id_from_string(target);
        job.mode = search_mode_from_string(mode);
        job.edges = edge_range_from_string(s_edges);
        auto slash = gamma.find('/');
        job.gamma = slash == std::string::npos
                        ? Rational(std::stoll(gamma))
                        : Rational(std::stoll(gamma.substr(0, slash)), std::stoll(gamma.substr(slash + 1)));
        job.seed = g.seed;
        job.workers = g.workers;
      }
      job.verify = vo;
      job.verify.workers = job.workers;
      job.verify.seed = job.seed;
      doc.seeds = {job.seed};
      auto r = run_search(job);
      print_search(text, r);
      doc.searches.push_back(std::move(r));
    } else if (ratio->parsed()) {
      std::vector<ConstructionSpec> specs;
      for (auto f : families) {
        if (f.find("n=") == std::string::npos)
          f += (f.back() == ':' ? "" : (f.find(':') == std::string::npos ? ":" : ",")) + std::string("n=1");
        specs.push_back(ConstructionSpec::parse(f));
      }
      auto r = ratio_scan(specs, parse_grid(grid), vo);
      print_search(text, r);
      doc.searches.push_back(std::move(r));
    }
  } catch (const CLI::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Graph6Error &e) {
    std::cerr << "graph6 error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SearchError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (g.json)
    std::cout << dump(to_json(doc));
  else if (g.csv)
    std::cout << verdicts_csv(doc.verdicts);
  else
    std::cout << text.str();
  return exit_for(doc);
}
