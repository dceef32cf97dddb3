#include "specls/constructions.hpp"

#include "specls/graph6.hpp"
#include "specls/triangles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace specls {

namespace {

[[noreturn]] void infeasible(const std::string &what) { throw std::invalid_argument(what); }

struct FamilyName
{
  Family family;
  const char *name;
};

constexpr FamilyName kFamilyNames[] = {
    {Family::Turan, "Turan"}, {Family::T2q, "T"},   {Family::Y2q, "Y"},      {Family::KabPlus, "KabPlus"},
    {Family::EmbedH, "Embed"}, {Family::BC_G1, "G1"}, {Family::BC_G2, "G2"}, {Family::Lnsa, "L"},
    {Family::BookJoin, "Book"},
};

int parse_int(const std::string &key, const std::string &v)
{
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw std::invalid_argument("parameter " + key + " is not an integer: '" + v + "'");
  return x;
}

void add_edges_at(GraphBuilder &b, const Graph &h, int offset)
{
  for (const auto &[u, v] : h.edges())
    b.add_edge(offset + u, offset + v);
}

BigRational floor_of(const BigRational &q)
{
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return BigRational(f);
}

std::int64_t multipartite_edges(const std::vector<int> &parts)
{
  std::int64_t n = 0, sq = 0;
  for (int p : parts) {
    n += p;
    sq += static_cast<std::int64_t>(p) * p;
  }
  return (n * n - sq) / 2;
}

} // namespace

std::string to_string(Family f)
{
  for (const auto &fn : kFamilyNames)
    if (fn.family == f)
      return fn.name;
  return "?";
}

Family family_from_string(const std::string &s)
{
  for (const auto &fn : kFamilyNames)
    if (s == fn.name)
      return fn.family;
  throw std::invalid_argument("unknown family '" + s + "'");
}

// ---------------------------------------------------------------------------

Graph HDescriptor::graph() const
{
  switch (kind) {
  case Kind::Star: {
    if (a < 0)
      infeasible("star needs q >= 0");
    GraphBuilder b(a + 1);
    for (int i = 1; i <= a; ++i)
      b.add_edge(0, i);
    return b.build();
  }
  case Kind::Clique: {
    if (a < 1)
      infeasible("clique needs k >= 1");
    GraphBuilder b(a);
    for (int i = 0; i < a; ++i)
      for (int j = i + 1; j < a; ++j)
        b.add_edge(i, j);
    return b.build();
  }
  case Kind::CompleteBipartite: {
    if (a < 1 || b < 1)
      infeasible("complete bipartite needs both sides >= 1");
    return complete_multipartite({a, this->b});
  }
  case Kind::Cycle: {
    if (a < 3)
      infeasible("cycle needs k >= 3");
    GraphBuilder b(a);
    for (int i = 0; i < a; ++i)
      b.add_edge(i, (i + 1) % a);
    return b.build();
  }
  case Kind::Path: {
    if (a < 0)
      infeasible("path needs q >= 0");
    GraphBuilder b(a + 1);
    for (int i = 0; i < a; ++i)
      b.add_edge(i, i + 1);
    return b.build();
  }
  case Kind::Matching: {
    if (a < 0)
      infeasible("matching needs q >= 0");
    GraphBuilder b(2 * a);
    for (int i = 0; i < a; ++i)
      b.add_edge(2 * i, 2 * i + 1);
    return b.build();
  }
  case Kind::Graph6:
    return parse_graph6(g6);
  }
  infeasible("unknown subgraph kind");
}

std::string HDescriptor::to_string() const
{
  switch (kind) {
  case Kind::Star: return "star:" + std::to_string(a);
  case Kind::Clique: return "clique:" + std::to_string(a);
  case Kind::CompleteBipartite: return "kab:" + std::to_string(a) + "x" + std::to_string(b);
  case Kind::Cycle: return "cycle:" + std::to_string(a);
  case Kind::Path: return "path:" + std::to_string(a);
  case Kind::Matching: return "matching:" + std::to_string(a);
  case Kind::Graph6: return "g6:" + g6;
  }
  return "?";
}

HDescriptor HDescriptor::parse(const std::string &text)
{
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("subgraph descriptor needs kind:value, got '" + text + "'");
  std::string kind = text.substr(0, colon), value = text.substr(colon + 1);
  if (kind == "g6")
    return {Kind::Graph6, 0, 0, value};
  if (kind == "kab") {
    auto x = value.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("kab descriptor needs AxB, got '" + value + "'");
    return kab(parse_int("kab", value.substr(0, x)), parse_int("kab", value.substr(x + 1)));
  }
  int v = parse_int(kind, value);
  if (kind == "star")
    return star(v);
  if (kind == "clique")
    return clique(v);
  if (kind == "cycle")
    return cycle(v);
  if (kind == "path")
    return path(v);
  if (kind == "matching")
    return matching(v);
  throw std::invalid_argument("unknown subgraph kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

std::string ConstructionSpec::to_string() const
{
  std::ostringstream os;
  os << specls::to_string(family) << ':';
  switch (family) {
  case Family::Turan: os << "n=" << n << ",r=" << r; break;
  case Family::T2q:
  case Family::Y2q: os << "n=" << n << ",q=" << q; break;
  case Family::KabPlus: os << "a=" << a << ",b=" << b; break;
  case Family::EmbedH:
    os << "n=" << n << ",h=" << (h ? h->to_string() : std::string("?"))
       << ",side=" << (side == Side::Larger ? "larger" : "smaller");
    break;
  case Family::BC_G1:
  case Family::BC_G2: os << "n=" << n << ",s=" << s << ",t=" << t << ",a=" << a; break;
  case Family::Lnsa: os << "n=" << n << ",s=" << s << ",alpha=" << alpha.get_str(); break;
  case Family::BookJoin: os << "k=" << k; break;
  }
  return os.str();
}

ConstructionSpec ConstructionSpec::parse(const std::string &text)
{
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("construction spec needs Family:key=value,..., got '" + text + "'");
  ConstructionSpec spec;
  spec.family = family_from_string(text.substr(0, colon));
  std::map<std::string, std::string> kv;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size() && !rest.empty()) {
    auto comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("construction parameter needs key=value, got '" + item + "'");
    if (!kv.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
      throw std::invalid_argument("duplicate parameter '" + item.substr(0, eq) + "'");
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  auto take = [&](const std::string &key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(specls::to_string(spec.family) + " needs parameter " + key);
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_int = [&](const std::string &key) { return parse_int(key, take(key)); };
  switch (spec.family) {
  case Family::Turan:
    spec.n = take_int("n");
    spec.r = take_int("r");
    break;
  case Family::T2q:
  case Family::Y2q:
    spec.n = take_int("n");
    spec.q = take_int("q");
    break;
  case Family::KabPlus:
    spec.a = take_int("a");
    spec.b = take_int("b");
    break;
  case Family::EmbedH: {
    spec.n = take_int("n");
    spec.h = HDescriptor::parse(take("h"));
    if (kv.count("side")) {
      std::string sd = take("side");
      if (sd == "larger")
        spec.side = Side::Larger;
      else if (sd == "smaller")
        spec.side = Side::Smaller;
      else
        throw std::invalid_argument("side must be larger or smaller, got '" + sd + "'");
    }
    break;
  }
  case Family::BC_G1:
  case Family::BC_G2:
    spec.n = take_int("n");
    spec.s = take_int("s");
    spec.t = take_int("t");
    spec.a = take_int("a");
    break;
  case Family::Lnsa:
    spec.n = take_int("n");
    spec.s = take_int("s");
    spec.alpha = parse_rational(take("alpha"));
    break;
  case Family::BookJoin: spec.k = take_int("k"); break;
  }
  if (!kv.empty())
    throw std::invalid_argument("unexpected parameter '" + kv.begin()->first + "' for " +
                                specls::to_string(spec.family));
  return spec;
}

// ---------------------------------------------------------------------------

std::vector<int> turan_parts(int n, int r)
{
  if (r <= 0)
    infeasible("Turan graph needs r >= 1");
  if (n < 0)
    infeasible("Turan graph needs n >= 0");
  int parts = std::min(n, r);
  std::vector<int> sizes;
  for (int i = 0; i < parts; ++i)
    sizes.push_back(n / parts + (i < n % parts ? 1 : 0));
  return sizes;
}

std::int64_t turan_edges(int n, int r) { return multipartite_edges(turan_parts(n, r)); }

Graph complete_multipartite(const std::vector<int> &parts)
{
  int n = 0;
  for (int p : parts) {
    if (p < 0)
      infeasible("negative part size");
    n += p;
  }
  GraphBuilder b(n);
  int start = 0;
  for (int p : parts) {
    for (int u = start; u < start + p; ++u)
      for (int v = start + p; v < n; ++v)
        b.add_edge(u, v);
    start += p;
  }
  return b.build();
}

Graph turan(int n, int r) { return complete_multipartite(turan_parts(n, r)); }

Graph embed_into_turan2(int n, const Graph &h, Side side)
{
  if (n < 0)
    infeasible("n must be nonnegative");
  const int larger = (n + 1) / 2, smaller = n / 2;
  const int room = side == Side::Larger ? larger : smaller;
  if (h.order() > room)
    infeasible("subgraph on " + std::to_string(h.order()) + " vertices does not fit a part of size " +
               std::to_string(room));
  GraphBuilder b(turan(n, 2));
  add_edges_at(b, h, side == Side::Larger ? 0 : larger);
  return b.build();
}

Graph t_n2q(int n, int q)
{
  if (q < 0 || q + 1 > (n + 1) / 2)
    infeasible("T_{n,2,q} needs 0 <= q and q + 1 <= ceil(n/2)");
  return embed_into_turan2(n, HDescriptor::star(q).graph(), Side::Larger);
}

Graph y_n2q(int n, int q)
{
  if (q < 0 || 2 * q > (n + 1) / 2)
    infeasible("Y_{n,2,q} needs 0 <= q and 2q <= ceil(n/2)");
  return embed_into_turan2(n, HDescriptor::matching(q).graph(), Side::Larger);
}

Graph kab_plus(int a, int b)
{
  if (a < 2)
    infeasible("K+_{a,b} needs a >= 2");
  if (b < 0)
    infeasible("K+_{a,b} needs b >= 0");
  GraphBuilder g(complete_multipartite({a, b}));
  g.add_edge(0, 1);
  return g.build();
}

Graph book_join(int k)
{
  if (k < 0)
    infeasible("book needs k >= 0");
  GraphBuilder b(k + 2);
  b.add_edge(0, 1);
  for (int i = 2; i < k + 2; ++i) {
    b.add_edge(0, i);
    b.add_edge(1, i);
  }
  return b.build();
}

int bc_alpha(int n, int s, int t, int a) { return s - t - a * a - (n % 2 == 1 ? a : 0); }

std::pair<int, int> bc_parts(int n, int a) { return {(n + 1) / 2 + a, n / 2 - a}; }

namespace {

void check_bc(int n, int s, int t, int a, int max_alpha, int need_a, int need_b)
{
  if (!(0 < t && t < s))
    infeasible("needs 0 < t < s");
  if (a < 0)
    infeasible("needs a >= 0");
  int alpha = bc_alpha(n, s, t, a);
  if (alpha < 0)
    infeasible("needs alpha = s - t - a^2 - [n odd] a >= 0, got " + std::to_string(alpha));
  if (alpha > max_alpha)
    infeasible("alpha = " + std::to_string(alpha) + " exceeds the " + std::to_string(max_alpha) +
               " deletable edges");
  auto [A, B] = bc_parts(n, a);
  if (A < need_a || B < need_b)
    infeasible("parts |A|=" + std::to_string(A) + ", |B|=" + std::to_string(B) + " too small, need " +
               std::to_string(need_a) + " and " + std::to_string(need_b));
}

} // namespace

Graph balogh_clemen_g1(int n, int s, int t, int a)
{
  check_bc(n, s, t, a, s - 1, 2 * (s - 1), 2);
  auto [A, B] = bc_parts(n, a);
  (void)B;
  GraphBuilder g(complete_multipartite({A, n - A}));
  const int u1 = A, u2 = A + 1;
  g.add_edge(u1, u2);
  for (int i = 0; i < s - 1; ++i)
    g.add_edge(2 * i, 2 * i + 1);
  for (int i = 0; i < bc_alpha(n, s, t, a); ++i)
    g.remove_edge(u1, 2 * i);
  return g.build();
}

Graph balogh_clemen_g2(int n, int s, int t, int a)
{
  check_bc(n, s, t, a, s, 2 * s, 1);
  auto [A, B] = bc_parts(n, a);
  (void)B;
  GraphBuilder g(complete_multipartite({A, n - A}));
  const int u = A;
  for (int i = 0; i < s; ++i)
    g.add_edge(2 * i, 2 * i + 1);
  for (int i = 0; i < bc_alpha(n, s, t, a); ++i)
    g.remove_edge(u, 2 * i);
  return g.build();
}

std::vector<int> l_nsalpha_parts(int n, int s, const BigRational &alpha)
{
  if (s < 2)
    infeasible("L_{n,s,alpha} needs s >= 2");
  if (n < 0)
    infeasible("L_{n,s,alpha} needs n >= 0");
  if (sgn(alpha) < 0 || alpha * s >= 1)
    infeasible("L_{n,s,alpha} needs 0 <= alpha < 1/s");
  std::vector<BigRational> ideal;
  for (int i = 0; i < s; ++i)
    ideal.push_back(BigRational(n) * (1 + alpha) / (s + 1));
  ideal.push_back(BigRational(n) * (1 - s * alpha) / (s + 1));
  std::vector<int> sizes;
  std::vector<BigRational> frac;
  int total = 0;
  for (const auto &x : ideal) {
    BigRational f = floor_of(x);
    sizes.push_back(static_cast<int>(f.get_num().get_si()));
    frac.push_back(x - f);
    total += sizes.back();
  }
  std::vector<int> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return frac[i] > frac[j]; });
  for (int i = 0; total < n; ++i, ++total)
    ++sizes[order[static_cast<std::size_t>(i)]];
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] <= 0)
      infeasible("L_{n,s,alpha}: rounded part " + std::to_string(i) + " is empty");
  return sizes;
}

Graph l_nsalpha(int n, int s, const BigRational &alpha) { return complete_multipartite(l_nsalpha_parts(n, s, alpha)); }

// ---------------------------------------------------------------------------

namespace {

std::optional<FamilyTag> y_tag(int n)
{
  if (n >= 4 && n % 2 == 0)
    return FamilyTag::YEven;
  if (n >= 3 && n % 2 == 1)
    return FamilyTag::YOdd;
  return std::nullopt;
}

} // namespace

Construction build(const ConstructionSpec &spec)
{
  Construction c;
  c.spec = spec;
  const int n = spec.n;
  auto &p = c.predicted;
  switch (spec.family) {
  case Family::Turan: {
    auto parts = turan_parts(n, spec.r);
    c.graph = complete_multipartite(parts);
    p.m_expected = multipartite_edges(parts);
    p.t_expected = multipartite_triangles(parts);
    break;
  }
  case Family::T2q:
  case Family::Y2q:
    c.graph = spec.family == Family::T2q ? t_n2q(n, spec.q) : y_n2q(n, spec.q);
    p.m_expected = floor_quarter_square(n) + spec.q;
    p.t_expected = static_cast<std::int64_t>(spec.q) * (n / 2);
    if (spec.q == 1)
      p.lambda_poly = y_tag(n);
    else if (spec.family == Family::T2q && spec.q == 4 && n % 2 == 1 && n >= 9)
      p.lambda_poly = FamilyTag::TStar4;
    break;
  case Family::KabPlus:
    c.graph = kab_plus(spec.a, spec.b);
    p.m_expected = static_cast<std::int64_t>(spec.a) * spec.b + 1;
    p.t_expected = spec.b;
    break;
  case Family::EmbedH: {
    if (!spec.h)
      infeasible("Embed needs a subgraph descriptor");
    Graph h = spec.h->graph();
    c.graph = embed_into_turan2(n, h, spec.side);
    const int other = spec.side == Side::Larger ? n / 2 : (n + 1) / 2;
    p.m_expected = floor_quarter_square(n) + h.size();
    p.t_expected = h.size() * other + triangle_count(h);
    using K = HDescriptor::Kind;
    const bool larger = spec.side == Side::Larger;
    const bool c4 = (spec.h->kind == K::Cycle && spec.h->a == 4) ||
                    (spec.h->kind == K::CompleteBipartite && spec.h->a == 2 && spec.h->b == 2);
    const bool star4 = spec.h->kind == K::Star && spec.h->a == 4;
    const bool single_edge = h.size() == 1;
    if (larger && c4 && n % 2 == 1 && n >= 7)
      p.lambda_poly = FamilyTag::C4Embed;
    else if (larger && star4 && n % 2 == 1 && n >= 9)
      p.lambda_poly = FamilyTag::TStar4;
    else if (larger && single_edge)
      p.lambda_poly = y_tag(n);
    break;
  }
  case Family::BC_G1:
  case Family::BC_G2: {
    const bool g1 = spec.family == Family::BC_G1;
    c.graph = g1 ? balogh_clemen_g1(n, spec.s, spec.t, spec.a) : balogh_clemen_g2(n, spec.s, spec.t, spec.a);
    auto [A, B] = bc_parts(n, spec.a);
    const std::int64_t alpha = bc_alpha(n, spec.s, spec.t, spec.a);
    p.m_expected = floor_quarter_square(n) + spec.t;
    p.t_expected = g1 ? static_cast<std::int64_t>(spec.s - 1) * B + A - 2 * alpha
                      : static_cast<std::int64_t>(spec.s) * B - alpha;
    break;
  }
  case Family::Lnsa: {
    auto parts = l_nsalpha_parts(n, spec.s, spec.alpha);
    c.graph = complete_multipartite(parts);
    p.m_expected = multipartite_edges(parts);
    p.t_expected = multipartite_triangles(parts);
    break;
  }
  case Family::BookJoin:
    c.graph = book_join(spec.k);
    c.spec.n = spec.k + 2;
    p.m_expected = 2 * static_cast<std::int64_t>(spec.k) + 1;
    p.t_expected = spec.k;
    break;
  }
  return c;
}

} // namespace specls
