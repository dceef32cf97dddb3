#include "specls/graph6.hpp"

namespace specls {

namespace {

constexpr int kBias = 63;

void check_byte(std::string_view s, std::size_t i)
{
  auto c = static_cast<unsigned char>(s[i]);
  if (c < 63 || c > 126)
    throw Graph6Error("byte outside graph6 range [63,126]", i);
}

} // namespace

Graph parse_graph6(std::string_view text)
{
  if (!text.empty() && text.back() == '\n')
    text.remove_suffix(1);
  if (text.empty())
    throw Graph6Error("empty graph6 string", 0);

  std::size_t pos = 0;
  long long n = 0;
  if (text[0] != '~') {
    check_byte(text, 0);
    n = text[0] - kBias;
    pos = 1;
  } else if (text.size() >= 2 && text[1] != '~') {
    if (text.size() < 4)
      throw Graph6Error("truncated size header", text.size());
    for (std::size_t i = 1; i < 4; ++i) {
      check_byte(text, i);
      n = (n << 6) | (text[i] - kBias);
    }
    pos = 4;
  } else {
    if (text.size() < 8)
      throw Graph6Error("truncated size header", text.size());
    for (std::size_t i = 2; i < 8; ++i) {
      check_byte(text, i);
      n = (n << 6) | (text[i] - kBias);
    }
    pos = 8;
  }
  if (n > kMaxVertices)
    throw Graph6Error("vertex count " + std::to_string(n) + " exceeds 4096", 0);

  const long long bits = n * (n - 1) / 2;
  const std::size_t body = static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() - pos != body)
    throw Graph6Error("expected " + std::to_string(body) + " body bytes, found " + std::to_string(text.size() - pos),
                      text.size() < pos + body ? text.size() : pos + body);

  GraphBuilder b(static_cast<int>(n));
  long long k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      std::size_t at = pos + static_cast<std::size_t>(k / 6);
      if (k % 6 == 0)
        check_byte(text, at);
      int chunk = text[at] - kBias;
      if ((chunk >> (5 - k % 6)) & 1)
        b.add_edge(i, j);
    }
  if (bits % 6 != 0) {
    std::size_t at = text.size() - 1;
    int chunk = text[at] - kBias;
    int pad = static_cast<int>(6 - bits % 6);
    if (chunk & ((1 << pad) - 1))
      throw Graph6Error("nonzero padding bits", at);
  }
  return b.build();
}

std::string emit_graph6(const Graph &g)
{
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  }
  int chunk = 0, filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + kBias));
        chunk = filled = 0;
      }
    }
  if (filled > 0)
    out.push_back(static_cast<char>((chunk << (6 - filled)) + kBias));
  return out;
}

} // namespace specls
