#include "topocouple/coarse_map.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace topocouple {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("map", msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::int64_t to_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) fail("bad integer '" + std::string(s) + "'");
  return v;
}

/// d for "Z^d" (or "Z"), 0 otherwise.
int free_abelian_rank(const GroupModel& g) {
  const auto n = g.name();
  if (n.size() == 3 && n.starts_with("Z^") && n[2] >= '1' && n[2] <= '9') return n[2] - '0';
  return 0;
}

using Matrix = std::vector<std::vector<Rational>>;

Rational column_norm(const Matrix& m) {
  Rational best(0);
  if (m.empty()) return best;
  for (std::size_t j = 0; j < m[0].size(); ++j) {
    Rational col(0);
    for (const auto& row : m) col += abs(row[j]);
    if (col > best) best = col;
  }
  return best;
}

std::optional<Matrix> invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == Rational(0)) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == Rational(0)) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Smallest-norm left inverse obtained by inverting a square row subset;
/// ||v|| = ||L A v|| <= ||L||_1 ||A v||_1.
std::optional<Rational> best_left_inverse_norm(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  const std::size_t e = rows.size();
  std::optional<Rational> best;
  std::vector<std::size_t> pick;
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == cols) {
      Matrix sub;
      for (auto r : pick) {
        std::vector<Rational> row;
        for (auto x : rows[r]) row.emplace_back(x);
        sub.push_back(std::move(row));
      }
      if (auto inv = invert(sub)) {
        const Rational norm = column_norm(*inv);
        if (!best || norm < *best) best = norm;
      }
      return;
    }
    for (std::size_t r = start; r < e; ++r) {
      pick.push_back(r);
      self(self, r + 1);
      pick.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace

Element CoarseMap::apply(const Element& h) const {
  switch (kind_) {
    case Kind::kIdentity:
      return h;
    case Kind::kLinear: {
      NormalForm out(matrix_.size(), 0);
      for (std::size_t i = 0; i < matrix_.size(); ++i) {
        for (std::size_t j = 0; j < matrix_[i].size(); ++j) out[i] += matrix_[i][j] * h.nf[j];
      }
      return Element(std::move(out));
    }
    case Kind::kSwap: {
      Element out = h;
      for (auto& x : out.nf) {
        if (x == 1 || x == -1) x *= 2;
        else if (x == 2 || x == -2) x /= 2;
      }
      return out;
    }
    case Kind::kTable: {
      const auto it = table_.find(h);
      if (it == table_.end()) fail("lookup table has no entry for " + source_->format(h));
      return it->second;
    }
  }
  fail("unreachable map kind");
}

CoarseMap CoarseMap::identity(Group g) {
  CoarseMap m;
  m.source_ = g;
  m.target_ = std::move(g);
  m.kind_ = Kind::kIdentity;
  m.descriptor_ = "identity";
  m.analytic_ = AnalyticModuli{Rational(1), Rational(1)};
  return m;
}

CoarseMap CoarseMap::linear(Group h, Group g, std::vector<std::vector<std::int64_t>> rows, std::string descriptor) {
  const int d = free_abelian_rank(*h);
  const int e = free_abelian_rank(*g);
  if (d == 0 || e == 0) fail("linear rules need free abelian source and target, got " + h->name() + " -> " + g->name());
  if (static_cast<int>(rows.size()) != e) fail("matrix needs " + std::to_string(e) + " rows for target " + g->name());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != d) fail("matrix rows need " + std::to_string(d) + " entries for source " + h->name());
  }
  CoarseMap m;
  m.source_ = std::move(h);
  m.target_ = std::move(g);
  m.kind_ = Kind::kLinear;
  m.descriptor_ = std::move(descriptor);
  m.matrix_ = std::move(rows);
  Matrix a;
  for (const auto& r : m.matrix_) {
    std::vector<Rational> row;
    for (auto x : r) row.emplace_back(x);
    a.push_back(std::move(row));
  }
  if (const auto left = best_left_inverse_norm(m.matrix_, static_cast<std::size_t>(d))) {
    m.analytic_ = AnalyticModuli{Rational(1) / *left, column_norm(a)};
  }
  return m;
}

CoarseMap CoarseMap::swap(Group g) {
  const auto n = g->name();
  if (!(n == "F_2" || n == "F_3")) fail("swap needs F_2 or F_3, got " + n);
  CoarseMap m;
  m.source_ = g;
  m.target_ = std::move(g);
  m.kind_ = Kind::kSwap;
  m.descriptor_ = "swap";
  m.analytic_ = AnalyticModuli{Rational(1), Rational(1)};
  return m;
}

CoarseMap CoarseMap::table(Group h, Group g, std::unordered_map<Element, Element, ElementHash> entries,
                           std::string descriptor) {
  CoarseMap m;
  m.source_ = std::move(h);
  m.target_ = std::move(g);
  m.kind_ = Kind::kTable;
  m.descriptor_ = std::move(descriptor);
  m.table_ = std::move(entries);
  return m;
}

CoarseMap make_map(std::string_view rule, Group source, Group target) {
  rule = trim(rule);
  const auto colon = rule.find(':');
  const std::string_view head = rule.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : rule.substr(colon + 1);
  if (head == "identity") {
    if (source->name() != target->name()) fail("identity needs equal groups, got " + source->name() + " -> " + target->name());
    return CoarseMap::identity(std::move(source));
  }
  if (head == "scale" || head == "inclusion") {
    const auto k = to_int(arg);
    if (k == 0) fail("scale factor must be nonzero");
    const int d = free_abelian_rank(*source);
    if (d == 0 || source->name() != target->name()) fail(std::string(head) + " needs Z^d -> Z^d");
    std::vector<std::vector<std::int64_t>> rows(d, std::vector<std::int64_t>(d, 0));
    for (int i = 0; i < d; ++i) rows[i][i] = k;
    return CoarseMap::linear(std::move(source), std::move(target), std::move(rows), std::string(rule));
  }
  if (head == "embed") {
    const int d = free_abelian_rank(*source);
    const int e = free_abelian_rank(*target);
    if (d == 0 || e == 0 || d > e) fail("embed needs Z^d -> Z^e with d <= e");
    std::vector<std::vector<std::int64_t>> rows(e, std::vector<std::int64_t>(d, 0));
    for (int i = 0; i < d; ++i) rows[i][i] = 1;
    return CoarseMap::linear(std::move(source), std::move(target), std::move(rows), "embed");
  }
  if (head == "matrix") {
    std::vector<std::vector<std::int64_t>> rows;
    std::string_view rest = arg;
    while (true) {
      const auto semi = rest.find(';');
      std::string_view row_text = rest.substr(0, semi);
      std::vector<std::int64_t> row;
      while (true) {
        const auto comma = row_text.find(',');
        row.push_back(to_int(row_text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        row_text = row_text.substr(comma + 1);
      }
      rows.push_back(std::move(row));
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    return CoarseMap::linear(std::move(source), std::move(target), std::move(rows), std::string(rule));
  }
  if (head == "swap") {
    if (source->name() != target->name()) fail("swap needs equal groups");
    return CoarseMap::swap(std::move(source));
  }
  if (head == "table") {
    if (arg.empty()) fail("table rule needs a path: table:PATH");
    return load_table(std::filesystem::path(std::string(arg)), std::move(source), std::move(target));
  }
  fail("unknown map rule '" + std::string(rule) + "'");
}

CoarseMap parse_table(std::string_view text, Group source, Group target, std::string descriptor) {
  std::unordered_map<Element, Element, ElementHash> entries;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto arrow = l.find("->");
    if (arrow == std::string_view::npos) fail("line " + std::to_string(line_no) + ": expected '<source> -> <target>'");
    try {
      Element from = source->parse(l.substr(0, arrow));
      Element to = target->parse(l.substr(arrow + 2));
      source->validate(from);
      target->validate(to);
      if (!entries.emplace(std::move(from), std::move(to)).second) fail("duplicate source element");
    } catch (const Error& e) {
      fail("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return CoarseMap::table(std::move(source), std::move(target), std::move(entries), std::move(descriptor));
}

CoarseMap load_table(const std::filesystem::path& path, Group source, Group target) {
  std::ifstream in(path);
  if (!in) fail("cannot open table file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str(), std::move(source), std::move(target), "table:" + path.string());
}

}  // namespace topocouple
