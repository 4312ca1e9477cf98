#include "topocouple/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include <boost/functional/hash.hpp>

namespace topocouple {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  return boost::hash_range(e.nf.begin(), e.nf.end());
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("groups", msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) fail("bad integer '" + std::string(s) + "'");
  return v;
}

/// Splits on `sep` at bracket depth zero.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

/// "(a,b,...)" or a bare integer when `allow_bare`.
std::vector<std::int64_t> parse_tuple(std::string_view text, bool allow_bare) {
  text = trim(text);
  std::vector<std::int64_t> out;
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    for (auto part : split_top(text.substr(1, text.size() - 2), ',')) out.push_back(parse_int(part));
    return out;
  }
  if (!allow_bare) fail("expected a parenthesised tuple, got '" + std::string(text) + "'");
  out.push_back(parse_int(text));
  return out;
}

std::string format_tuple(const NormalForm& nf) {
  std::string s = "(";
  for (std::size_t i = 0; i < nf.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(nf[i]);
  }
  return s + ")";
}

class FreeAbelian final : public GroupModel {
 public:
  explicit FreeAbelian(int d) : d_(d) {}

  std::string name() const override { return "Z^" + std::to_string(d_); }
  Element identity() const override { return Element(NormalForm(d_, 0)); }
  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    for (int i = 0; i < d_; ++i) {
      for (std::int64_t sgn : {1, -1}) {
        NormalForm nf(d_, 0);
        nf[i] = sgn;
        gens.emplace_back(std::move(nf));
      }
    }
    return gens;
  }
  Element multiply(const Element& a, const Element& b) const override {
    NormalForm nf(d_);
    for (int i = 0; i < d_; ++i) nf[i] = a.nf[i] + b.nf[i];
    return Element(std::move(nf));
  }
  Element inverse(const Element& a) const override {
    NormalForm nf(d_);
    for (int i = 0; i < d_; ++i) nf[i] = -a.nf[i];
    return Element(std::move(nf));
  }
  void validate(const Element& a) const override {
    if (static_cast<int>(a.nf.size()) != d_) fail("malformed " + name() + " element");
  }
  std::string format(const Element& a) const override {
    return d_ == 1 ? std::to_string(a.nf[0]) : format_tuple(a.nf);
  }
  Element parse(std::string_view text) const override {
    const auto v = parse_tuple(text, d_ == 1);
    if (static_cast<int>(v.size()) != d_) fail("expected " + std::to_string(d_) + " coordinates in '" + std::string(text) + "'");
    return Element(NormalForm(v.begin(), v.end()));
  }
  std::optional<std::int64_t> word_length(const Element& a) const override {
    std::int64_t len = 0;
    for (auto x : a.nf) len += x < 0 ? -x : x;
    return len;
  }

 private:
  int d_;
};

class FreeGroup final : public GroupModel {
 public:
  explicit FreeGroup(int k) : k_(k) {}

  std::string name() const override { return "F_" + std::to_string(k_); }
  Element identity() const override { return Element(); }
  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    for (std::int64_t i = 1; i <= k_; ++i) {
      gens.push_back(Element{i});
      gens.push_back(Element{-i});
    }
    return gens;
  }
  Element multiply(const Element& a, const Element& b) const override {
    std::size_t cancel = 0;
    const std::size_t na = a.nf.size();
    const std::size_t nb = b.nf.size();
    while (cancel < na && cancel < nb && a.nf[na - 1 - cancel] == -b.nf[cancel]) ++cancel;
    NormalForm nf;
    nf.reserve(na + nb - 2 * cancel);
    nf.insert(nf.end(), a.nf.begin(), a.nf.begin() + static_cast<std::ptrdiff_t>(na - cancel));
    nf.insert(nf.end(), b.nf.begin() + static_cast<std::ptrdiff_t>(cancel), b.nf.end());
    return Element(std::move(nf));
  }
  Element inverse(const Element& a) const override {
    NormalForm nf(a.nf.rbegin(), a.nf.rend());
    for (auto& x : nf) x = -x;
    return Element(std::move(nf));
  }
  void validate(const Element& a) const override {
    for (std::size_t i = 0; i < a.nf.size(); ++i) {
      const auto x = a.nf[i];
      if (x == 0 || x > k_ || x < -k_) fail("letter out of range in " + name() + " word");
      if (i > 0 && a.nf[i - 1] == -x) fail("unreduced " + name() + " word");
    }
  }
  std::string format(const Element& a) const override {
    if (a.nf.empty()) return "e";
    std::string s;
    for (auto x : a.nf) s += static_cast<char>(x > 0 ? 'a' + (x - 1) : 'A' + (-x - 1));
    return s;
  }
  Element parse(std::string_view text) const override {
    text = trim(text);
    if (text == "e" || text == "1") return identity();
    Element out;
    for (char c : text) {
      std::int64_t letter = 0;
      if (c >= 'a' && c < 'a' + k_) letter = c - 'a' + 1;
      else if (c >= 'A' && c < 'A' + k_) letter = -(c - 'A' + 1);
      else fail(std::string("bad letter '") + c + "' for " + name());
      out = multiply(out, Element{letter});
    }
    return out;
  }
  std::optional<std::int64_t> word_length(const Element& a) const override {
    return static_cast<std::int64_t>(a.nf.size());
  }

 private:
  int k_;
};

class Heisenberg final : public GroupModel {
 public:
  std::string name() const override { return "Heis"; }
  Element identity() const override { return Element{0, 0, 0}; }
  std::vector<Element> generators() const override {
    return {Element{1, 0, 0}, Element{-1, 0, 0}, Element{0, 1, 0}, Element{0, -1, 0}};
  }
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')
  Element multiply(const Element& x, const Element& y) const override {
    return Element{x.nf[0] + y.nf[0], x.nf[1] + y.nf[1], x.nf[2] + y.nf[2] + x.nf[0] * y.nf[1]};
  }
  Element inverse(const Element& x) const override {
    return Element{-x.nf[0], -x.nf[1], -x.nf[2] + x.nf[0] * x.nf[1]};
  }
  void validate(const Element& a) const override {
    if (a.nf.size() != 3) fail("malformed Heis element");
  }
  std::string format(const Element& a) const override { return format_tuple(a.nf); }
  Element parse(std::string_view text) const override {
    const auto v = parse_tuple(text, false);
    if (v.size() != 3) fail("Heis elements are triples (a,b,c)");
    return Element{v[0], v[1], v[2]};
  }
  std::optional<std::int64_t> word_length(const Element&) const override { return std::nullopt; }
};

class Cyclic final : public GroupModel {
 public:
  explicit Cyclic(std::int64_t n) : n_(n) {}

  std::string name() const override { return "C_" + std::to_string(n_); }
  Element identity() const override { return Element{0}; }
  std::vector<Element> generators() const override {
    if (n_ == 1) return {};
    if (n_ == 2) return {Element{1}};
    return {Element{1}, Element{n_ - 1}};
  }
  Element multiply(const Element& a, const Element& b) const override {
    return Element{(a.nf[0] + b.nf[0]) % n_};
  }
  Element inverse(const Element& a) const override { return Element{(n_ - a.nf[0]) % n_}; }
  void validate(const Element& a) const override {
    if (a.nf.size() != 1 || a.nf[0] < 0 || a.nf[0] >= n_) fail("malformed " + name() + " element");
  }
  std::string format(const Element& a) const override { return std::to_string(a.nf[0]); }
  Element parse(std::string_view text) const override {
    const auto v = parse_int(text);
    return Element{((v % n_) + n_) % n_};
  }
  std::optional<std::int64_t> word_length(const Element& a) const override {
    return std::min(a.nf[0], n_ - a.nf[0]);
  }

 private:
  std::int64_t n_;
};

class Product final : public GroupModel {
 public:
  explicit Product(std::vector<Group> factors) : factors_(std::move(factors)) {}

  std::string name() const override {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " x ";
      s += factors_[i]->name();
    }
    return s;
  }
  Element identity() const override {
    std::vector<Element> parts;
    for (const auto& f : factors_) parts.push_back(f->identity());
    return join(parts);
  }
  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    std::vector<Element> parts;
    for (const auto& f : factors_) parts.push_back(f->identity());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (const auto& g : factors_[i]->generators()) {
        auto p = parts;
        p[i] = g;
        gens.push_back(join(p));
      }
    }
    return gens;
  }
  Element multiply(const Element& a, const Element& b) const override {
    const auto pa = split(a);
    const auto pb = split(b);
    std::vector<Element> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i]->multiply(pa[i], pb[i]));
    return join(out);
  }
  Element inverse(const Element& a) const override {
    auto parts = split(a);
    for (std::size_t i = 0; i < factors_.size(); ++i) parts[i] = factors_[i]->inverse(parts[i]);
    return join(parts);
  }
  void validate(const Element& a) const override {
    const auto parts = split(a);
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->validate(parts[i]);
  }
  std::string format(const Element& a) const override {
    const auto parts = split(a);
    std::string s = "[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += ';';
      s += factors_[i]->format(parts[i]);
    }
    return s + "]";
  }
  Element parse(std::string_view text) const override {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail("product elements are written [x;y]");
    const auto items = split_top(text.substr(1, text.size() - 2), ';');
    if (items.size() != factors_.size()) fail("wrong number of factors in '" + std::string(text) + "'");
    std::vector<Element> parts;
    for (std::size_t i = 0; i < items.size(); ++i) parts.push_back(factors_[i]->parse(items[i]));
    return join(parts);
  }
  std::optional<std::int64_t> word_length(const Element& a) const override {
    const auto parts = split(a);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto len = factors_[i]->word_length(parts[i]);
      if (!len) return std::nullopt;
      total += *len;
    }
    return total;
  }

 private:
  static Element join(const std::vector<Element>& parts) {
    NormalForm nf;
    for (const auto& p : parts) {
      nf.push_back(static_cast<std::int64_t>(p.nf.size()));
      nf.insert(nf.end(), p.nf.begin(), p.nf.end());
    }
    return Element(std::move(nf));
  }
  std::vector<Element> split(const Element& a) const {
    std::vector<Element> parts;
    parts.reserve(factors_.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (pos >= a.nf.size()) fail("malformed product element");
      const auto len = a.nf[pos++];
      if (len < 0 || pos + static_cast<std::size_t>(len) > a.nf.size()) fail("malformed product element");
      parts.emplace_back(NormalForm(a.nf.begin() + static_cast<std::ptrdiff_t>(pos),
                                    a.nf.begin() + static_cast<std::ptrdiff_t>(pos + len)));
      pos += static_cast<std::size_t>(len);
    }
    if (pos != a.nf.size()) fail("malformed product element");
    return parts;
  }

  std::vector<Group> factors_;
};

Group make_factor(std::string_view d) {
  d = trim(d);
  if (d == "Z") return std::make_shared<FreeAbelian>(1);
  if (d == "Heis" || d == "H3") return std::make_shared<Heisenberg>();
  auto bounded = [&](std::string_view digits, std::int64_t lo, std::int64_t hi) {
    const auto v = parse_int(digits);
    if (v < lo || v > hi) {
      fail("parameter " + std::to_string(v) + " of '" + std::string(d) + "' outside supported range [" +
           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  };
  if (d.starts_with("Z^")) return std::make_shared<FreeAbelian>(static_cast<int>(bounded(d.substr(2), 1, 4)));
  if (d.starts_with("F_")) return std::make_shared<FreeGroup>(static_cast<int>(bounded(d.substr(2), 1, 3)));
  if (d.starts_with("C_")) return std::make_shared<Cyclic>(bounded(d.substr(2), 1, 1'000'000));
  fail("unknown group descriptor '" + std::string(d) + "'");
}

}  // namespace

Group make_group(std::string_view descriptor) {
  std::vector<std::string_view> parts;
  std::string_view rest = trim(descriptor);
  if (rest.empty()) fail("empty group descriptor");
  while (true) {
    const auto pos = rest.find(" x ");
    if (pos == std::string_view::npos) {
      parts.push_back(rest);
      break;
    }
    parts.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 3);
  }
  if (parts.size() == 1) return make_factor(parts[0]);
  std::vector<Group> factors;
  for (auto p : parts) factors.push_back(make_factor(p));
  return std::make_shared<Product>(std::move(factors));
}

Element multiply(const GroupModel& g, const Element& a, const Element& b) {
  g.validate(a);
  g.validate(b);
  return g.multiply(a, b);
}

Element inverse(const GroupModel& g, const Element& a) {
  g.validate(a);
  return g.inverse(a);
}

}  // namespace topocouple
