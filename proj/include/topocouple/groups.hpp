#pragma once

// Finitely generated group models with canonical normal forms.
//
// Built-in models and their normal-form encodings:
//   Z^d   integer vector (a_1..a_d);            text "k" (d = 1) or "(a,b,...)"
//   F_k   reduced word, letter i>0 is the i-th generator and -i its inverse;
//         text over "abc" with upper case for inverses, identity "e"
//   Heis  triple (a,b,c) standing for x^a y^b z^c with z = [x,y];
//         text "(a,b,c)"
//   C_n   residue r in [0, n);                  text "r"
//   A x B each factor encoded as [length, entries...] and concatenated;
//         text "[x;y]"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "topocouple/error.hpp"

namespace topocouple {

using NormalForm = boost::container::small_vector<std::int64_t, 6>;

/// A group element, identified by its canonical normal form.
struct Element {
  NormalForm nf;

  Element() = default;
  explicit Element(NormalForm n) : nf(std::move(n)) {}
  Element(std::initializer_list<std::int64_t> v) : nf(v) {}

  friend bool operator==(const Element& a, const Element& b) { return a.nf == b.nf; }
  friend bool operator<(const Element& a, const Element& b) { return a.nf < b.nf; }
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

class GroupModel {
 public:
  virtual ~GroupModel() = default;

  /// Canonical descriptor, e.g. "Z^2", "F_2", "Heis", "C_5", "Z^1 x F_2".
  virtual std::string name() const = 0;
  virtual Element identity() const = 0;
  /// Symmetric generating set in the model's fixed order; each generator is
  /// immediately followed by its inverse unless it is an involution.
  virtual std::vector<Element> generators() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;
  /// Throws Error("groups", ...) if a is not a canonical normal form.
  virtual void validate(const Element& a) const = 0;
  virtual std::string format(const Element& a) const = 0;
  virtual Element parse(std::string_view text) const = 0;
  /// Exact word length when the model has a closed form for it.
  virtual std::optional<std::int64_t> word_length(const Element& a) const = 0;
};

using Group = std::shared_ptr<const GroupModel>;

/// Parses "Z^d" (1..4), "F_k" (1..3), "Heis", "C_n" (1..10^6) and products
/// "A x B x ...". Throws Error("groups", ...) on anything else.
Group make_group(std::string_view descriptor);

/// Checked wrappers that validate their inputs before delegating.
Element multiply(const GroupModel& g, const Element& a, const Element& b);
Element inverse(const GroupModel& g, const Element& a);

}  // namespace topocouple
