#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topocouple/groups.hpp"
#include "topocouple/rational.hpp"

namespace topocouple {

/// Closed-form moduli valid at every scale:
///   kappa(t) >= ceil(kappa_rate * t),  omega(t) <= floor(omega_rate * t).
struct AnalyticModuli {
  Rational kappa_rate;
  Rational omega_rate;

  std::int64_t kappa(std::int64_t t) const { return (kappa_rate * Rational(t)).ceil(); }
  std::int64_t omega(std::int64_t t) const { return (omega_rate * Rational(t)).floor(); }
};

/// The coarse equivalence phi: H -> G.
///
/// Rules:
///   identity        H and G must be the same model
///   scale:k         Z^d -> Z^d, v -> k v
///   inclusion:k     (kZ)^d inside Z^d; source generator e_i goes to k e_i,
///                   so on normal forms this is the same homomorphism as scale:k
///   embed           Z^d -> Z^e (d <= e), pad with zeros
///   matrix:R1;R2;.. Z^d -> Z^e by an integer e x d matrix given row by row,
///                   entries comma separated, e.g. matrix:1,1;0,1
///   swap            F_k -> F_k exchanging the first two letters
///   table:PATH      finite lookup table (see load_table)
class CoarseMap {
 public:
  enum class Kind { kIdentity, kLinear, kSwap, kTable };

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  Kind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  const std::optional<AnalyticModuli>& analytic() const { return analytic_; }
  /// Rows of the integer matrix for linear rules.
  const std::vector<std::vector<std::int64_t>>& matrix() const { return matrix_; }

  /// Throws Error("map", ...) for a table rule with a missing key.
  Element apply(const Element& h) const;

  static CoarseMap identity(Group g);
  static CoarseMap linear(Group h, Group g, std::vector<std::vector<std::int64_t>> rows, std::string descriptor);
  static CoarseMap swap(Group g);
  static CoarseMap table(Group h, Group g, std::unordered_map<Element, Element, ElementHash> entries,
                         std::string descriptor);

 private:
  Group source_;
  Group target_;
  Kind kind_ = Kind::kIdentity;
  std::string descriptor_;
  std::vector<std::vector<std::int64_t>> matrix_;
  std::unordered_map<Element, Element, ElementHash> table_;
  std::optional<AnalyticModuli> analytic_;
};

/// Builds a map from a rule string (see CoarseMap).
CoarseMap make_map(std::string_view rule, Group source, Group target);

/// Parses the table text format, one `<source> -> <target>` per line, using
/// each model's element syntax; blank lines and lines starting with '#' are
/// skipped. Errors name the offending line number.
CoarseMap parse_table(std::string_view text, Group source, Group target, std::string descriptor = "table");
CoarseMap load_table(const std::filesystem::path& path, Group source, Group target);

}  // namespace topocouple
