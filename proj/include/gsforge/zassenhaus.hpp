#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gsforge/magnus.hpp"
#include "gsforge/words.hpp"

namespace gsforge {

/// Zassenhaus degree of a word, truncation-aware. Finite(n) is exact;
/// AtLeast(N+1) means the truncated series could not separate the word from
/// the identity (the true degree exceeds the truncation); Infinite is the
/// empty word only.
struct DegreeValue {
  enum class Kind { finite, at_least, infinite };

  Kind kind = Kind::infinite;
  unsigned value = 0;

  static DegreeValue finite(unsigned n) { return {Kind::finite, n}; }
  static DegreeValue at_least(unsigned n) { return {Kind::at_least, n}; }
  static DegreeValue infinite() { return {Kind::infinite, 0}; }

  bool is_finite() const { return kind == Kind::finite; }

  /// True iff the true degree is certainly >= m.
  bool confirmed_at_least(unsigned m) const {
    switch (kind) {
      case Kind::infinite: return true;
      case Kind::at_least: return value >= m;
      case Kind::finite: return value >= m;
    }
    return false;
  }

  /// True iff the true degree is certainly <= e.
  bool certainly_at_most(unsigned e) const { return kind == Kind::finite && value <= e; }

  std::string to_string() const;

  bool operator==(const DegreeValue&) const = default;
};

/// deg(w) within the context's truncation: Infinite for the empty word, else
/// the minimal monomial length with nonzero coefficient in magnus(w) - 1, or
/// AtLeast(N+1) when all of them vanish.
DegreeValue degree(const Word& w, const SeriesContextPtr& ctx);

/// Decidable equality oracle in F/D_nF: true iff magnus(u v^-1) = 1 mod I^n.
/// Builds its own context with N = n.
bool equal_mod_dn(const Word& u, const Word& v, unsigned n, unsigned p);

/// Same oracle against a caller-managed context (N = n); used by the forcing
/// engine to reuse contexts across stages.
bool equal_mod_dn(const Word& u, const Word& v, const SeriesContextPtr& level_ctx);

struct FiltrationViolation {
  std::size_t sample;
  std::string what;  // "commutator" or "p-power"
  DegreeValue got;
  unsigned required;
};

/// Checks deg([g,h]) >= i+j (or [g,h] = 1) and deg(g^p) >= p*i on each
/// sample pair (g, h). Degrees that exhaust the truncation cannot refute the
/// containment and do not count as violations.
std::vector<FiltrationViolation> filtration_check(
    const std::vector<std::pair<Word, Word>>& samples, unsigned i, unsigned j,
    const SeriesContextPtr& ctx);

}  // namespace gsforge
