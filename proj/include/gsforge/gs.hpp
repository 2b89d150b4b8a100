#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsforge/zassenhaus.hpp"

namespace gsforge {

/// Exact rational, used for all Golod-Shafarevich certification arithmetic.
/// Floating point never enters a certificate.
using Rational = boost::multiprecision::cpp_rational;

std::string format_rational(const Rational& r);       // "num/den" or "num"
Rational parse_rational(const std::string& text);     // accepts "a/b" and "a"

/// Degree histogram of a relator multiset. Relators whose degree exceeds the
/// truncation are counted in overflow_count and scored at degree N+1 when H
/// is evaluated; since t^i decreases in i on (0,1) this overestimates H, so
/// a certified H < 0 stays valid.
struct DegreeHistogram {
  std::map<unsigned, std::uint64_t> counts;  // degree -> n_i
  std::uint64_t overflow_count = 0;
  unsigned truncation = 0;

  std::uint64_t total() const;
};

DegreeHistogram histogram(const std::vector<Word>& relators, const SeriesContextPtr& ctx);

/// Minimal number of topological generators of the pro-p completion:
/// d minus the F_p-rank of the relators' degree-1 Magnus coefficient rows.
unsigned dhat(const std::vector<Word>& relators, unsigned p, int d);

/// H_p(X,R,t) = 1 - dhat*t + sum_i n_i t^i, exactly. Requires 0 < t < 1.
Rational evaluate_H(const DegreeHistogram& hist, unsigned dhat, const Rational& t);

/// Deterministic witness search: scan t = i/grid upward and return the first
/// t with H(t) < 0; if the coarse grid has none, refine around its minimum
/// at denominator grid^2 before giving up.
std::optional<Rational> find_t0(const DegreeHistogram& hist, unsigned dhat,
                                unsigned grid = 1000);

/// Minimal k >= 0 with t0^(k+1) / (1-t0)^2 < epsilon, exactly.
std::uint64_t compute_k(const Rational& t0, const Rational& epsilon);

/// t^(k+1) / (1-t)^2 = sum_{i>=k} (i-k) t^i.
Rational tail_bound(std::uint64_t k, const Rational& t);

struct GsCertificate {
  Rational t0;
  Rational H_value;  // < 0
  Rational epsilon;  // |H_value|
  std::uint64_t k;   // minimal forcing threshold
};

/// Builds the certificate for a presentation: validates a supplied t0 or
/// searches for one. Returns nullopt when no witness is found.
std::optional<GsCertificate> make_certificate(const DegreeHistogram& hist, unsigned dhat,
                                              const std::optional<Rational>& t0,
                                              unsigned grid = 1000);

}  // namespace gsforge
