#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gsforge/errors.hpp"
#include "gsforge/words.hpp"

namespace gsforge {

/// Ambient truncated ring Z_p<<u_1..u_d>> / I^(N+1). Monomials of length up
/// to N are addressed by a dense rank in degree-then-lex order; the context
/// precomputes the band offsets and a per-rank length table.
struct SeriesContext {
  static constexpr std::size_t kDefaultMonomialCap = 1'000'000;

  SeriesContext(unsigned p, int d, unsigned N, std::size_t monomial_cap = kDefaultMonomialCap);

  unsigned p;
  int d;
  unsigned N;
  std::size_t universe;               // sum_{i<=N} d^i
  std::vector<std::size_t> offset;    // offset[len], len 0..N+1
  std::vector<std::size_t> dpow;      // d^j, j 0..N
  std::vector<std::uint16_t> length_of;  // monomial length per rank

  bool compatible(const SeriesContext& o) const { return p == o.p && d == o.d && N == o.N; }
};

using SeriesContextPtr = std::shared_ptr<const SeriesContext>;

SeriesContextPtr make_context(unsigned p, int d, unsigned N,
                              std::size_t monomial_cap = SeriesContext::kDefaultMonomialCap);

std::size_t rank_of_monomial(const SeriesContext& ctx, const std::vector<int>& vars);
std::vector<int> monomial_of_rank(const SeriesContext& ctx, std::size_t rank);

/// Element of the truncated ring: dense coefficient vector of least
/// nonnegative residues mod p, indexed by monomial rank.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(SeriesContextPtr ctx);
  static TruncatedSeries constant(SeriesContextPtr ctx, std::uint32_t value);
  static TruncatedSeries variable(SeriesContextPtr ctx, int i);  // u_i

  const SeriesContextPtr& context() const { return ctx_; }
  std::uint16_t coeff(std::size_t rank) const { return c_[rank]; }
  std::uint16_t coeff_of(const std::vector<int>& monomial) const;
  void set_coeff(std::size_t rank, std::uint32_t value);
  bool is_zero() const;

  const std::vector<std::uint16_t>& data() const { return c_; }
  std::vector<std::uint16_t>& data() { return c_; }

  bool operator==(const TruncatedSeries& o) const;

 private:
  SeriesContextPtr ctx_;
  std::vector<std::uint16_t> c_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(std::uint32_t c, const TruncatedSeries& a);
/// Non-commutative product; monomials longer than N are discarded.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// Inverse of a unit (invertible constant term), by the truncated geometric
/// series on the augmentation part.
TruncatedSeries invert_unit(const TruncatedSeries& a);

/// Magnus embedding x_i -> 1 + u_i, x_i^-1 -> (1 + u_i)^-1, extended
/// homomorphically. Runs of one generator are expanded with binomial
/// coefficients mod p, so long powers cost O(universe * N) instead of
/// O(length).
TruncatedSeries magnus_embed(const Word& w, const SeriesContextPtr& ctx);

/// Stable print format: terms in degree-then-lex order, monomials as
/// "u1*u2", coefficients != 1 prefixed, e.g. "1 + u1 + 2*u1*u2".
std::string format_series(const TruncatedSeries& s);

/// C(n, k) mod p by Lucas' theorem; table of factorials mod p built once.
class BinomTable {
 public:
  explicit BinomTable(unsigned p);
  std::uint32_t binom(std::uint64_t n, std::uint64_t k) const;
  unsigned prime() const { return p_; }

 private:
  unsigned p_;
  std::vector<std::uint32_t> fact_, inv_fact_;
};

}  // namespace gsforge
