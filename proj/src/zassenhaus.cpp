#include "gsforge/zassenhaus.hpp"

namespace gsforge {

std::string DegreeValue::to_string() const {
  switch (kind) {
    case Kind::finite: return std::to_string(value);
    case Kind::at_least: return ">=" + std::to_string(value);
    case Kind::infinite: return "inf";
  }
  return "?";
}

DegreeValue degree(const Word& w, const SeriesContextPtr& ctx) {
  if (w.is_identity()) return DegreeValue::infinite();
  TruncatedSeries s = magnus_embed(w, ctx);
  const unsigned p = ctx->p;
  s.set_coeff(0, (s.coeff(0) + p - 1) % p);  // s - 1
  for (unsigned len = 1; len <= ctx->N; ++len) {
    for (std::size_t r = ctx->offset[len]; r < ctx->offset[len + 1]; ++r)
      if (s.coeff(r)) return DegreeValue::finite(len);
  }
  return DegreeValue::at_least(ctx->N + 1);
}

bool equal_mod_dn(const Word& u, const Word& v, const SeriesContextPtr& level_ctx) {
  const DegreeValue deg = degree(multiply(u, inverse(v)), level_ctx);
  return deg.confirmed_at_least(level_ctx->N);
}

bool equal_mod_dn(const Word& u, const Word& v, unsigned n, unsigned p) {
  if (n == 0) throw MismatchError("filtration level must be >= 1");
  return equal_mod_dn(u, v, make_context(p, std::max(u.alphabet_size(), 1), n));
}

std::vector<FiltrationViolation> filtration_check(
    const std::vector<std::pair<Word, Word>>& samples, unsigned i, unsigned j,
    const SeriesContextPtr& ctx) {
  std::vector<FiltrationViolation> violations;
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const auto& [g, h] = samples[idx];
    const Word c = commutator(g, h);
    if (!c.is_identity()) {
      const DegreeValue dc = degree(c, ctx);
      if (dc.is_finite() && dc.value < i + j)
        violations.push_back({idx, "commutator", dc, i + j});
    }
    const Word gp = power(g, ctx->p);
    if (!gp.is_identity()) {
      const DegreeValue dp = degree(gp, ctx);
      if (dp.is_finite() && dp.value < ctx->p * i)
        violations.push_back({idx, "p-power", dp, ctx->p * i});
    }
  }
  return violations;
}

}  // namespace gsforge
