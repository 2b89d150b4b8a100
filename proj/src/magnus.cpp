#include "gsforge/magnus.hpp"

#include <algorithm>
#include <sstream>

namespace gsforge {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t acc = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

void check_ctx(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!a.context()->compatible(*b.context()))
    throw MismatchError("series over different contexts");
}

}  // namespace

SeriesContext::SeriesContext(unsigned p_, int d_, unsigned N_, std::size_t monomial_cap)
    : p(p_), d(d_), N(N_) {
  if (!is_prime(p)) throw MismatchError("p must be prime");
  if (p >= (1u << 16)) throw CapError("p must be < 2^16");
  if (d < 1) throw MismatchError("d must be >= 1");
  if (N < 1) throw MismatchError("truncation order N must be >= 1");

  offset.assign(N + 2, 0);
  dpow.assign(N + 1, 1);
  std::size_t band = 1;  // d^len
  std::size_t total = 0;
  for (unsigned len = 0; len <= N; ++len) {
    offset[len] = total;
    dpow[len] = band;
    if (band > monomial_cap || total > monomial_cap - band)
      throw CapError("monomial universe exceeds cap (" + std::to_string(monomial_cap) + ")");
    total += band;
    if (len < N) {
      if (band > monomial_cap / static_cast<std::size_t>(d))
        throw CapError("monomial universe exceeds cap (" + std::to_string(monomial_cap) + ")");
      band *= static_cast<std::size_t>(d);
    }
  }
  offset[N + 1] = total;
  universe = total;

  length_of.assign(universe, 0);
  for (unsigned len = 0; len <= N; ++len)
    std::fill(length_of.begin() + static_cast<std::ptrdiff_t>(offset[len]),
              length_of.begin() + static_cast<std::ptrdiff_t>(offset[len + 1]),
              static_cast<std::uint16_t>(len));
}

SeriesContextPtr make_context(unsigned p, int d, unsigned N, std::size_t monomial_cap) {
  return std::make_shared<SeriesContext>(p, d, N, monomial_cap);
}

std::size_t rank_of_monomial(const SeriesContext& ctx, const std::vector<int>& vars) {
  if (vars.size() > ctx.N) throw MismatchError("monomial longer than truncation order");
  std::size_t digits = 0;
  for (int v : vars) {
    if (v < 1 || v > ctx.d) throw MismatchError("monomial variable out of range");
    digits = digits * static_cast<std::size_t>(ctx.d) + static_cast<std::size_t>(v - 1);
  }
  return ctx.offset[vars.size()] + digits;
}

std::vector<int> monomial_of_rank(const SeriesContext& ctx, std::size_t rank) {
  if (rank >= ctx.universe) throw MismatchError("monomial rank out of range");
  const unsigned len = ctx.length_of[rank];
  std::size_t digits = rank - ctx.offset[len];
  std::vector<int> vars(len, 1);
  for (unsigned k = len; k-- > 0;) {
    vars[k] = static_cast<int>(digits % static_cast<std::size_t>(ctx.d)) + 1;
    digits /= static_cast<std::size_t>(ctx.d);
  }
  return vars;
}

TruncatedSeries::TruncatedSeries(SeriesContextPtr ctx) : ctx_(std::move(ctx)) {
  c_.assign(ctx_->universe, 0);
}

TruncatedSeries TruncatedSeries::constant(SeriesContextPtr ctx, std::uint32_t value) {
  TruncatedSeries s(std::move(ctx));
  s.c_[0] = static_cast<std::uint16_t>(value % s.ctx_->p);
  return s;
}

TruncatedSeries TruncatedSeries::variable(SeriesContextPtr ctx, int i) {
  TruncatedSeries s(std::move(ctx));
  if (i < 1 || i > s.ctx_->d) throw MismatchError("variable index out of range");
  s.c_[s.ctx_->offset[1] + static_cast<std::size_t>(i - 1)] = 1;
  return s;
}

std::uint16_t TruncatedSeries::coeff_of(const std::vector<int>& monomial) const {
  return c_[rank_of_monomial(*ctx_, monomial)];
}

void TruncatedSeries::set_coeff(std::size_t rank, std::uint32_t value) {
  c_[rank] = static_cast<std::uint16_t>(value % ctx_->p);
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint16_t v) { return v == 0; });
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return ctx_->compatible(*o.ctx_) && c_ == o.c_;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_ctx(a, b);
  const unsigned p = a.context()->p;
  TruncatedSeries r(a.context());
  for (std::size_t i = 0; i < r.data().size(); ++i)
    r.data()[i] = static_cast<std::uint16_t>((a.data()[i] + b.data()[i]) % p);
  return r;
}

TruncatedSeries scale(std::uint32_t c, const TruncatedSeries& a) {
  const unsigned p = a.context()->p;
  const std::uint32_t cc = c % p;
  TruncatedSeries r(a.context());
  for (std::size_t i = 0; i < r.data().size(); ++i)
    r.data()[i] = static_cast<std::uint16_t>(a.data()[i] * cc % p);
  return r;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_ctx(a, b);
  const SeriesContext& ctx = *a.context();
  const unsigned p = ctx.p;
  TruncatedSeries r(a.context());
  for (std::size_t ra = 0; ra < a.data().size(); ++ra) {
    const std::uint32_t ca = a.data()[ra];
    if (!ca) continue;
    const unsigned la = ctx.length_of[ra];
    const std::size_t da = ra - ctx.offset[la];
    for (unsigned lb = 0; lb + la <= ctx.N; ++lb) {
      const std::size_t lo = ctx.offset[lb], hi = ctx.offset[lb + 1];
      const std::size_t out_base = ctx.offset[la + lb] + da * ctx.dpow[lb];
      for (std::size_t rb = lo; rb < hi; ++rb) {
        const std::uint32_t cb = b.data()[rb];
        if (!cb) continue;
        const std::size_t rr = out_base + (rb - lo);
        r.data()[rr] = static_cast<std::uint16_t>((r.data()[rr] + ca * cb) % p);
      }
    }
  }
  return r;
}

TruncatedSeries invert_unit(const TruncatedSeries& a) {
  const SeriesContext& ctx = *a.context();
  const unsigned p = ctx.p;
  const std::uint32_t c0 = a.data()[0];
  if (c0 == 0) throw MismatchError("series is not a unit (zero constant term)");
  const std::uint32_t c0_inv = p == 2 ? 1u : mod_pow(c0, p - 2, p);

  // a = c0 (1 + g) with g in I; a^-1 = c0^-1 sum_k (-g)^k truncated.
  TruncatedSeries neg_g = scale((p - c0_inv) % p, a);  // -c0^-1 a
  neg_g.set_coeff(0, 0);
  // fix constant: -c0^-1 a has constant -1; augmentation part is -g as wanted
  TruncatedSeries acc = TruncatedSeries::constant(a.context(), 1);
  TruncatedSeries term = TruncatedSeries::constant(a.context(), 1);
  for (unsigned k = 1; k <= ctx.N; ++k) {
    term = mul(term, neg_g);
    if (term.is_zero()) break;
    acc = add(acc, term);
  }
  return scale(c0_inv, acc);
}

BinomTable::BinomTable(unsigned p) : p_(p) {
  fact_.assign(p, 1);
  inv_fact_.assign(p, 1);
  for (unsigned i = 1; i < p; ++i) fact_[i] = static_cast<std::uint32_t>(
      static_cast<std::uint64_t>(fact_[i - 1]) * i % p);
  for (unsigned i = 0; i < p; ++i) inv_fact_[i] = mod_pow(fact_[i], p - 2, p);
}

std::uint32_t BinomTable::binom(std::uint64_t n, std::uint64_t k) const {
  if (k > n) return 0;
  std::uint64_t acc = 1;
  while (n || k) {
    const std::uint64_t nd = n % p_, kd = k % p_;
    if (kd > nd) return 0;
    const std::uint64_t c = static_cast<std::uint64_t>(fact_[nd]) * inv_fact_[kd] % p_ *
                            inv_fact_[nd - kd] % p_;
    acc = acc * c % p_;
    n /= p_;
    k /= p_;
  }
  return static_cast<std::uint32_t>(acc);
}

namespace {

// a * f where f = sum_k coeffs[k] u_i^k is univariate in u_i.
TruncatedSeries mul_univariate(const TruncatedSeries& a, int var,
                               const std::vector<std::uint32_t>& coeffs) {
  const SeriesContext& ctx = *a.context();
  const unsigned p = ctx.p;
  // digit value of u_var^k: (var-1) repeated k times in base d
  std::vector<std::size_t> rep(ctx.N + 1, 0);
  for (unsigned k = 1; k <= ctx.N; ++k)
    rep[k] = rep[k - 1] * static_cast<std::size_t>(ctx.d) + static_cast<std::size_t>(var - 1);

  TruncatedSeries r(a.context());
  for (std::size_t ra = 0; ra < a.data().size(); ++ra) {
    const std::uint32_t ca = a.data()[ra];
    if (!ca) continue;
    const unsigned la = ctx.length_of[ra];
    const std::size_t da = ra - ctx.offset[la];
    for (unsigned k = 0; k + la <= ctx.N; ++k) {
      const std::uint32_t ck = coeffs[k];
      if (!ck) continue;
      const std::size_t rr = ctx.offset[la + k] + da * ctx.dpow[k] + rep[k];
      r.data()[rr] = static_cast<std::uint16_t>((r.data()[rr] + ca * ck) % p);
    }
  }
  return r;
}

}  // namespace

TruncatedSeries magnus_embed(const Word& w, const SeriesContextPtr& ctx) {
  if (w.alphabet_size() > ctx->d)
    throw MismatchError("word alphabet larger than series context");
  const unsigned p = ctx->p;
  BinomTable binom(p);

  TruncatedSeries acc = TruncatedSeries::constant(ctx, 1);
  const auto& ls = w.letters();
  std::size_t i = 0;
  std::vector<std::uint32_t> coeffs(ctx->N + 1, 0);
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const std::uint64_t run = j - i;
    const int var = std::abs(ls[i]);
    if (ls[i] > 0) {
      // (1 + u)^run
      for (unsigned k = 0; k <= ctx->N; ++k) coeffs[k] = binom.binom(run, k);
    } else {
      // (1 + u)^-run: C(-run, k) = (-1)^k C(run + k - 1, k)
      for (unsigned k = 0; k <= ctx->N; ++k) {
        std::uint32_t c = binom.binom(run + k - 1, k);
        if (k % 2 == 1) c = (p - c) % p;
        coeffs[k] = c;
      }
      coeffs[0] = 1;
    }
    acc = mul_univariate(acc, var, coeffs);
    i = j;
  }
  return acc;
}

std::string format_series(const TruncatedSeries& s) {
  const SeriesContext& ctx = *s.context();
  std::ostringstream os;
  bool first = true;
  for (std::size_t rank = 0; rank < s.data().size(); ++rank) {
    const std::uint32_t c = s.data()[rank];
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    if (rank == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    const std::vector<int> vars = monomial_of_rank(ctx, rank);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (k) os << '*';
      os << 'u' << vars[k];
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace gsforge
