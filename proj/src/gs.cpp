#include "gsforge/gs.hpp"

#include <algorithm>

namespace gsforge {

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    const boost::multiprecision::cpp_int num(text.substr(0, slash));
    const boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw ParseError("cannot parse rational '" + text + "'");
  }
}

std::uint64_t DegreeHistogram::total() const {
  std::uint64_t t = overflow_count;
  for (const auto& [deg, n] : counts) t += n;
  return t;
}

DegreeHistogram histogram(const std::vector<Word>& relators, const SeriesContextPtr& ctx) {
  DegreeHistogram hist;
  hist.truncation = ctx->N;
  for (const Word& r : relators) {
    if (r.is_identity()) throw MismatchError("empty word is not a valid relator");
    const DegreeValue deg = degree(r, ctx);
    if (deg.is_finite())
      ++hist.counts[deg.value];
    else
      ++hist.overflow_count;
  }
  return hist;
}

unsigned dhat(const std::vector<Word>& relators, unsigned p, int d) {
  if (relators.empty()) return static_cast<unsigned>(d);
  const SeriesContextPtr ctx = make_context(p, d, 1);
  // rows of degree-1 coefficients; rank by Gaussian elimination over F_p
  std::vector<std::vector<std::uint32_t>> rows;
  for (const Word& r : relators) {
    const TruncatedSeries s = magnus_embed(r, ctx);
    std::vector<std::uint32_t> row(static_cast<std::size_t>(d), 0);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      row[static_cast<std::size_t>(i)] = s.coeff(ctx->offset[1] + static_cast<std::size_t>(i));
      nonzero |= row[static_cast<std::size_t>(i)] != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  unsigned rank = 0;
  for (int col = 0; col < d && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][static_cast<std::size_t>(col)] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint64_t lead = rows[rank][static_cast<std::size_t>(col)];
    // scale pivot row to 1 via Fermat inverse
    std::uint64_t inv = 1, b = lead, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (auto& v : rows[rank]) v = static_cast<std::uint32_t>(v * inv % p);
    for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
      if (r2 == rank) continue;
      const std::uint64_t f = rows[r2][static_cast<std::size_t>(col)];
      if (!f) continue;
      for (int c2 = 0; c2 < d; ++c2) {
        auto& v = rows[r2][static_cast<std::size_t>(c2)];
        v = static_cast<std::uint32_t>(
            (v + (p - f % p) * rows[rank][static_cast<std::size_t>(c2)]) % p);
      }
    }
    ++rank;
  }
  return static_cast<unsigned>(d) - rank;
}

Rational evaluate_H(const DegreeHistogram& hist, unsigned dhat, const Rational& t) {
  if (!(t > 0 && t < 1)) throw MismatchError("H is only evaluated on 0 < t < 1");
  Rational H = 1 - Rational(dhat) * t;
  for (const auto& [deg, n] : hist.counts) {
    Rational tp = 1;
    for (unsigned i = 0; i < deg; ++i) tp *= t;
    H += Rational(n) * tp;
  }
  if (hist.overflow_count > 0) {
    Rational tp = 1;
    for (unsigned i = 0; i <= hist.truncation; ++i) tp *= t;
    H += Rational(hist.overflow_count) * tp;
  }
  return H;
}

std::optional<Rational> find_t0(const DegreeHistogram& hist, unsigned dhat, unsigned grid) {
  if (grid < 2) throw MismatchError("grid resolution must be >= 2");
  std::optional<Rational> best_t;
  Rational best_H;
  for (unsigned i = 1; i < grid; ++i) {
    const Rational t(i, grid);
    const Rational H = evaluate_H(hist, dhat, t);
    if (H < 0) return t;  // earliest coarse witness
    if (!best_t || H < best_H) {
      best_t = t;
      best_H = H;
    }
  }
  // refine around the coarse minimum in case a narrow dip fell between
  // grid points: t = j / grid^2 within +-1/grid of the minimum
  const std::uint64_t fine = static_cast<std::uint64_t>(grid) * grid;
  const std::uint64_t center_j =
      static_cast<std::uint64_t>(numerator(*best_t * fine));  // exact, multiple of grid
  const std::uint64_t j_lo = center_j > grid ? center_j - grid + 1 : 1;
  const std::uint64_t j_hi = std::min<std::uint64_t>(center_j + grid - 1, fine - 1);
  for (std::uint64_t j = j_lo; j <= j_hi; ++j) {
    const Rational t(j, fine);
    if (evaluate_H(hist, dhat, t) < 0) return t;
  }
  return std::nullopt;
}

std::uint64_t compute_k(const Rational& t0, const Rational& epsilon) {
  if (!(t0 > 0 && t0 < 1)) throw MismatchError("t0 must satisfy 0 < t0 < 1");
  if (!(epsilon > 0)) throw MismatchError("epsilon must be positive");
  const Rational target = epsilon * (1 - t0) * (1 - t0);
  Rational pow = t0;  // t0^(k+1)
  std::uint64_t k = 0;
  while (pow >= target) {
    pow *= t0;
    ++k;
  }
  return k;
}

Rational tail_bound(std::uint64_t k, const Rational& t) {
  if (!(t > 0 && t < 1)) throw MismatchError("tail bound needs 0 < t < 1");
  Rational tp = t;
  for (std::uint64_t i = 0; i < k; ++i) tp *= t;
  return tp / ((1 - t) * (1 - t));
}

std::optional<GsCertificate> make_certificate(const DegreeHistogram& hist, unsigned dhat,
                                              const std::optional<Rational>& t0,
                                              unsigned grid) {
  std::optional<Rational> witness = t0;
  if (witness) {
    if (evaluate_H(hist, dhat, *witness) >= 0) return std::nullopt;
  } else {
    witness = find_t0(hist, dhat, grid);
    if (!witness) return std::nullopt;
  }
  GsCertificate cert;
  cert.t0 = *witness;
  cert.H_value = evaluate_H(hist, dhat, *witness);
  cert.epsilon = -cert.H_value;
  cert.k = compute_k(cert.t0, cert.epsilon);
  return cert;
}

}  // namespace gsforge
