#include "gsforge/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include "gsforge/zassenhaus.hpp"

namespace gsforge {

MembershipPredicate pred_all() {
  return {"all", [](const Word&) { return true; }};
}

MembershipPredicate pred_identity_only(int d) {
  (void)d;
  return {"identity_only", [](const Word& w) { return w.is_identity(); }};
}

MembershipPredicate pred_dn_kernel(unsigned n, unsigned p, int d) {
  if (n < 1) throw MismatchError("filtration level must be >= 1");
  const SeriesContextPtr ctx = make_context(p, d, n);
  std::ostringstream desc;
  desc << "dn_kernel(n=" << n << ",p=" << p << ")";
  return {desc.str(), [ctx](const Word& w) { return degree(w, ctx).confirmed_at_least(ctx->N); }};
}

MembershipPredicate pred_coset(const Word& u, MembershipPredicate inner) {
  const Word u_inv = inverse(u);
  std::ostringstream desc;
  desc << "coset(" << format_word(u, Alphabet(u.alphabet_size() > 0 ? u.alphabet_size() : 1))
       << " * " << inner.description << ")";
  auto test = inner.test;
  return {desc.str(), [u_inv, test](const Word& w) { return test(multiply(u_inv, w)); }};
}

MembershipPredicate pred_union(std::vector<MembershipPredicate> parts) {
  std::ostringstream desc;
  desc << "union(";
  for (std::size_t i = 0; i < parts.size(); ++i) desc << (i ? "," : "") << parts[i].description;
  desc << ")";
  auto tests = std::make_shared<std::vector<MembershipPredicate>>(std::move(parts));
  return {desc.str(), [tests](const Word& w) {
            return std::any_of(tests->begin(), tests->end(),
                               [&](const MembershipPredicate& p) { return p.test(w); });
          }};
}

MembershipPredicate pred_explicit(std::vector<Word> words) {
  auto set = std::make_shared<std::set<Word>>(words.begin(), words.end());
  return {"explicit(" + std::to_string(set->size()) + " words)",
          [set](const Word& w) { return set->count(w) > 0; }};
}

Rational rho_exact(const MembershipPredicate& pred, const Alphabet& a, unsigned n,
                   std::uint64_t cap) {
  const Index size = sphere_size(a, n);
  if (size > cap)
    throw CapError("sphere S_" + std::to_string(n) + " exceeds the enumeration cap; sample instead");
  std::uint64_t hits = 0;
  SphereStream stream(a, n);
  while (auto w = stream.next())
    if (pred.test(*w)) ++hits;
  return Rational(Index(hits), size);
}

std::uint64_t SampleRng::bounded(std::uint64_t k) {
  if (k == 0) throw MismatchError("bounded(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / k * k;
  std::uint64_t r;
  do {
    r = eng_();
  } while (r >= limit);
  return r % k;
}

Word random_sphere_word(const Alphabet& a, unsigned n, SampleRng& rng) {
  const int d = a.rank();
  std::vector<int> letters;
  letters.reserve(n);
  if (n > 0) {
    letters.push_back(letter_from_code(static_cast<int>(rng.bounded(2 * d))));
    for (unsigned k = 1; k < n; ++k) {
      const int avoid = letter_code(-letters.back());
      int code = static_cast<int>(rng.bounded(2 * d - 1));
      if (code >= avoid) ++code;
      letters.push_back(letter_from_code(code));
    }
  }
  return Word::from_raw(d, letters);
}

namespace {
// Wilson score interval at 95%
constexpr double kZ = 1.959963984540054;

void wilson(SampleEstimate& est) {
  const double n = static_cast<double>(est.samples);
  const double phat = static_cast<double>(est.hits) / n;
  const double z2 = kZ * kZ;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2 * n);
  const double half = kZ * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  est.estimate = phat;
  est.ci_low = std::max(0.0, (center - half) / denom);
  est.ci_high = std::min(1.0, (center + half) / denom);
}
}  // namespace

SampleEstimate rho_sample(const MembershipPredicate& pred, const Alphabet& a, unsigned n,
                          std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw MismatchError("need at least one sample");
  SampleRng rng(seed);
  SampleEstimate est;
  est.samples = samples;
  est.seed = seed;
  for (std::uint64_t i = 0; i < samples; ++i)
    if (pred.test(random_sphere_word(a, n, rng))) ++est.hits;
  wilson(est);
  return est;
}

DecayFit decay_fit(const std::vector<DensityRow>& rows) {
  DecayFit fit;
  std::vector<std::pair<double, double>> pts;  // (n, log rho)
  for (const auto& row : rows) {
    if (row.rho > 0)
      pts.emplace_back(static_cast<double>(row.n), std::log(row.rho));
    else
      ++fit.zeros_excluded;
  }
  fit.points_used = pts.size();
  if (pts.empty()) {
    fit.status = DecayFit::Status::all_zero;
    fit.label = "exactly zero on range";
    return fit;
  }
  if (pts.size() < 3) {
    fit.status = DecayFit::Status::insufficient;
    fit.label = "fewer than 3 nonzero densities; no fit";
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  fit.status = DecayFit::Status::ok;
  fit.slope = slope;
  fit.intercept = intercept;
  fit.t_hat = std::exp(-slope);
  for (const auto& [x, y] : pts) fit.residuals.push_back(y - (slope * x + intercept));
  fit.label = fit.t_hat > 1.0 ? "consistent with strong negligibility (t_hat > 1)"
                              : "not consistent with strong negligibility (t_hat <= 1)";
  return fit;
}

DensityReport build_density_report(const MembershipPredicate& pred, const Alphabet& a,
                                   unsigned n_min, unsigned n_max, DensityMode mode,
                                   std::uint64_t samples, std::uint64_t seed,
                                   std::uint64_t cap) {
  if (n_max < n_min) throw MismatchError("empty n range");
  DensityReport report;
  report.predicate = pred.description;
  report.mode = mode;
  if (mode == DensityMode::sampled) {
    report.samples = samples;
    report.seed = seed;
    report.rng = kRngId;
  }
  for (unsigned n = n_min; n <= n_max; ++n) {
    DensityRow row;
    row.n = n;
    row.sphere = sphere_size(a, n);
    if (mode == DensityMode::exact) {
      const Rational rho = gsforge::rho_exact(pred, a, n, cap);
      row.exact = true;
      row.hits = static_cast<std::uint64_t>(numerator(rho * row.sphere));
      row.rho_exact = rho;
      row.rho = static_cast<double>(rho);
    } else {
      // one deterministic substream per n: seed offset by n keeps rows
      // independent of each other while reproducible
      row.exact = false;
      row.sample = rho_sample(pred, a, n, samples, seed + n);
      row.rho = row.sample->estimate;
    }
    report.rows.push_back(std::move(row));
  }
  report.fit = decay_fit(report.rows);
  return report;
}

CogrowthProfile cogrowth_profile(const MembershipPredicate& pred, const Alphabet& a,
                                 unsigned k_min, unsigned k_max, std::uint64_t cap) {
  if (k_max < k_min || k_min < 1) throw MismatchError("cogrowth range must satisfy 1 <= k_min <= k_max");
  CogrowthProfile profile;
  profile.reference = static_cast<double>(2 * a.rank() - 1);
  for (unsigned k = k_min; k <= k_max; ++k) {
    const Index size = sphere_size(a, k);
    if (size > cap)
      throw CapError("sphere S_" + std::to_string(k) + " exceeds the enumeration cap");
    CogrowthRow row;
    row.k = k;
    SphereStream stream(a, k);
    while (auto w = stream.next())
      if (pred.test(*w)) ++row.count;
    row.root = row.count == 0
                   ? 0.0
                   : std::pow(static_cast<double>(row.count), 1.0 / static_cast<double>(k));
    profile.rows.push_back(row);
  }
  return profile;
}

}  // namespace gsforge
