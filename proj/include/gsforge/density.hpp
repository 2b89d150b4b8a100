#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsforge/gs.hpp"
#include "gsforge/words.hpp"

namespace gsforge {

/// Total decidable membership test. General normal closures have
/// undecidable membership, so density operations only accept total
/// predicates; the flagship family is the kernel of F -> F/D_nF.
struct MembershipPredicate {
  std::string description;
  std::function<bool(const Word&)> test;
};

MembershipPredicate pred_all();
MembershipPredicate pred_identity_only(int d);
/// Kernel of F -> F/D_nF (words of degree >= n). Shares one series context
/// across calls.
MembershipPredicate pred_dn_kernel(unsigned n, unsigned p, int d);
/// Coset u * T for an inner predicate T: tests u^-1 w.
MembershipPredicate pred_coset(const Word& u, MembershipPredicate inner);
MembershipPredicate pred_union(std::vector<MembershipPredicate> parts);
MembershipPredicate pred_explicit(std::vector<Word> words);

constexpr std::uint64_t kDefaultSphereCap = 10'000'000;

/// Exact rho_n(T) = |T cap S_n| / |S_n| by full sphere enumeration; refuses
/// spheres above the cap (sample instead).
Rational rho_exact(const MembershipPredicate& pred, const Alphabet& a, unsigned n,
                   std::uint64_t cap = kDefaultSphereCap);

/// Frozen RNG identifier recorded in sampled reports.
inline constexpr const char* kRngId = "mt19937_64-rej";

/// Deterministic bounded draws on top of the standard-specified mt19937_64
/// engine (uniform_int_distribution is implementation-defined, so rejection
/// sampling keeps reports reproducible across toolchains).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t bounded(std::uint64_t k);  // uniform on [0, k)

 private:
  std::mt19937_64 eng_;
};

/// Uniform random element of S_n: first letter uniform over 2d, each next
/// uniform over the 2d-1 non-cancelling letters.
Word random_sphere_word(const Alphabet& a, unsigned n, SampleRng& rng);

struct SampleEstimate {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double estimate = 0;
  double ci_low = 0;   // Wilson 95%
  double ci_high = 0;
  std::uint64_t seed = 0;
};

SampleEstimate rho_sample(const MembershipPredicate& pred, const Alphabet& a, unsigned n,
                          std::uint64_t samples, std::uint64_t seed);

struct DensityRow {
  unsigned n = 0;
  Index sphere;
  bool exact = true;
  std::uint64_t hits = 0;            // exact mode
  std::optional<Rational> rho_exact;  // exact mode
  std::optional<SampleEstimate> sample;  // sampled mode
  double rho = 0;
};

struct DecayFit {
  enum class Status { ok, insufficient, all_zero };
  Status status = Status::insufficient;
  double slope = 0;
  double intercept = 0;
  double t_hat = 0;
  std::vector<double> residuals;
  std::size_t points_used = 0;
  std::size_t zeros_excluded = 0;
  std::string label;  // advisory wording, never a verdict
};

/// Least-squares line on (n, log rho_n), zero densities excluded with note;
/// t_hat = exp(-slope). t_hat > 1 is reported as *consistent with* strong
/// negligibility, never as proof.
DecayFit decay_fit(const std::vector<DensityRow>& rows);

enum class DensityMode { exact, sampled };

struct DensityReport {
  std::string predicate;
  DensityMode mode = DensityMode::exact;
  std::uint64_t samples = 0;  // sampled mode
  std::uint64_t seed = 0;     // sampled mode
  std::string rng;            // sampled mode
  std::vector<DensityRow> rows;
  DecayFit fit;
};

DensityReport build_density_report(const MembershipPredicate& pred, const Alphabet& a,
                                   unsigned n_min, unsigned n_max, DensityMode mode,
                                   std::uint64_t samples, std::uint64_t seed,
                                   std::uint64_t cap = kDefaultSphereCap);

struct CogrowthRow {
  unsigned k = 0;
  std::uint64_t count = 0;
  double root = 0;  // |N cap S_k|^(1/k)
};

struct CogrowthProfile {
  std::vector<CogrowthRow> rows;
  double reference = 0;  // 2|X| - 1, the amenability threshold
};

/// Exact counts |N cap S_k| over a k-range with the k-th roots and the
/// Grigorchuk reference value 2m-1.
CogrowthProfile cogrowth_profile(const MembershipPredicate& pred, const Alphabet& a,
                                 unsigned k_min, unsigned k_max,
                                 std::uint64_t cap = kDefaultSphereCap);

}  // namespace gsforge
