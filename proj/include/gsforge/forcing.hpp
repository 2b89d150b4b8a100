#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gsforge/enumerators.hpp"
#include "gsforge/gs.hpp"

namespace gsforge {

/// Everything a staged forcing run needs. k must equal compute_k(t0,
/// epsilon) for the base presentation's certificate; run() validates this.
struct ForcingConfig {
  unsigned p = 2;
  Alphabet alphabet{1};
  std::vector<Word> base_relators;
  Rational t0;
  Rational epsilon;
  std::uint64_t k = 0;
  std::vector<EnumeratorSpec> family;
  unsigned stage_budget = 0;  // stages 0..stage_budget inclusive
};

struct RelatorRecord {
  Word relator;
  unsigned e = 0;
  Index x1, x2;       // word indices of the colliding pair
  DegreeValue degree;  // recorded at `truncation`
  unsigned truncation = 0;
  unsigned stage = 0;
};

struct ForcingState {
  unsigned next_stage = 0;
  std::set<unsigned> satisfied;
  std::map<unsigned, std::uint64_t> pairs_examined;
  std::vector<RelatorRecord> relators;

  bool operator==(const ForcingState&) const = default;
};

using RelatorCallback = std::function<void(const RelatorRecord&)>;

/// Runs stages next_stage..stage_budget. At each stage s, every unsatisfied
/// e < s in the family is scanned: ordered distinct pairs of W_{e,s} in
/// Cantor order, first pair equal in F/D_{e+k}F wins, its quotient joins R
/// and (M_e) is marked satisfied. Deterministic; resuming a checkpointed
/// state continues the identical trajectory.
ForcingState run(const ForcingConfig& config, ForcingState state = {},
                 const RelatorCallback& on_relator = {});

/// Truncation used to record an emitted relator's degree.
unsigned degree_recording_truncation(unsigned e, std::uint64_t k);

struct LReport {
  enum class Status { pass, violated, indeterminate };
  Status status = Status::pass;
  struct Violation {
    unsigned e;
    std::uint64_t count;
    std::uint64_t bound;
  };
  std::vector<Violation> violations;
  struct Unresolved {
    std::size_t relator_index;
    unsigned resolved_up_to;  // degree known to exceed this
  };
  std::vector<Unresolved> unresolved;
};

/// (L_e) for every e <= e_max: |{r : deg r <= e}| <= max(e - k, 0).
/// Relators whose recorded degree is unresolved below e_max make the result
/// indeterminate rather than pass.
LReport verify_L(const ForcingState& state, std::uint64_t k, unsigned e_max);

struct MReport {
  std::vector<std::string> failures;                    // integrity violations
  std::map<unsigned, std::uint64_t> pairs_examined;     // diagnostics for unsatisfied e
  bool pass() const { return failures.empty(); }
};

/// Replays every satisfied requirement: the recorded pair must lie in
/// W_{e,stage}, be distinct, multiply to the recorded relator and collide in
/// F/D_{e+k}F. Unsatisfied requirements only report scan diagnostics
/// (infinitude of W_e is not decidable).
MReport verify_M(const ForcingState& state, const ForcingConfig& config);

struct GsPreservationReport {
  unsigned dhat_base = 0;
  unsigned dhat_extended = 0;
  Rational H_base;
  Rational H_extended;
  Rational tail;      // tail_bound(k, t0)
  bool preserved = false;  // H_extended <= H_base + tail
  bool negative = false;   // H_extended < 0
  bool pass() const { return preserved && negative; }
};

/// Recomputes the histogram of S union R and checks the chain
/// H(S u R, t0) <= H(S, t0) + t0^(k+1)/(1-t0)^2 < 0 in exact arithmetic.
GsPreservationReport certify_gs(const ForcingState& state, const ForcingConfig& config);

/// Versioned JSON checkpoint; load validates compatibility with the config.
void checkpoint_save(const ForcingState& state, const ForcingConfig& config,
                     const std::string& path);
ForcingState checkpoint_load(const std::string& path, const ForcingConfig& config);

/// The frozen JSONL record for one relator, e.g.
/// {"stage":6,"e":0,"x1":4373,"x2":28697813,"relator":"x1^-8","degree":8}
std::string relator_log_line(const RelatorRecord& rec, const Alphabet& a);

}  // namespace gsforge
