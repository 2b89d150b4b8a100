#pragma once

#include <optional>
#include <string>

#include "gsforge/density.hpp"
#include "gsforge/forcing.hpp"
#include "gsforge/serialize.hpp"

namespace gsforge {

inline constexpr const char* kConfigSchemaVersion = "1";

/// Parsed experiment configuration. Schema-validated: the version field is
/// mandatory and unknown keys are rejected everywhere.
struct RunConfig {
  Alphabet alphabet{1};
  unsigned p = 2;
  std::vector<Word> base_relators;

  struct Gs {
    std::optional<Rational> t0;
    unsigned grid = 1000;
  };
  Gs gs;

  struct Forcing {
    std::vector<EnumeratorSpec> family;
    unsigned stage_budget = 0;
  };
  std::optional<Forcing> forcing;

  struct Density {
    MembershipPredicate predicate;
    json predicate_spec;
    unsigned n_min = 1;
    unsigned n_max = 1;
    DensityMode mode = DensityMode::exact;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultSphereCap;
  };
  std::optional<Density> density;

  struct Output {
    std::string relator_log = "relators.jsonl";
    std::string checkpoint = "forge-checkpoint.json";
  };
  Output output;
};

RunConfig parse_run_config(const json& doc);
RunConfig load_run_config(const std::string& path);

MembershipPredicate parse_predicate(const json& spec, const Alphabet& a, unsigned p);

/// Report writers (all deterministic, no timestamps).
std::string density_csv(const DensityReport& report);
std::string density_header_json(const DensityReport& report, const Alphabet& a);
std::string cogrowth_csv(const CogrowthProfile& profile);
std::string cogrowth_header_json(const CogrowthProfile& profile, const Alphabet& a,
                                 const std::string& predicate);
json gs_check_report(const DegreeHistogram& hist, unsigned dhat_value,
                     const std::optional<GsCertificate>& cert);
json forge_report(const ForcingConfig& config, const ForcingState& state, const LReport& l,
                  const MReport& m, const GsPreservationReport& gs, unsigned e_max);

/// Stable decimal formatting for report floats ("%.12g").
std::string format_double(double v);

}  // namespace gsforge
