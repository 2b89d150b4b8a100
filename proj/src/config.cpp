#include "gsforge/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gsforge {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

MembershipPredicate parse_predicate(const json& spec, const Alphabet& a, unsigned p) {
  require_object(spec, "predicate");
  const std::string kind = require_key(spec, "kind", "predicate").get<std::string>();
  if (kind == "all") {
    reject_unknown_keys(spec, {"kind"}, "predicate(all)");
    return pred_all();
  }
  if (kind == "identity_only") {
    reject_unknown_keys(spec, {"kind"}, "predicate(identity_only)");
    return pred_identity_only(a.rank());
  }
  if (kind == "dn_kernel") {
    reject_unknown_keys(spec, {"kind", "n"}, "predicate(dn_kernel)");
    return pred_dn_kernel(require_key(spec, "n", "predicate").get<unsigned>(), p, a.rank());
  }
  if (kind == "coset") {
    reject_unknown_keys(spec, {"kind", "rep", "of"}, "predicate(coset)");
    const Word rep = parse_word(require_key(spec, "rep", "predicate").get<std::string>(), a);
    return pred_coset(rep, parse_predicate(require_key(spec, "of", "predicate"), a, p));
  }
  if (kind == "union") {
    reject_unknown_keys(spec, {"kind", "parts"}, "predicate(union)");
    std::vector<MembershipPredicate> parts;
    for (const auto& part : require_key(spec, "parts", "predicate"))
      parts.push_back(parse_predicate(part, a, p));
    if (parts.empty()) throw ParseError("predicate(union): needs at least one part");
    return pred_union(std::move(parts));
  }
  if (kind == "explicit") {
    reject_unknown_keys(spec, {"kind", "words"}, "predicate(explicit)");
    std::vector<Word> words;
    for (const auto& w : require_key(spec, "words", "predicate"))
      words.push_back(parse_word(w.get<std::string>(), a));
    return pred_explicit(std::move(words));
  }
  throw ParseError("predicate: unknown kind '" + kind + "'");
}

RunConfig parse_run_config(const json& doc) {
  require_object(doc, "config");
  reject_unknown_keys(doc, {"version", "alphabet", "p", "relators", "gs", "forcing", "density", "output"},
                      "config");
  const json& version = require_key(doc, "version", "config");
  if (!version.is_string() || version.get<std::string>() != kConfigSchemaVersion)
    throw ParseError("config: unsupported or missing version (expected \"" +
                     std::string(kConfigSchemaVersion) + "\")");

  const json& alpha = require_key(doc, "alphabet", "config");
  require_object(alpha, "alphabet");
  reject_unknown_keys(alpha, {"d", "names"}, "alphabet");
  const int d = require_key(alpha, "d", "alphabet").get<int>();

  RunConfig config;
  if (alpha.contains("names")) {
    std::vector<std::string> names;
    for (const auto& n : alpha.at("names")) names.push_back(n.get<std::string>());
    config.alphabet = Alphabet(d, std::move(names));
  } else {
    config.alphabet = Alphabet(d);
  }

  config.p = require_key(doc, "p", "config").get<unsigned>();

  if (doc.contains("relators")) {
    for (const auto& r : doc.at("relators"))
      config.base_relators.push_back(parse_word(r.get<std::string>(), config.alphabet));
  }

  if (doc.contains("gs")) {
    const json& gs = doc.at("gs");
    require_object(gs, "gs");
    reject_unknown_keys(gs, {"t0", "grid"}, "gs");
    if (gs.contains("t0")) config.gs.t0 = parse_rational(gs.at("t0").get<std::string>());
    if (gs.contains("grid")) config.gs.grid = gs.at("grid").get<unsigned>();
  }

  if (doc.contains("forcing")) {
    const json& fc = doc.at("forcing");
    require_object(fc, "forcing");
    reject_unknown_keys(fc, {"enumerators", "stage_budget"}, "forcing");
    RunConfig::Forcing forcing;
    for (const auto& spec : require_key(fc, "enumerators", "forcing"))
      forcing.family.push_back(enumerator_from_json(spec, config.alphabet, config.p));
    forcing.stage_budget = require_key(fc, "stage_budget", "forcing").get<unsigned>();
    config.forcing = std::move(forcing);
  }

  if (doc.contains("density")) {
    const json& dn = doc.at("density");
    require_object(dn, "density");
    reject_unknown_keys(dn, {"predicate", "n_min", "n_max", "mode", "samples", "seed", "cap"},
                        "density");
    RunConfig::Density density;
    density.predicate_spec = require_key(dn, "predicate", "density");
    density.predicate = parse_predicate(density.predicate_spec, config.alphabet, config.p);
    density.n_min = require_key(dn, "n_min", "density").get<unsigned>();
    density.n_max = require_key(dn, "n_max", "density").get<unsigned>();
    const std::string mode = require_key(dn, "mode", "density").get<std::string>();
    if (mode == "exact")
      density.mode = DensityMode::exact;
    else if (mode == "sample")
      density.mode = DensityMode::sampled;
    else
      throw ParseError("density: unknown mode '" + mode + "'");
    if (dn.contains("samples")) density.samples = dn.at("samples").get<std::uint64_t>();
    if (dn.contains("seed")) density.seed = dn.at("seed").get<std::uint64_t>();
    if (dn.contains("cap")) density.cap = dn.at("cap").get<std::uint64_t>();
    config.density = std::move(density);
  }

  if (doc.contains("output")) {
    const json& out = doc.at("output");
    require_object(out, "output");
    reject_unknown_keys(out, {"relator_log", "checkpoint"}, "output");
    if (out.contains("relator_log")) config.output.relator_log = out.at("relator_log").get<std::string>();
    if (out.contains("checkpoint")) config.output.checkpoint = out.at("checkpoint").get<std::string>();
  }

  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
  return parse_run_config(doc);
}

std::string density_csv(const DensityReport& report) {
  std::ostringstream os;
  os << "n,sphere_size,hits_or_estimate,rho,ci_low,ci_high\n";
  for (const auto& row : report.rows) {
    os << row.n << ',' << row.sphere.str() << ',';
    if (row.exact) {
      const std::string rho = format_double(row.rho);
      os << row.hits << ',' << rho << ',' << rho << ',' << rho << '\n';
    } else {
      os << format_double(row.sample->estimate) << ',' << format_double(row.rho) << ','
         << format_double(row.sample->ci_low) << ',' << format_double(row.sample->ci_high) << '\n';
    }
  }
  return os.str();
}

std::string density_header_json(const DensityReport& report, const Alphabet& a) {
  json header;
  header["format"] = "gsforge-density";
  header["schema"] = kConfigSchemaVersion;
  header["predicate"] = report.predicate;
  header["d"] = a.rank();
  header["mode"] = report.mode == DensityMode::exact ? "exact" : "sample";
  if (report.mode == DensityMode::sampled) {
    header["samples"] = report.samples;
    header["seed"] = report.seed;
    header["rng"] = report.rng;
  }
  json fit;
  switch (report.fit.status) {
    case DecayFit::Status::ok:
      fit["t_hat"] = format_double(report.fit.t_hat);
      fit["slope"] = format_double(report.fit.slope);
      fit["points_used"] = report.fit.points_used;
      fit["zeros_excluded"] = report.fit.zeros_excluded;
      break;
    case DecayFit::Status::insufficient:
    case DecayFit::Status::all_zero:
      fit["points_used"] = report.fit.points_used;
      fit["zeros_excluded"] = report.fit.zeros_excluded;
      break;
  }
  fit["note"] = report.fit.label;
  header["fit"] = std::move(fit);
  return header.dump();
}

std::string cogrowth_csv(const CogrowthProfile& profile) {
  std::ostringstream os;
  os << "k,count,root,reference\n";
  for (const auto& row : profile.rows)
    os << row.k << ',' << row.count << ',' << format_double(row.root) << ','
       << format_double(profile.reference) << '\n';
  return os.str();
}

std::string cogrowth_header_json(const CogrowthProfile& profile, const Alphabet& a,
                                 const std::string& predicate) {
  json header;
  header["format"] = "gsforge-cogrowth";
  header["schema"] = kConfigSchemaVersion;
  header["predicate"] = predicate;
  header["d"] = a.rank();
  header["reference"] = format_double(profile.reference);
  return header.dump();
}

json gs_check_report(const DegreeHistogram& hist, unsigned dhat_value,
                     const std::optional<GsCertificate>& cert) {
  json out;
  out["format"] = "gsforge-certificate";
  out["schema"] = kConfigSchemaVersion;
  out["dhat"] = dhat_value;
  json counts = json::object();
  for (const auto& [deg, n] : hist.counts) counts[std::to_string(deg)] = n;
  out["histogram"] = std::move(counts);
  out["overflow_relators"] = hist.overflow_count;
  out["truncation"] = hist.truncation;
  if (cert) {
    out["golod_shafarevich"] = true;
    out["certificate"] = certificate_to_json(*cert);
  } else {
    out["golod_shafarevich"] = false;
  }
  return out;
}

json forge_report(const ForcingConfig& config, const ForcingState& state, const LReport& l,
                  const MReport& m, const GsPreservationReport& gs, unsigned e_max) {
  json out;
  out["format"] = "gsforge-forge-report";
  out["schema"] = kConfigSchemaVersion;
  out["p"] = config.p;
  out["d"] = config.alphabet.rank();
  GsCertificate cert{config.t0, -config.epsilon, config.epsilon, config.k};
  out["certificate"] = certificate_to_json(cert);
  out["stage_budget"] = config.stage_budget;
  out["stages_executed"] = state.next_stage;
  out["relators_found"] = state.relators.size();
  json satisfied = json::array();
  for (unsigned e : state.satisfied) satisfied.push_back(e);
  out["satisfied"] = std::move(satisfied);
  json unsatisfied = json::array();
  for (const auto& spec : config.family)
    if (!state.satisfied.count(spec.e)) unsatisfied.push_back(spec.e);
  out["unsatisfied"] = std::move(unsatisfied);
  json examined = json::object();
  for (const auto& [e, n] : state.pairs_examined) examined[std::to_string(e)] = n;
  out["pairs_examined"] = std::move(examined);

  json lrep;
  lrep["status"] = l.status == LReport::Status::pass ? "pass"
                   : l.status == LReport::Status::violated ? "violated"
                                                           : "indeterminate";
  lrep["e_max"] = e_max;
  json violations = json::array();
  for (const auto& v : l.violations)
    violations.push_back({{"e", v.e}, {"count", v.count}, {"bound", v.bound}});
  lrep["violations"] = std::move(violations);
  json unresolved = json::array();
  for (const auto& u : l.unresolved)
    unresolved.push_back({{"relator", u.relator_index}, {"resolved_up_to", u.resolved_up_to}});
  lrep["unresolved"] = std::move(unresolved);
  out["verify_L"] = std::move(lrep);

  json mrep;
  mrep["status"] = m.pass() ? "pass" : "failed";
  mrep["failures"] = m.failures;
  json diag = json::object();
  for (const auto& [e, n] : m.pairs_examined) diag[std::to_string(e)] = n;
  mrep["unsatisfied_diagnostics"] = std::move(diag);
  out["verify_M"] = std::move(mrep);

  json grep;
  grep["status"] = gs.pass() ? "pass" : "failed";
  grep["dhat_base"] = gs.dhat_base;
  grep["dhat_extended"] = gs.dhat_extended;
  grep["H_base"] = format_rational(gs.H_base);
  grep["H_extended"] = format_rational(gs.H_extended);
  grep["tail_bound"] = format_rational(gs.tail);
  grep["preservation_bound"] = format_rational(gs.H_base + gs.tail);
  grep["preserved"] = gs.preserved;
  grep["negative"] = gs.negative;
  out["certify_gs"] = std::move(grep);
  return out;
}

}  // namespace gsforge
