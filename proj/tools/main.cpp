#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "gsforge/config.hpp"
#include "gsforge/decision.hpp"
#include "gsforge/version.hpp"

namespace {

using namespace gsforge;

constexpr int kExitOk = 0;
constexpr int kExitNoWitness = 1;
constexpr int kExitParse = 2;
constexpr int kExitVerification = 3;
constexpr int kExitCap = 4;

int infer_rank(const std::vector<std::string>& word_texts, int flag_d) {
  if (flag_d > 0) return flag_d;
  // default names x1, x2, ...: take the largest index that lets every word parse
  for (int d = 1; d <= 64; ++d) {
    const Alphabet a(d);
    bool ok = true;
    for (const auto& text : word_texts) {
      try {
        parse_word(text, a);
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (ok) return d;
  }
  throw ParseError("cannot infer alphabet rank; pass --d");
}

int cmd_magnus(const std::string& word_text, unsigned p, int d, unsigned N) {
  const Alphabet a(d);
  const Word w = parse_word(word_text, a);
  std::cout << format_series(magnus_embed(w, make_context(p, d, N))) << "\n";
  return kExitOk;
}

int cmd_deg(const std::string& word_text, unsigned p, int flag_d, unsigned N) {
  const int d = infer_rank({word_text}, flag_d);
  const Word w = parse_word(word_text, Alphabet(d));
  std::cout << degree(w, make_context(p, d, N)).to_string() << "\n";
  return kExitOk;
}

int cmd_eq(const std::string& u_text, const std::string& v_text, unsigned p, int flag_d,
           unsigned n) {
  const int d = infer_rank({u_text, v_text}, flag_d);
  const Alphabet a(d);
  const Word u = parse_word(u_text, a);
  const Word v = parse_word(v_text, a);
  std::cout << (equal_mod_dn(u, v, n, p) ? "true" : "false") << "\n";
  return kExitOk;
}

// base-presentation histograms; deeper relators score conservatively at N+1
constexpr unsigned kHistogramTruncation = 16;

int cmd_gs_check(const std::string& config_path) {
  const RunConfig config = load_run_config(config_path);
  const SeriesContextPtr ctx =
      make_context(config.p, config.alphabet.rank(), histogram_truncation(config));
  const DegreeHistogram hist = histogram(config.base_relators, ctx);
  const unsigned dh = dhat(config.base_relators, config.p, config.alphabet.rank());
  const auto cert = make_certificate(hist, dh, config.gs.t0, config.gs.grid);
  std::cout << gs_check_report(hist, dh, cert).dump(2) << "\n";
  if (!cert) {
    std::cerr << "no GS witness found\n";
    return kExitNoWitness;
  }
  return kExitOk;
}

int cmd_forge(const std::string& config_path, const std::string& resume_path, int budget_override) {
  const RunConfig config = load_run_config(config_path);
  if (!config.forcing) throw ParseError("config has no forcing section");

  const SeriesContextPtr ctx =
      make_context(config.p, config.alphabet.rank(), histogram_truncation(config));
  const DegreeHistogram hist = histogram(config.base_relators, ctx);
  const unsigned dh = dhat(config.base_relators, config.p, config.alphabet.rank());
  const auto cert = make_certificate(hist, dh, config.gs.t0, config.gs.grid);
  if (!cert) {
    std::cerr << "no GS witness found for the base presentation\n";
    return kExitNoWitness;
  }

  ForcingConfig fc;
  fc.p = config.p;
  fc.alphabet = config.alphabet;
  fc.base_relators = config.base_relators;
  fc.t0 = cert->t0;
  fc.epsilon = cert->epsilon;
  fc.k = cert->k;
  fc.family = config.forcing->family;
  fc.stage_budget = budget_override >= 0 ? static_cast<unsigned>(budget_override)
                                         : config.forcing->stage_budget;

  ForcingState state;
  bool resuming = !resume_path.empty();
  if (resuming) state = checkpoint_load(resume_path, fc);

  std::ofstream log(config.output.relator_log,
                    resuming ? std::ios::app : std::ios::trunc);
  if (!log) throw Error("cannot open relator log '" + config.output.relator_log + "'");
  const auto on_relator = [&](const RelatorRecord& rec) {
    log << relator_log_line(rec, fc.alphabet) << "\n";
    log.flush();
  };

  state = run(fc, std::move(state), on_relator);
  checkpoint_save(state, fc, config.output.checkpoint);

  unsigned max_e = 0;
  for (const auto& spec : fc.family) max_e = std::max(max_e, spec.e);
  const unsigned e_max = degree_recording_truncation(max_e, fc.k);
  const LReport l = verify_L(state, fc.k, e_max);
  const MReport m = verify_M(state, fc);
  const GsPreservationReport gs = certify_gs(state, fc);

  std::cout << forge_report(fc, state, l, m, gs, e_max).dump(2) << "\n";
  if (l.status != LReport::Status::pass || !m.pass() || !gs.pass()) {
    std::cerr << "verification failed\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_density(const std::string& config_path, const std::string& csv_path) {
  const RunConfig config = load_run_config(config_path);
  if (!config.density) throw ParseError("config has no density section");
  const auto& dn = *config.density;
  const DensityReport report = build_density_report(dn.predicate, config.alphabet, dn.n_min,
                                                    dn.n_max, dn.mode, dn.samples, dn.seed, dn.cap);
  std::cout << density_header_json(report, config.alphabet) << "\n";
  const std::string csv = density_csv(report);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw Error("cannot open '" + csv_path + "'");
    out << csv;
  }
  return kExitOk;
}

int cmd_cogrowth(int d, unsigned p, int level, bool all, bool identity, unsigned k_min,
                 unsigned k_max, std::uint64_t cap) {
  const Alphabet a(d);
  MembershipPredicate pred;
  if (all)
    pred = pred_all();
  else if (identity)
    pred = pred_identity_only(d);
  else if (level > 0)
    pred = pred_dn_kernel(static_cast<unsigned>(level), p, d);
  else
    throw ParseError("choose a predicate: --level N, --all or --identity");
  const CogrowthProfile profile = cogrowth_profile(pred, a, k_min, k_max, cap);
  std::cout << cogrowth_header_json(profile, a, pred.description) << "\n";
  std::cout << cogrowth_csv(profile);
  return kExitOk;
}

int cmd_decide_coset(int d, const std::string& word_text, const std::vector<std::string>& rep_texts,
                     const std::vector<std::string>& relator_texts, std::uint64_t budget) {
  std::vector<std::string> everything = rep_texts;
  everything.push_back(word_text);
  everything.insert(everything.end(), relator_texts.begin(), relator_texts.end());
  const Alphabet a(infer_rank(everything, d));
  const Word w = parse_word(word_text, a);
  std::vector<Word> reps, relators;
  for (const auto& t : rep_texts) reps.push_back(parse_word(t, a));
  for (const auto& t : relator_texts) relators.push_back(parse_word(t, a));
  const CosetDecision decision = coset_decide(w, reps, relators, budget);
  if (decision.found)
    std::cout << "index=" << decision.index << "\n";
  else
    std::cout << "timeout\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-group Magnus/Zassenhaus toolkit: Golod-Shafarevich certificates, staged "
               "relation forcing, coset semi-decision and sphere densities"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "print version and schema information");

  // magnus
  auto* magnus = app.add_subcommand("magnus", "Magnus embedding of a word as a truncated series");
  std::string magnus_word;
  unsigned magnus_p = 2, magnus_N = 0;
  int magnus_d = 0;
  magnus->add_option("word", magnus_word)->required();
  magnus->add_option("--p", magnus_p, "prime")->required();
  magnus->add_option("--d", magnus_d, "alphabet rank")->required();
  magnus->add_option("--N", magnus_N, "truncation order")->required();

  // deg
  auto* deg = app.add_subcommand("deg", "Zassenhaus degree of a word");
  std::string deg_word;
  unsigned deg_p = 2, deg_N = 0;
  int deg_d = 0;
  deg->add_option("word", deg_word)->required();
  deg->add_option("--p", deg_p, "prime")->required();
  deg->add_option("--N", deg_N, "truncation order")->required();
  deg->add_option("--d", deg_d, "alphabet rank (default: inferred)");

  // eq
  auto* eq = app.add_subcommand("eq", "equality in the finite p-group F/D_nF");
  std::string eq_u, eq_v;
  unsigned eq_p = 2, eq_n = 1;
  int eq_d = 0;
  eq->add_option("u", eq_u)->required();
  eq->add_option("v", eq_v)->required();
  eq->add_option("--p", eq_p, "prime")->required();
  eq->add_option("--n", eq_n, "filtration level")->required();
  eq->add_option("--d", eq_d, "alphabet rank (default: inferred)");

  // gs-check
  auto* gs_check = app.add_subcommand("gs-check", "Golod-Shafarevich certificate for a presentation");
  std::string gs_config;
  gs_check->add_option("--config", gs_config, "run configuration (JSON)")->required();

  // forge
  auto* forge = app.add_subcommand("forge", "staged forcing of a simple relation set");
  std::string forge_config, forge_resume;
  int forge_budget = -1;
  forge->add_option("--config", forge_config, "run configuration (JSON)")->required();
  forge->add_option("--resume", forge_resume, "checkpoint to resume from");
  forge->add_option("--budget", forge_budget, "override the configured stage budget");

  // density
  auto* density = app.add_subcommand("density", "sphere densities of a membership predicate");
  std::string density_config, density_csv_path;
  density->add_option("--config", density_config, "run configuration (JSON)")->required();
  density->add_option("--csv", density_csv_path, "write CSV here instead of stdout");

  // cogrowth
  auto* cogrowth = app.add_subcommand("cogrowth", "cogrowth profile |N cap S_k|^(1/k)");
  int cg_d = 2, cg_level = 0;
  unsigned cg_p = 2, cg_kmin = 1, cg_kmax = 8;
  bool cg_all = false, cg_identity = false;
  std::uint64_t cg_cap = kDefaultSphereCap;
  cogrowth->add_option("--d", cg_d, "alphabet rank")->required();
  cogrowth->add_option("--p", cg_p, "prime (for --level)");
  cogrowth->add_option("--level", cg_level, "kernel of F -> F/D_nF");
  cogrowth->add_flag("--all", cg_all, "N = all of F");
  cogrowth->add_flag("--identity", cg_identity, "N = {1}");
  cogrowth->add_option("--k-min", cg_kmin, "first sphere radius");
  cogrowth->add_option("--k-max", cg_kmax, "last sphere radius")->required();
  cogrowth->add_option("--cap", cg_cap, "sphere enumeration cap");

  // decide-coset
  auto* decide = app.add_subcommand("decide-coset", "budgeted coset membership semi-decision");
  int dc_d = 0;
  std::string dc_word;
  std::vector<std::string> dc_reps, dc_relators;
  std::uint64_t dc_budget = 10000;
  decide->add_option("--d", dc_d, "alphabet rank (default: inferred)");
  decide->add_option("--word", dc_word, "word to locate")->required();
  decide->add_option("--rep", dc_reps, "coset representatives (repeatable)")->required();
  decide->add_option("--relator", dc_relators, "relators generating N (repeatable)")->required();
  decide->add_option("--budget", dc_budget, "closure elements to consume before timeout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (show_version) {
    std::cout << "gsforge " << kVersion << " (config schema " << kConfigSchemaVersion << ")\n";
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitParse;
  }

  try {
    if (magnus->parsed()) return cmd_magnus(magnus_word, magnus_p, magnus_d, magnus_N);
    if (deg->parsed()) return cmd_deg(deg_word, deg_p, deg_d, deg_N);
    if (eq->parsed()) return cmd_eq(eq_u, eq_v, eq_p, eq_d, eq_n);
    if (gs_check->parsed()) return cmd_gs_check(gs_config);
    if (forge->parsed()) return cmd_forge(forge_config, forge_resume, forge_budget);
    if (density->parsed()) return cmd_density(density_config, density_csv_path);
    if (cogrowth->parsed())
      return cmd_cogrowth(cg_d, cg_p, cg_level, cg_all, cg_identity, cg_kmin, cg_kmax, cg_cap);
    if (decide->parsed())
      return cmd_decide_coset(dc_d, dc_word, dc_reps, dc_relators, dc_budget);
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
