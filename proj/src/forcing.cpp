#include "gsforge/forcing.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gsforge/serialize.hpp"

namespace gsforge {

namespace {

void validate_config(const ForcingConfig& config) {
  for (const Word& r : config.base_relators)
    if (r.is_identity()) throw MismatchError("base relators must be nonempty words");
  if (!(config.t0 > 0 && config.t0 < 1)) throw MismatchError("t0 must satisfy 0 < t0 < 1");
  if (!(config.epsilon > 0)) throw MismatchError("epsilon must be positive");
  if (config.k != compute_k(config.t0, config.epsilon))
    throw MismatchError("k does not match compute_k(t0, epsilon)");
  std::set<unsigned> seen;
  for (const auto& spec : config.family)
    if (!seen.insert(spec.e).second)
      throw MismatchError("duplicate requirement id e=" + std::to_string(spec.e));
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

unsigned degree_recording_truncation(unsigned e, std::uint64_t k) {
  const std::uint64_t deep = static_cast<std::uint64_t>(e) + k + 8;
  return static_cast<unsigned>(std::max<std::uint64_t>(deep, 16));
}

ForcingState run(const ForcingConfig& config, ForcingState state, const RelatorCallback& on_relator) {
  validate_config(config);
  for (const auto& spec : config.family) state.pairs_examined.emplace(spec.e, 0);

  // requirements scanned in increasing e
  std::vector<const EnumeratorSpec*> order;
  order.reserve(config.family.size());
  for (const auto& spec : config.family) order.push_back(&spec);
  std::sort(order.begin(), order.end(),
            [](const EnumeratorSpec* l, const EnumeratorSpec* r) { return l->e < r->e; });

  std::map<unsigned, SeriesContextPtr> level_ctx;  // n = e + k, cached across stages
  const auto ctx_for_level = [&](unsigned n) {
    auto it = level_ctx.find(n);
    if (it == level_ctx.end())
      it = level_ctx.emplace(n, make_context(config.p, config.alphabet.rank(), n)).first;
    return it->second;
  };

  for (unsigned s = state.next_stage; s <= config.stage_budget; ++s) {
    for (const EnumeratorSpec* spec : order) {
      if (spec->e >= s || state.satisfied.count(spec->e)) continue;
      const std::uint64_t level = spec->e + config.k;
      const StageSet set = enumerate_up_to(*spec, s, config.alphabet);
      for (const WordPair& pair : distinct_pairs(set)) {
        ++state.pairs_examined[spec->e];
        if (!equal_mod_dn(pair.u, pair.v, ctx_for_level(static_cast<unsigned>(level)))) continue;
        RelatorRecord rec;
        rec.relator = multiply(pair.u, inverse(pair.v));
        rec.e = spec->e;
        rec.x1 = pair.iu;
        rec.x2 = pair.iv;
        rec.truncation = degree_recording_truncation(spec->e, config.k);
        rec.degree = degree(rec.relator, make_context(config.p, config.alphabet.rank(), rec.truncation));
        rec.stage = s;
        state.satisfied.insert(spec->e);
        state.relators.push_back(rec);
        if (on_relator) on_relator(state.relators.back());
        break;
      }
    }
    state.next_stage = s + 1;
  }
  return state;
}

LReport verify_L(const ForcingState& state, std::uint64_t k, unsigned e_max) {
  LReport report;
  for (std::size_t i = 0; i < state.relators.size(); ++i) {
    const DegreeValue& deg = state.relators[i].degree;
    if (deg.kind == DegreeValue::Kind::at_least && deg.value <= e_max)
      report.unresolved.push_back({i, deg.value - 1});
  }
  for (unsigned e = 0; e <= e_max; ++e) {
    std::uint64_t count = 0;
    for (const auto& rec : state.relators)
      if (rec.degree.certainly_at_most(e)) ++count;
    const std::uint64_t bound = e > k ? e - k : 0;
    if (count > bound) report.violations.push_back({e, count, bound});
  }
  if (!report.violations.empty())
    report.status = LReport::Status::violated;
  else if (!report.unresolved.empty())
    report.status = LReport::Status::indeterminate;
  else
    report.status = LReport::Status::pass;
  return report;
}

MReport verify_M(const ForcingState& state, const ForcingConfig& config) {
  MReport report;
  for (const auto& spec : config.family) {
    if (!state.satisfied.count(spec.e)) {
      const auto it = state.pairs_examined.find(spec.e);
      report.pairs_examined[spec.e] = it == state.pairs_examined.end() ? 0 : it->second;
      continue;
    }
    const auto rec_it = std::find_if(state.relators.begin(), state.relators.end(),
                                     [&](const RelatorRecord& r) { return r.e == spec.e; });
    if (rec_it == state.relators.end()) {
      report.failures.push_back("e=" + std::to_string(spec.e) + " marked satisfied without a relator");
      continue;
    }
    const RelatorRecord& rec = *rec_it;
    const std::string tag = "e=" + std::to_string(spec.e);
    const StageSet set = enumerate_up_to(spec, rec.stage, config.alphabet);
    const auto has_index = [&](const Index& idx) {
      return std::find(set.indices.begin(), set.indices.end(), idx) != set.indices.end();
    };
    if (!has_index(rec.x1) || !has_index(rec.x2)) {
      report.failures.push_back(tag + ": recorded pair not in W_{e,s} at the recorded stage");
      continue;
    }
    if (rec.x1 == rec.x2) {
      report.failures.push_back(tag + ": recorded pair is not distinct");
      continue;
    }
    const Word u = index_to_word(rec.x1, config.alphabet);
    const Word v = index_to_word(rec.x2, config.alphabet);
    if (multiply(u, inverse(v)) != rec.relator) {
      report.failures.push_back(tag + ": relator does not equal u * v^-1");
      continue;
    }
    const unsigned level = static_cast<unsigned>(spec.e + config.k);
    if (!equal_mod_dn(u, v, level, config.p))
      report.failures.push_back(tag + ": recorded pair does not collide in F/D_" +
                                std::to_string(level) + "F");
  }
  return report;
}

GsPreservationReport certify_gs(const ForcingState& state, const ForcingConfig& config) {
  unsigned e_max = 0;
  for (const auto& spec : config.family) e_max = std::max(e_max, spec.e);
  const unsigned N = degree_recording_truncation(e_max, config.k);
  const SeriesContextPtr ctx = make_context(config.p, config.alphabet.rank(), N);

  std::vector<Word> extended = config.base_relators;
  for (const auto& rec : state.relators) extended.push_back(rec.relator);

  GsPreservationReport report;
  report.dhat_base = dhat(config.base_relators, config.p, config.alphabet.rank());
  report.dhat_extended = dhat(extended, config.p, config.alphabet.rank());
  report.H_base = evaluate_H(histogram(config.base_relators, ctx), report.dhat_base, config.t0);
  report.H_extended = evaluate_H(histogram(extended, ctx), report.dhat_extended, config.t0);
  report.tail = tail_bound(config.k, config.t0);
  report.preserved = report.H_extended <= report.H_base + report.tail;
  report.negative = report.H_extended < 0;
  return report;
}

std::string relator_log_line(const RelatorRecord& rec, const Alphabet& a) {
  std::ostringstream os;
  os << "{\"stage\":" << rec.stage << ",\"e\":" << rec.e;
  const auto put_index = [&](const char* key, const Index& idx) {
    os << ",\"" << key << "\":";
    const json v = index_to_json(idx);
    if (v.is_string())
      os << '"' << v.get<std::string>() << '"';
    else
      os << v.get<std::uint64_t>();
  };
  put_index("x1", rec.x1);
  put_index("x2", rec.x2);
  os << ",\"relator\":\"" << json_escape(format_word(rec.relator, a)) << "\"";
  os << ",\"degree\":";
  if (rec.degree.is_finite())
    os << rec.degree.value;
  else
    os << '"' << rec.degree.to_string() << '"';
  os << "}";
  return os.str();
}

namespace {

json config_fingerprint(const ForcingConfig& config) {
  json fp;
  fp["p"] = config.p;
  fp["d"] = config.alphabet.rank();
  fp["t0"] = format_rational(config.t0);
  fp["epsilon"] = format_rational(config.epsilon);
  fp["k"] = config.k;
  json relators = json::array();
  for (const Word& r : config.base_relators) relators.push_back(format_word(r, config.alphabet));
  fp["base_relators"] = std::move(relators);
  json family = json::array();
  for (const auto& spec : config.family) family.push_back(enumerator_to_json(spec, config.alphabet));
  fp["enumerators"] = std::move(family);
  return fp;
}

}  // namespace

void checkpoint_save(const ForcingState& state, const ForcingConfig& config,
                     const std::string& path) {
  json doc;
  doc["format"] = "gsforge-checkpoint";
  doc["version"] = 1;
  doc["config"] = config_fingerprint(config);
  json st;
  st["next_stage"] = state.next_stage;
  st["satisfied"] = json::array();
  for (unsigned e : state.satisfied) st["satisfied"].push_back(e);
  json examined = json::object();
  for (const auto& [e, n] : state.pairs_examined) examined[std::to_string(e)] = n;
  st["pairs_examined"] = std::move(examined);
  json relators = json::array();
  for (const auto& rec : state.relators) {
    json r;
    r["stage"] = rec.stage;
    r["e"] = rec.e;
    r["x1"] = index_to_json(rec.x1);
    r["x2"] = index_to_json(rec.x2);
    r["relator"] = format_word(rec.relator, config.alphabet);
    r["degree"] = degree_to_json(rec.degree);
    r["truncation"] = rec.truncation;
    relators.push_back(std::move(r));
  }
  st["relators"] = std::move(relators);
  doc["state"] = std::move(st);

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CheckpointError("cannot write checkpoint '" + path + "'");
  out << doc.dump(2) << '\n';
}

ForcingState checkpoint_load(const std::string& path, const ForcingConfig& config) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read checkpoint '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw CheckpointError("corrupt checkpoint '" + path + "': " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "gsforge-checkpoint")
    throw CheckpointError("'" + path + "' is not a forcing checkpoint");
  if (doc.value("version", 0) != 1)
    throw CheckpointError("unsupported checkpoint version");
  if (doc.at("config") != config_fingerprint(config))
    throw CheckpointError("checkpoint belongs to a different configuration");

  try {
    const json& st = doc.at("state");
    ForcingState state;
    state.next_stage = st.at("next_stage").get<unsigned>();
    for (const auto& e : st.at("satisfied")) state.satisfied.insert(e.get<unsigned>());
    for (const auto& [key, n] : st.at("pairs_examined").items())
      state.pairs_examined[static_cast<unsigned>(std::stoul(key))] = n.get<std::uint64_t>();
    for (const auto& r : st.at("relators")) {
      RelatorRecord rec;
      rec.stage = r.at("stage").get<unsigned>();
      rec.e = r.at("e").get<unsigned>();
      rec.x1 = index_from_json(r.at("x1"));
      rec.x2 = index_from_json(r.at("x2"));
      rec.relator = parse_word(r.at("relator").get<std::string>(), config.alphabet);
      rec.degree = degree_from_json(r.at("degree"));
      rec.truncation = r.at("truncation").get<unsigned>();
      state.relators.push_back(std::move(rec));
    }
    return state;
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError("corrupt checkpoint '" + path + "': " + e.what());
  }
}

}  // namespace gsforge
