#include "gsforge/serialize.hpp"

#include <algorithm>

namespace gsforge {

namespace {
const Index kJsonSafeMax = (Index(1) << 53) - 1;
}

json index_to_json(const Index& i) {
  if (i <= kJsonSafeMax) return static_cast<std::uint64_t>(i);
  return i.str();
}

Index index_from_json(const json& v) {
  if (v.is_number_unsigned()) return Index(v.get<std::uint64_t>());
  if (v.is_string()) return Index(v.get<std::string>());
  throw ParseError("expected an index (number or decimal string)");
}

void require_object(const json& v, const std::string& where) {
  if (!v.is_object()) throw ParseError(where + ": expected an object");
}

void reject_unknown_keys(const json& v, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : v.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError(where + ": unknown key '" + key + "'");
  }
}

const json& require_key(const json& v, const std::string& key, const std::string& where) {
  const auto it = v.find(key);
  if (it == v.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

json enumerator_to_json(const EnumeratorSpec& spec, const Alphabet& a) {
  json out;
  out["e"] = spec.e;
  if (std::holds_alternative<AllWordsFamily>(spec.family)) {
    out["kind"] = "all_words";
  } else if (const auto* gp = std::get_if<GeneratorPowersFamily>(&spec.family)) {
    out["kind"] = "generator_powers";
    out["generator"] = gp->generator;
    out["schedule"] = gp->schedule == PowerSchedule::all ? "all" : "powers_of_p";
  } else if (const auto* ia = std::get_if<IndexArithmeticFamily>(&spec.family)) {
    out["kind"] = "index_arithmetic";
    out["start"] = index_to_json(ia->start);
    out["step"] = index_to_json(ia->step);
  } else if (const auto* el = std::get_if<ExplicitListFamily>(&spec.family)) {
    out["kind"] = "explicit_list";
    json words = json::array();
    for (const Word& w : el->words) words.push_back(format_word(w, a));
    out["words"] = std::move(words);
  } else if (const auto* rm = std::get_if<RegisterMachineFamily>(&spec.family)) {
    out["kind"] = "register_machine";
    out["program"] = rm->program.source();
  }
  return out;
}

EnumeratorSpec enumerator_from_json(const json& v, const Alphabet& a, unsigned p) {
  require_object(v, "enumerator");
  const std::string kind = require_key(v, "kind", "enumerator").get<std::string>();
  EnumeratorSpec spec;
  spec.e = require_key(v, "e", "enumerator").get<unsigned>();
  if (kind == "all_words") {
    reject_unknown_keys(v, {"e", "kind"}, "enumerator(all_words)");
    spec.family = AllWordsFamily{};
  } else if (kind == "generator_powers") {
    reject_unknown_keys(v, {"e", "kind", "generator", "schedule"}, "enumerator(generator_powers)");
    GeneratorPowersFamily fam;
    fam.generator = require_key(v, "generator", "enumerator").get<int>();
    const std::string sched = require_key(v, "schedule", "enumerator").get<std::string>();
    if (sched == "all") {
      fam.schedule = PowerSchedule::all;
    } else if (sched == "powers_of_p") {
      fam.schedule = PowerSchedule::powers_of_p;
      fam.base = p;
    } else {
      throw ParseError("enumerator: unknown schedule '" + sched + "'");
    }
    spec.family = fam;
  } else if (kind == "index_arithmetic") {
    reject_unknown_keys(v, {"e", "kind", "start", "step"}, "enumerator(index_arithmetic)");
    IndexArithmeticFamily fam;
    fam.start = index_from_json(require_key(v, "start", "enumerator"));
    fam.step = index_from_json(require_key(v, "step", "enumerator"));
    spec.family = fam;
  } else if (kind == "explicit_list") {
    reject_unknown_keys(v, {"e", "kind", "words"}, "enumerator(explicit_list)");
    ExplicitListFamily fam;
    for (const auto& w : require_key(v, "words", "enumerator"))
      fam.words.push_back(parse_word(w.get<std::string>(), a));
    spec.family = fam;
  } else if (kind == "register_machine") {
    reject_unknown_keys(v, {"e", "kind", "program"}, "enumerator(register_machine)");
    RegisterMachineFamily fam{
        RegisterProgram::parse(require_key(v, "program", "enumerator").get<std::string>())};
    spec.family = fam;
  } else {
    throw ParseError("enumerator: unknown kind '" + kind + "'");
  }
  return spec;
}

json degree_to_json(const DegreeValue& deg) {
  switch (deg.kind) {
    case DegreeValue::Kind::finite: return deg.value;
    case DegreeValue::Kind::at_least: return ">=" + std::to_string(deg.value);
    case DegreeValue::Kind::infinite: return "inf";
  }
  throw Error("unreachable");
}

DegreeValue degree_from_json(const json& v) {
  if (v.is_number_unsigned()) return DegreeValue::finite(v.get<unsigned>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return DegreeValue::infinite();
    if (s.rfind(">=", 0) == 0) return DegreeValue::at_least(static_cast<unsigned>(std::stoul(s.substr(2))));
  }
  throw ParseError("malformed degree value");
}

json certificate_to_json(const GsCertificate& cert) {
  json out;
  out["t0"] = format_rational(cert.t0);
  out["H"] = format_rational(cert.H_value);
  out["epsilon"] = format_rational(cert.epsilon);
  out["k"] = cert.k;
  return out;
}

}  // namespace gsforge
