#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "gsforge/enumerators.hpp"
#include "gsforge/gs.hpp"

namespace gsforge {

using json = nlohmann::ordered_json;

/// JSON value for a big index: plain number while it fits 2^53-1 (safe for
/// every JSON reader), decimal string beyond that.
json index_to_json(const Index& i);
Index index_from_json(const json& v);

json enumerator_to_json(const EnumeratorSpec& spec, const Alphabet& a);
/// `p` resolves the powers_of_p schedule base when the config omits it.
EnumeratorSpec enumerator_from_json(const json& v, const Alphabet& a, unsigned p);

json degree_to_json(const DegreeValue& deg);
DegreeValue degree_from_json(const json& v);

json certificate_to_json(const GsCertificate& cert);

/// Strict-walker helpers: reject unknown keys, require mandatory ones.
void require_object(const json& v, const std::string& where);
void reject_unknown_keys(const json& v, const std::vector<std::string>& allowed,
                         const std::string& where);
const json& require_key(const json& v, const std::string& key, const std::string& where);

}  // namespace gsforge
