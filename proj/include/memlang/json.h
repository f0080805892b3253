// JSON views of graphs, values, configurations and distributions.
// Probabilities are "p/q" strings; arrays are sorted so output is stable.

#ifndef MEMLANG_JSON_H_
#define MEMLANG_JSON_H_

#include <json.hpp>

#include "memlang/bigraph.h"
#include "memlang/denot.h"
#include "memlang/opsem.h"
#include "memlang/value.h"

namespace memlang {

using Json = nlohmann::ordered_json;

// {"left": ["fun0"], "right": ["atom0"], "edges": [["fun0", "atom0", "true"]]}
Json to_json(const Bigraph& g);
Json to_json(const EnvValue& v);
Json to_json(const Env& env);
Json to_json(const Configuration& c);
Json to_json(const Observation& o);
Json to_json(const CoendClass& c);

// Lists of {... , "prob": "p/q"} ordered by the distribution's key order.
Json to_json(const ClassDist& d);
Json to_json(const ObservationDist& d);
Json to_json(const ConfigDist& d);

Json trace_to_json(const std::vector<Configuration>& trace);

std::string label_name(FunLabel f);
std::string label_name(AtomLabel a);

}  // namespace memlang

#endif  // MEMLANG_JSON_H_
