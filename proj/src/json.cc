#include "memlang/json.h"

namespace memlang {

std::string label_name(FunLabel f) { return "fun" + std::to_string(f.id); }
std::string label_name(AtomLabel a) { return "atom" + std::to_string(a.id); }

Json to_json(const Bigraph& g) {
  Json out;
  out["left"] = Json::array();
  out["right"] = Json::array();
  out["edges"] = Json::array();
  for (FunLabel f : g.left()) out["left"].push_back(label_name(f));
  for (AtomLabel a : g.right()) out["right"].push_back(label_name(a));
  for (FunLabel f : g.left()) {
    for (AtomLabel a : g.right()) {
      out["edges"].push_back(Json::array({label_name(f), label_name(a), edge_name(g.edge(f, a))}));
    }
  }
  return out;
}

Json to_json(const EnvValue& v) {
  switch (v.kind()) {
    case EnvValue::Kind::kBool:
      return v.as_bool();
    case EnvValue::Kind::kFun:
      return label_name(v.as_fun());
    case EnvValue::Kind::kAtom:
      return label_name(v.as_atom());
    case EnvValue::Kind::kPair:
      return Json::array({to_json(v.fst()), to_json(v.snd())});
  }
  return nullptr;
}

Json to_json(const Env& env) {
  Json out = Json::object();
  for (const auto& [x, v] : env) out[x] = to_json(v);
  return out;
}

Json to_json(const Configuration& c) {
  Json out;
  out["env"] = to_json(c.env);
  out["term"] = pretty(c.term);
  out["graph"] = to_json(c.graph);
  Json closures = Json::object();
  for (const auto& [f, cl] : c.closures) {
    closures[label_name(f)] = {{"binder", cl.binder},
                               {"body", pretty(*cl.body)},
                               {"env", to_json(cl.captured)}};
  }
  out["closures"] = closures;
  return out;
}

Json to_json(const Observation& o) {
  Json out;
  out["value"] = to_json(o.value);
  out["graph"] = to_json(o.graph);
  Json closures = Json::object();
  for (const auto& [f, cl] : o.closures) {
    closures[label_name(f)] = {{"body", cl.body}, {"env", to_json(cl.env)}};
  }
  out["closures"] = closures;
  return out;
}

Json to_json(const CoendClass& c) {
  Json out;
  out["value"] = to_json(c.value);
  out["graph"] = to_json(c.world);
  Json biases = Json::object();
  for (const auto& [f, p] : c.fresh_biases) biases[label_name(f)] = rat_to_fraction(p);
  out["biases"] = biases;
  return out;
}

namespace {

template <typename D>
Json dist_json(const D& d) {
  Json out = Json::array();
  for (const auto& [x, p] : d.weights()) {
    Json item = to_json(x);
    item["prob"] = rat_to_fraction(p);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

Json to_json(const ClassDist& d) { return dist_json(d); }
Json to_json(const ObservationDist& d) { return dist_json(d); }
Json to_json(const ConfigDist& d) { return dist_json(d); }

Json trace_to_json(const std::vector<Configuration>& trace) {
  Json out = Json::array();
  for (const auto& c : trace) out.push_back(to_json(c));
  return out;
}

}  // namespace memlang
