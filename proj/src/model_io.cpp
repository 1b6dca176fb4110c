// Copyright 2026 The rmdpq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmdpq/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace rmdpq {

namespace {

using nlohmann::json;  // std::map-backed: keys always serialized sorted

json family_to_json(const UncertaintyFamily& family) {
  json out;
  if (const auto* ball = std::get_if<LBall>(&family)) {
    out["kind"] = "lball";
    if (ball->norm.infinite)
      out["d"] = "inf";
    else
      out["d"] = ball->norm.order;
    out["radius"] = ball->radius.str();
  } else if (const auto* poly = std::get_if<Polytope>(&family)) {
    out["kind"] = "polytope";
    json rows = json::array();
    for (const auto& row : poly->rows) {
      json r;
      json coeffs = json::array();
      for (const auto& c : row.coeffs) coeffs.push_back(c.str());
      r["coeffs"] = std::move(coeffs);
      r["rel"] = row.rel == Relation::kEq ? "=" : "<=";
      r["rhs"] = row.rhs.str();
      rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
  } else {
    const auto& menu = std::get<FiniteMenu>(family);
    out["kind"] = "menu";
    json members = json::array();
    for (const auto& member : menu.members) {
      json m = json::array();
      for (const auto& v : member) m.push_back(v.str());
      members.push_back(std::move(m));
    }
    out["members"] = std::move(members);
  }
  return out;
}

UncertaintyFamily family_from_json(const json& in) {
  if (!in.is_object() || !in.contains("kind"))
    throw SchemaError("family without kind");
  const std::string kind = in.at("kind").get<std::string>();
  if (kind == "lball") {
    LBall ball;
    if (!in.contains("d") || !in.contains("radius"))
      throw SchemaError("lball family missing d or radius");
    if (in.at("d").is_string()) {
      if (in.at("d").get<std::string>() != "inf")
        throw SchemaError("lball d must be a positive integer or \"inf\"");
      ball.norm = LNorm::inf();
    } else {
      ball.norm = LNorm::p(in.at("d").get<unsigned>());
    }
    ball.radius = Rational::parse(in.at("radius").get<std::string>());
    return ball;
  }
  if (kind == "polytope") {
    Polytope poly;
    for (const auto& r : in.at("rows")) {
      PolytopeRow row;
      for (const auto& c : r.at("coeffs"))
        row.coeffs.push_back(Rational::parse(c.get<std::string>()));
      const std::string rel = r.at("rel").get<std::string>();
      if (rel == "=")
        row.rel = Relation::kEq;
      else if (rel == "<=")
        row.rel = Relation::kLe;
      else
        throw SchemaError("polytope row relation must be \"<=\" or \"=\"");
      row.rhs = Rational::parse(r.at("rhs").get<std::string>());
      poly.rows.push_back(std::move(row));
    }
    return poly;
  }
  if (kind == "menu") {
    FiniteMenu menu;
    for (const auto& m : in.at("members")) {
      std::vector<Rational> member;
      for (const auto& v : m) member.push_back(Rational::parse(v.get<std::string>()));
      menu.members.push_back(std::move(member));
    }
    return menu;
  }
  throw SchemaError("unknown family tag: '" + kind + "'");
}

}  // namespace

void save_model(const Rmdp& model, std::ostream& out) {
  // All states are written so that successor domains of sub-models stay
  // resolvable; removed states are listed under "dead" and carry no menus.
  json doc;
  doc["schema"] = "rmdpq-1";
  json states = json::array();
  for (StateId s = 0; s < model.n_states(); ++s)
    states.push_back(model.state_names[s]);
  doc["states"] = std::move(states);

  json dead = json::array();
  for (StateId s = 0; s < model.n_states(); ++s)
    if (!model.alive[s]) dead.push_back(model.state_names[s]);
  if (!dead.empty()) doc["dead"] = std::move(dead);

  json labels = json::object();
  for (const auto& [label, ids] : model.labels) {
    json members = json::array();
    for (StateId s : ids)
      if (model.is_live(s)) members.push_back(model.state_names[s]);
    labels[label] = std::move(members);
  }
  doc["labels"] = std::move(labels);

  if (model.priorities) {
    json prios = json::object();
    for (StateId s = 0; s < model.n_states(); ++s)
      if (model.alive[s])
        prios[model.state_names[s]] = model.priorities->value[s];
    doc["priorities"] = std::move(prios);
  }

  json transitions = json::array();
  for (StateId s = 0; s < model.n_states(); ++s) {
    json actions = json::array();
    if (!model.alive[s]) {
      transitions.push_back(std::move(actions));
      continue;
    }
    for (const auto& action : model.menus[s]) {
      if (!action.alive) continue;
      json a;
      a["action"] = action.name;
      json succ = json::array();
      for (StateId t : action.entry.tmpl.successors)
        succ.push_back(model.state_names[t]);
      a["successors"] = std::move(succ);
      json center = json::array();
      for (const auto& p : action.entry.tmpl.center) center.push_back(p.str());
      a["center"] = std::move(center);
      a["family"] = family_to_json(action.entry.family);
      a["supportRestricted"] = action.entry.support_restricted;
      json face = json::array();
      for (StateId t : action.face) face.push_back(model.state_names[t]);
      a["face"] = std::move(face);
      actions.push_back(std::move(a));
    }
    transitions.push_back(std::move(actions));
  }
  doc["transitions"] = std::move(transitions);

  out << doc.dump(2) << "\n";
}

Rmdp load_model(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("schema") || doc.at("schema").get<std::string>() != "rmdpq-1")
      throw SchemaError("unsupported schema (want \"rmdpq-1\")");

    Rmdp model;
    std::map<std::string, StateId> by_name;
    for (const auto& name : doc.at("states")) {
      const std::string n = name.get<std::string>();
      if (by_name.count(n)) throw SchemaError("duplicate state name '" + n + "'");
      by_name[n] = static_cast<StateId>(model.state_names.size());
      model.state_names.push_back(n);
      model.alive.push_back(true);
      model.menus.emplace_back();
    }
    const auto resolve = [&](const std::string& name) -> StateId {
      const auto it = by_name.find(name);
      if (it == by_name.end())
        throw SchemaError("unknown state name '" + name + "'");
      return it->second;
    };

    if (doc.contains("dead")) {
      for (const auto& name : doc.at("dead"))
        model.alive[resolve(name.get<std::string>())] = false;
    }

    if (doc.contains("labels")) {
      for (const auto& [label, members] : doc.at("labels").items()) {
        auto& ids = model.labels[label];
        for (const auto& name : members) ids.push_back(resolve(name.get<std::string>()));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      }
    }

    if (doc.contains("priorities")) {
      PriorityFunction pf;
      pf.value.assign(model.n_states(), 0);
      for (const auto& [name, value] : doc.at("priorities").items()) {
        pf.value[resolve(name)] = value.get<int>();
        pf.declared_max = std::max(pf.declared_max, value.get<int>());
      }
      model.priorities = std::move(pf);
    }

    const auto& transitions = doc.at("transitions");
    if (transitions.size() != model.n_states())
      throw SchemaError("transitions array length mismatch");
    for (StateId s = 0; s < model.n_states(); ++s) {
      for (const auto& a : transitions.at(s)) {
        ActionEntry action;
        action.name = a.at("action").get<std::string>();
        if (!a.contains("center")) throw SchemaError("action missing center");
        for (const auto& name : a.at("successors"))
          action.entry.tmpl.successors.push_back(resolve(name.get<std::string>()));
        for (const auto& v : a.at("center"))
          action.entry.tmpl.center.push_back(Rational::parse(v.get<std::string>()));
        action.entry.family = family_from_json(a.at("family"));
        action.entry.support_restricted = a.value("supportRestricted", false);
        if (a.contains("face")) {
          for (const auto& name : a.at("face"))
            action.face.push_back(resolve(name.get<std::string>()));
          std::sort(action.face.begin(), action.face.end());
        } else {
          action.face = action.entry.tmpl.successors;
          std::sort(action.face.begin(), action.face.end());
        }
        action.alive = true;
        model.menus[s].push_back(std::move(action));
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed model document: ") + e.what());
  }
}

void save_model_file(const Rmdp& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_model(model, out);
}

Rmdp load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return load_model(in);
}

namespace {

struct TraRow {
  std::size_t src;
  std::string action;
  std::size_t dst;
  Rational prob;
};

}  // namespace

Rmdp ingest_explicit(std::istream& tra, std::istream& lab, const LNorm& norm,
                     const Rational& radius, bool support_restricted) {
  std::vector<TraRow> rows;
  std::size_t max_state = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(tra, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string src, action, dst, prob;
    if (!(ls >> src)) continue;          // blank line
    if (src.rfind('#', 0) == 0) continue;  // comment
    if (!(ls >> action >> dst >> prob))
      throw ParseError("tra line " + std::to_string(line_no) +
                       ": expected 'src action dst prob'");
    TraRow row;
    try {
      row.src = std::stoul(src);
      row.dst = std::stoul(dst);
    } catch (const std::exception&) {
      throw ParseError("tra line " + std::to_string(line_no) +
                       ": state ids must be non-negative integers");
    }
    row.action = action;
    try {
      row.prob = Rational::parse(prob);
    } catch (const std::exception&) {
      throw ParseError("tra line " + std::to_string(line_no) +
                       ": malformed probability '" + prob + "'");
    }
    max_state = std::max({max_state, row.src, row.dst});
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("tra file has no transitions");

  RmdpBuilder builder;
  for (std::size_t s = 0; s <= max_state; ++s)
    builder.add_state(std::to_string(s));

  // Group by (src, action) in order of first appearance.
  std::map<std::pair<std::size_t, std::string>, std::size_t> group_of;
  std::vector<std::pair<std::size_t, std::string>> order;
  std::vector<std::vector<const TraRow*>> groups;
  for (const auto& row : rows) {
    const auto key = std::make_pair(row.src, row.action);
    const auto it = group_of.find(key);
    if (it == group_of.end()) {
      group_of[key] = groups.size();
      order.push_back(key);
      groups.emplace_back();
    }
    groups[group_of[key]].push_back(&row);
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    TransitionTemplate tmpl;
    Rational sum(0);
    for (const TraRow* row : groups[g]) {
      const StateId dst = static_cast<StateId>(row->dst);
      const auto it = std::find(tmpl.successors.begin(), tmpl.successors.end(), dst);
      if (it != tmpl.successors.end()) {
        tmpl.center[static_cast<std::size_t>(it - tmpl.successors.begin())] += row->prob;
      } else {
        tmpl.successors.push_back(dst);
        tmpl.center.push_back(row->prob);
      }
      sum += row->prob;
    }
    if (sum != Rational(1))
      throw ParseError("probabilities of state " + std::to_string(order[g].first) +
                       " action '" + order[g].second + "' sum to " + sum.str() +
                       ", not 1");
    builder.add_action(static_cast<StateId>(order[g].first), order[g].second,
                       std::move(tmpl), LBall{norm, radius}, support_restricted);
  }

  Rmdp model = builder.build();

  line_no = 0;
  while (std::getline(lab, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string state, label;
    if (!(ls >> state)) continue;
    if (state.rfind('#', 0) == 0) continue;
    if (!(ls >> label))
      throw ParseError("lab line " + std::to_string(line_no) +
                       ": expected 'state label'");
    std::size_t id = 0;
    try {
      id = std::stoul(state);
    } catch (const std::exception&) {
      throw ParseError("lab line " + std::to_string(line_no) +
                       ": state ids must be non-negative integers");
    }
    if (id > max_state)
      throw ParseError("lab line " + std::to_string(line_no) +
                       ": unknown state " + state);
    auto& ids = model.labels[label];
    if (std::find(ids.begin(), ids.end(), static_cast<StateId>(id)) == ids.end()) {
      ids.push_back(static_cast<StateId>(id));
      std::sort(ids.begin(), ids.end());
    }
  }
  return model;
}

void write_tra(const Rmdp& model, std::ostream& out) {
  for (StateId s = 0; s < model.n_states(); ++s) {
    if (!model.alive[s]) continue;
    for (const auto& action : model.menus[s]) {
      if (!action.alive) continue;
      for (std::size_t i = 0; i < action.entry.tmpl.successors.size(); ++i) {
        out << s << " " << action.name << " "
            << action.entry.tmpl.successors[i] << " "
            << action.entry.tmpl.center[i].str() << "\n";
      }
    }
  }
}

void write_lab(const Rmdp& model, std::ostream& out) {
  for (const auto& [label, ids] : model.labels)
    for (StateId s : ids)
      if (model.is_live(s)) out << s << " " << label << "\n";
}

}  // namespace rmdpq
