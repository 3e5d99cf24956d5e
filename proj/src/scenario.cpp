#include "medflow/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "medflow/observer.hpp"
#include "medflow/parser.hpp"

namespace medflow {

namespace fs = std::filesystem;
using nlohmann::json;

const ProgramEntry& Scenario::program(const std::string& name) const {
  const std::string& key = name.empty() ? default_program : name;
  auto it = programs.find(key);
  if (it == programs.end()) throw ScenarioError("unknown program '" + key + "'");
  return it->second;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ScenarioError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Value to_value(const json& j, const std::string& where, const std::string& attr = "") {
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_string()) {
    Value v;
    try {
      v = parse_value(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ScenarioError(where + ": " + e.what());
    }
    if (!attr.empty() && v.is_atom() && v.as_atom().name.find(':') == std::string::npos)
      v = Value::atom(attr + ":" + v.as_atom().name);
    return v;
  }
  if (j.is_array()) {
    Tuple t;
    for (std::size_t i = 0; i < j.size(); ++i) t.push_back(to_value(j[i], where + "[" + std::to_string(i) + "]"));
    return Value(t);
  }
  throw ScenarioError(where + ": unsupported value " + j.dump());
}

State to_state(const Schema& s, const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_state(s, j.get<std::string>());
    if (!j.is_array()) throw ScenarioError("state must be a string or an array");
    std::vector<json> items(j.begin(), j.end());
    if (items.size() == s.attributes.size() + 1) items.erase(items.begin());
    if (items.size() != s.attributes.size()) throw ScenarioError("state has wrong arity");
    State st;
    for (std::size_t i = 0; i < items.size(); ++i) {
      Value v = to_value(items[i], where, s.attributes[i].name);
      if (!s.in_domain(s.attributes[i].name, v)) throw ScenarioError(v.str() + " not in dom(" + s.attributes[i].name + ")");
      st.values.push_back(v);
    }
    return st;
  } catch (const ScenarioError& e) {
    throw ScenarioError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw ScenarioError(where + ": " + e.what());
  }
}

void add_nodes(Hierarchy& h, const json& j, int parent, const std::string& where) {
  if (!j.is_object() || !j.contains("node")) {
    int n = h.add(to_value(j, where), parent);
    (void)n;
    return;
  }
  int n;
  try {
    n = h.add(to_value(j["node"], where + ".node"), parent);
  } catch (const HierarchyError& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  if (j.contains("children")) {
    const auto& ch = j["children"];
    for (std::size_t i = 0; i < ch.size(); ++i) add_nodes(h, ch[i], n, where + ".children[" + std::to_string(i) + "]");
  }
}

Hierarchy load_hierarchy(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("tuple")) {
    std::vector<Hierarchy> parts;
    const auto& t = j["tuple"];
    for (std::size_t i = 0; i < t.size(); ++i) parts.push_back(load_hierarchy(t[i], where + ".tuple[" + std::to_string(i) + "]"));
    return Hierarchy::product(parts);
  }
  Hierarchy h;
  add_nodes(h, j, -1, where);
  return h;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  Scenario sc;
  sc.path = path;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  const fs::path dir = fs::path(path).parent_path();

  if (!j.contains("schema")) throw ScenarioError("schema: missing");
  const auto& js = j["schema"];
  if (js.contains("key")) sc.schema.key_attribute = js["key"].get<std::string>();
  if (js.contains("key_value")) sc.schema.key_value = to_value(js["key_value"], "schema.key_value");
  if (!js.contains("attributes")) throw ScenarioError("schema.attributes: missing");
  for (std::size_t i = 0; i < js["attributes"].size(); ++i) {
    const auto& ja = js["attributes"][i];
    std::string where = "schema.attributes[" + std::to_string(i) + "]";
    Attribute a;
    a.name = ja.at("name").get<std::string>();
    for (std::size_t k = 0; k < ja.at("domain").size(); ++k)
      a.domain.push_back(to_value(ja["domain"][k], where + ".domain[" + std::to_string(k) + "]", a.name));
    sc.schema.attributes.push_back(std::move(a));
  }
  try {
    sc.schema.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("schema: ") + e.what());
  }

  if (j.contains("state_space")) {
    std::vector<State> states;
    for (std::size_t i = 0; i < j["state_space"].size(); ++i)
      states.push_back(to_state(sc.schema, j["state_space"][i], "state_space[" + std::to_string(i) + "]"));
    try {
      sc.space = StateSpace(std::move(states));
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("state_space: ") + e.what());
    }
  } else {
    sc.space = enumerate_states(sc.schema);
  }
  if (sc.space.size() == 0) throw ScenarioError("state_space: empty");

  if (j.contains("policy")) {
    for (std::size_t i = 0; i < j["policy"].size(); ++i) {
      const auto& jp = j["policy"][i];
      std::string where = "policy[" + std::to_string(i) + "]";
      Secret s;
      s.label = jp.value("label", "psi" + std::to_string(i + 1));
      s.states = sc.space.none();
      if (jp.contains("where")) {
        std::vector<std::pair<int, Value>> cond;
        for (const auto& [attr, v] : jp["where"].items()) {
          int k = sc.schema.index_of(attr);
          if (k < 0) throw ScenarioError(where + ".where." + attr + ": unknown attribute");
          Value x = to_value(v, where + ".where." + attr, attr);
          if (!sc.schema.in_domain(attr, x)) throw ScenarioError(where + ".where." + attr + ": " + x.str() + " not in domain");
          cond.emplace_back(k, x);
        }
        for (std::size_t n = 0; n < sc.space.size(); ++n) {
          bool ok = true;
          for (const auto& [k, x] : cond) ok = ok && sc.space[n].values[static_cast<std::size_t>(k)] == x;
          if (ok) s.states.set(n);
        }
      } else if (jp.contains("states")) {
        for (std::size_t k = 0; k < jp["states"].size(); ++k) {
          State st = to_state(sc.schema, jp["states"][k], where + ".states[" + std::to_string(k) + "]");
          int n = sc.space.index_of(st);
          if (n < 0) throw ScenarioError(where + ".states[" + std::to_string(k) + "]: not in the state space");
          s.states.set(static_cast<std::size_t>(n));
        }
      } else {
        throw ScenarioError(where + ": needs 'where' or 'states'");
      }
      if (s.states.all()) throw ScenarioError(where + ": secret covers the whole state space");
      sc.policy.secrets.push_back(std::move(s));
    }
  }

  if (j.contains("hierarchy")) {
    try {
      sc.hierarchy = load_hierarchy(j["hierarchy"], "hierarchy");
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("hierarchy: ") + e.what());
    }
  } else {
    sc.hierarchy.add(Value::atom("top"), -1);
  }

  if (!j.contains("programs") || j["programs"].empty()) throw ScenarioError("programs: missing");
  for (const auto& [name, jp] : j["programs"].items()) {
    std::string where = "programs." + name;
    ProgramEntry e;
    e.name = name;
    e.path = (dir / jp.at("source").get<std::string>()).string();
    e.source = read_file(e.path);
    if (jp.contains("args"))
      for (std::size_t k = 0; k < jp["args"].size(); ++k)
        e.args.push_back(to_value(jp["args"][k], where + ".args[" + std::to_string(k) + "]"));
    try {
      e.program = parse_program(e.source);
      validate_program(e.program, sc.schema);
    } catch (const std::exception& ex) {
      throw ScenarioError(where + ": " + ex.what());
    }
    if (e.args.size() != e.program.params.size()) throw ScenarioError(where + ".args: wrong number of arguments");
    sc.programs.emplace(name, std::move(e));
  }
  sc.default_program = j.value("default_program", sc.programs.begin()->first);
  if (!sc.programs.count(sc.default_program)) throw ScenarioError("default_program: unknown program");
  sc.partner = j.value("partner", std::string("partner"));
  return sc;
}

std::shared_ptr<System> build_system(const Scenario& sc, const std::string& program,
                                     std::optional<StateSet> initial_view) {
  const auto& pe = sc.program(program);
  // Explore uncensored runs to collect the declassifiable range.
  auto probe = System::make(sc.schema, sc.space, sc.policy, sc.hierarchy, pe.program, pe.args, initial_view);
  RunOptions raw;
  raw.censor = false;
  Hierarchy h = sc.hierarchy;
  for (const auto& r : simulate_all(*probe, raw))
    for (const auto& s : r.steps) {
      if (s.mcase != 3) continue;
      const auto& src = s.active->source;
      h.attach_under_root(s.st.mem.at(src));
      auto it = s.st.tracker.pi->find(src);
      if (it != s.st.tracker.pi->end())
        for (const auto& w : it->second.domain()) h.attach_under_root(w);
    }
  return System::make(sc.schema, sc.space, sc.policy, std::move(h), pe.program, pe.args, std::move(initial_view));
}

std::string view_store_path(const Scenario& sc) { return sc.path + "." + sc.partner + ".view"; }

std::optional<StateSet> load_view(const Scenario& sc) {
  std::ifstream in(view_store_path(sc));
  if (!in) return std::nullopt;
  StateSet v = sc.space.none();
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    State st;
    try {
      st = parse_state(sc.schema, line);
    } catch (const std::exception& e) {
      throw ScenarioError(view_store_path(sc) + ":" + std::to_string(ln) + ": " + e.what());
    }
    int n = sc.space.index_of(st);
    if (n < 0) throw ScenarioError(view_store_path(sc) + ":" + std::to_string(ln) + ": state outside the space");
    v.set(static_cast<std::size_t>(n));
  }
  return v;
}

void save_view(const Scenario& sc, const StateSet& view) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < sc.space.size(); ++i)
    if (view.test(i)) lines.push_back(state_str(sc.schema, sc.space[i]));
  std::sort(lines.begin(), lines.end());
  std::ofstream out(view_store_path(sc));
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace medflow
