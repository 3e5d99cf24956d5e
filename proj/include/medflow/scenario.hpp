#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "medflow/mediator.hpp"

namespace medflow {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProgramEntry {
  std::string name;
  std::string path;
  std::string source;
  std::vector<Value> args;
  Program program;
};

struct Scenario {
  std::string path;
  Schema schema;
  StateSpace space;
  Policy policy;
  Hierarchy hierarchy;
  std::map<std::string, ProgramEntry> programs;
  std::string default_program;
  std::string partner = "partner";

  const ProgramEntry& program(const std::string& name = "") const;
};

// Parses and validates everything except typing, which build_system enforces.
Scenario load_scenario(const std::string& path);

// Values the program can declassify that the declared hierarchy lacks are
// attached under its root before the system is built.
std::shared_ptr<System> build_system(const Scenario& sc, const std::string& program = "",
                                     std::optional<StateSet> initial_view = std::nullopt);

// Previous view store: one sorted state per line next to the scenario file.
std::string view_store_path(const Scenario& sc);
std::optional<StateSet> load_view(const Scenario& sc);
void save_view(const Scenario& sc, const StateSet& view);

}  // namespace medflow
