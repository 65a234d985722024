#pragma once

#include <map>

#include "psf/ast.hpp"
#include "psf/core.hpp"

namespace psf {

struct ResolvedDef {
  std::string name;
  std::vector<std::string> formals;
  Tm body = nullptr;          // formals appear as variables
  std::string origin_module;  // instantiated module the definition came from
  SourcePos pos;
};

// One global namespace produced by inlining the import closure of a root
// module. Atom and data-constant namespaces are separate, matching the
// specification language.
struct FlatSpec {
  std::string root_module;
  std::string root_process;

  // Identity for the enabled() memo table. Fresh per construction; copies
  // share it, so after mutating a copy call bump_cache_id().
  uint64_t cache_id = next_cache_id();

  std::map<std::string, FunctionDecl> constants;
  std::map<std::string, AtomDecl> atoms;
  std::map<std::pair<std::string, int>, ResolvedDef> processes;

  static uint64_t next_cache_id();
  void bump_cache_id() { cache_id = next_cache_id(); }

  const ResolvedDef* find_process(const std::string& name, int arity) const {
    auto it = processes.find({name, arity});
    return it == processes.end() ? nullptr : &it->second;
  }
  // Any-arity lookup, preferring arity 0 (entry definitions).
  const ResolvedDef* find_process(const std::string& name) const;

  // Re-exportable form: a single module holding the whole namespace.
  Spec to_spec(const std::string& module_name = "Flat") const;
};

// Built-in library modules: ArchitectureTypes, ArchitecturePrimitives,
// Architecture, ToolBusPrimitives, NewTool, NewToolBus.
Spec load_prelude();

// Inline all imports reachable from `root_module`, substituting bound
// parameters and applying renamings. Prelude modules are implicitly
// available. When root_module is empty a root is chosen: a module named IDE
// if present, otherwise the last process module of the file.
FlatSpec resolve(const Spec& spec, const std::string& root_module = "",
                 DiagSink* diag = nullptr);

// Surface term -> semantic term for ad-hoc tests and the mapping loader.
Tm resolve_term(const SProc& term, const FlatSpec& scope,
                const std::vector<std::string>& formals = {}, DiagSink* diag = nullptr);

}  // namespace psf
