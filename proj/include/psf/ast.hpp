#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "psf/diag.hpp"

namespace psf {

enum class Sort { ID, DATA, BOOLEAN, NAT };

std::string sort_name(Sort s);
std::optional<Sort> sort_from_name(const std::string& n);

struct FunctionDecl {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result = Sort::DATA;
  SourcePos pos;
};

struct AtomDecl {
  std::string name;
  std::vector<Sort> arg_sorts;
  SourcePos pos;
};

struct ProcDecl {
  std::string name;
  std::vector<Sort> param_sorts;
  SourcePos pos;
};

struct Binding {
  std::string formal;
  std::string actual;
  SourcePos pos;
};

struct Renaming {
  std::string from;
  std::string to;
  SourcePos pos;
};

struct ImportClause {
  std::string target;                 // imported module
  bool parameterized = false;
  std::string param;                  // parameter being bound
  std::vector<Binding> bindings;
  std::string via_module;             // "to <module>": supplier of the actuals
  std::vector<Renaming> renamings;
  SourcePos pos;
};

// Surface data term. Identifiers are classified (constant vs variable) during
// resolution, not parsing.
struct SDataTerm {
  std::string head;
  std::vector<SDataTerm> args;
  SourcePos pos;
};

struct SProcTerm;
using SProc = std::shared_ptr<SProcTerm>;

struct SProcTerm {
  enum Kind { Delta, Apply, Seq, Alt, Par, Star, Guard } kind;
  // Apply: atom, builtin action or process call; disambiguated at resolve time
  std::string name;
  std::optional<std::pair<std::string, std::string>> conn;  // snd/rec channel
  std::vector<SDataTerm> dargs;
  SProc a, b;
  SDataTerm guard_lhs, guard_rhs;
  SourcePos pos;
};

struct SProcessDef {
  std::string name;
  std::vector<std::string> formals;
  SProc body;
  SourcePos pos;
};

struct Exports {
  std::vector<FunctionDecl> functions;
  std::vector<AtomDecl> atoms;
  std::vector<ProcDecl> processes;
};

struct ModuleDecl {
  enum Kind { Data, Process } kind = Process;
  std::string name;
  Exports exports;
  std::vector<ImportClause> imports;
  std::vector<AtomDecl> atoms;            // non-exported
  std::vector<FunctionDecl> functions;    // non-exported
  std::vector<ProcDecl> processes;        // non-exported declarations
  std::vector<SProcessDef> definitions;
  std::vector<std::string> parameters;    // formal process parameters (prelude)
  SourcePos pos;
};

struct Spec {
  std::vector<ModuleDecl> modules;
  bool prelude_loaded = false;

  const ModuleDecl* find_module(const std::string& name) const;
};

Spec parse_spec(const std::string& source, const std::string& filename = "<input>");
Spec parse_file(const std::string& path);

std::string pretty_print(const Spec& spec);
std::string pretty_print(const ModuleDecl& m);
std::string pretty_print_term(const SProc& t);

// Structural equality over the surface AST (source positions ignored).
bool ast_equal(const Spec& a, const Spec& b);

}  // namespace psf
