#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "psf/diag.hpp"

namespace psf {

// ---------------------------------------------------------------------------
// Data terms
//
// Ground constructor terms plus variables (variables only appear inside
// process definition bodies; they are substituted away before evaluation).
// Terms are hash-consed: structural equality is pointer equality.
// ---------------------------------------------------------------------------

struct DataTerm;
using DTm = const DataTerm*;

struct DataTerm {
  std::string head;            // constructor or variable name
  std::vector<DTm> args;
  bool is_var = false;
  uint64_t hash = 0;
  uint32_t id = 0;             // creation index, stable within a run

  std::string render() const;
};

DTm dt(const std::string& ctor, std::vector<DTm> args = {});
DTm dt_var(const std::string& name);

inline DTm dt_true() { return dt("true"); }
inline DTm dt_false() { return dt("false"); }
inline DTm dt_zero() { return dt("^0"); }
DTm dt_num(unsigned n);  // n-fold succ of ^0

bool dt_has_var(DTm t);

// Deterministic structural order (independent of creation order).
int dt_cmp(DTm a, DTm b);

// ---------------------------------------------------------------------------
// Action labels
// ---------------------------------------------------------------------------

enum class Payload : uint8_t {
  None,      // plain atom: push-quit, start-editor, snd-quit, ...
  Conn,      // snd/rec/comm-snd-rec: connection a>>b plus a term
  Msg,       // tb-snd-msg/tb-rec-msg/comm-msg: (src, dst, term)
  ToolSide,  // tb-rec-event etc. and their comm results: (tool, term)
  Term,      // tooltb-* actions: a bare term; tool id filled in when constrained
};

struct ActionLabel {
  std::string name;
  Payload payload = Payload::None;
  std::string from, to;   // Conn endpoints or Msg (src, dst)
  std::string tool;       // ToolSide tool id; also the constrain tag on Term
  DTm term = nullptr;

  std::string render() const;
  bool operator==(const ActionLabel& o) const;
  uint64_t hash() const;
};

int action_cmp(const ActionLabel& a, const ActionLabel& b);

ActionLabel act_atom(const std::string& name);
ActionLabel act_conn(const std::string& name, const std::string& from, const std::string& to, DTm term);
ActionLabel act_msg(const std::string& name, const std::string& src, const std::string& dst, DTm term);
ActionLabel act_toolside(const std::string& name, const std::string& tool, DTm term);
ActionLabel act_term(const std::string& name, DTm term);

// Builtin action families, used by the parser and the communication table.
bool is_tb_action(const std::string& name);      // tb-snd-msg ... tb-rec-value
bool is_tooltb_action(const std::string& name);  // tooltb-snd-event ... tooltb-snd-value
bool is_comm_result(const std::string& name);    // comm-* and system-terminated

// ---------------------------------------------------------------------------
// Process terms (hash-consed, immutable)
// ---------------------------------------------------------------------------

enum class TermKind : uint8_t {
  Ok,      // successful termination marker
  Delta,   // deadlock
  Action,
  Seq,
  Alt,
  Par,
  Star,    // Star(body, exit)
  Guard,   // Guard(lhs = rhs, then)
  Call,    // named process with data arguments
  Encaps,  // environment boundary with a named blocked set
  TagTool, // tool-identity tag applied by constraining
};

enum class EncapsSet : uint8_t { Architecture, ToolBus };

struct Term;
using Tm = const Term*;

struct Term {
  TermKind kind;
  Tm a = nullptr;   // Seq/Alt/Par/Star left, Guard/Encaps/TagTool body
  Tm b = nullptr;   // Seq/Alt/Par right, Star exit
  ActionLabel label;               // Action
  DTm guard_lhs = nullptr;         // Guard
  DTm guard_rhs = nullptr;
  std::string name;                // Call target, TagTool tool id
  std::vector<DTm> args;           // Call actuals
  EncapsSet encaps = EncapsSet::Architecture;

  uint64_t hash = 0;
  uint32_t id = 0;

  std::string render() const;
};

Tm t_ok();
Tm t_delta();
Tm t_act(ActionLabel l);
Tm t_seq(Tm a, Tm b);   // normalizes Ok operands
Tm t_alt(Tm a, Tm b);
Tm t_par(Tm a, Tm b);   // normalizes Ok operands
Tm t_star(Tm body, Tm exit);
Tm t_guard(DTm lhs, DTm rhs, Tm then);  // folds to `then`/Delta when ground
Tm t_call(const std::string& name, std::vector<DTm> args = {});
Tm t_encaps(EncapsSet s, Tm body);
Tm t_tag_tool(const std::string& tool, Tm body);

int term_cmp(Tm a, Tm b);

// Commutative normal form: Alt/Par sub-trees flattened and sorted structurally.
// Used for visited-state identity; evaluation order keeps the original shape.
Tm canonical(Tm t);

// Interner statistics, handy in the benchmark.
size_t interned_data_terms();
size_t interned_process_terms();

}  // namespace psf
