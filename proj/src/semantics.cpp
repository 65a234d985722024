#include "psf/semantics.hpp"

#include <set>

#include "psf/eval.hpp"

namespace psf {

namespace {

// (bus action, tool action) -> comm result name
struct ToolPair {
  const char* bus;
  const char* tool;
  const char* result;
};

constexpr ToolPair kToolPairs[] = {
    {"tb-rec-event", "tooltb-snd-event", "comm-event"},
    {"tb-snd-ack-event", "tooltb-rec-ack-event", "comm-ack-event"},
    {"tb-snd-do", "tooltb-rec", "comm-do"},
    {"tb-snd-eval", "tooltb-rec", "comm-eval"},
    {"tb-rec-value", "tooltb-snd-value", "comm-value"},
};

std::optional<ActionLabel> communicate_ordered(const ActionLabel& a, const ActionLabel& b) {
  if (a.name == "snd" && b.name == "rec") {
    if (a.from == b.from && a.to == b.to && eval(a.term) == eval(b.term))
      return act_conn("comm-snd-rec", a.from, a.to, a.term);
    return std::nullopt;
  }
  if (a.name == "tb-snd-msg" && b.name == "tb-rec-msg") {
    if (a.from == b.from && a.to == b.to && eval(a.term) == eval(b.term))
      return act_msg("comm-msg", a.from, a.to, a.term);
    return std::nullopt;
  }
  for (const auto& p : kToolPairs) {
    if (a.name == p.bus && b.name == p.tool) {
      if (!b.tool.empty() && a.tool == b.tool && eval(a.term) == eval(b.term))
        return act_toolside(p.result, a.tool, a.term);
      return std::nullopt;
    }
  }
  if (a.name == "snd-quit" && b.name == "rec-quit") return act_atom("system-terminated");
  if (a.name == "snd-tb-shutdown" && b.name == "rec-tb-shutdown")
    return act_atom("system-terminated");
  return std::nullopt;
}

}  // namespace

std::optional<ActionLabel> communicate(const ActionLabel& a, const ActionLabel& b) {
  if (auto r = communicate_ordered(a, b)) return r;
  return communicate_ordered(b, a);
}

bool label_blocked(EncapsSet set, const ActionLabel& l) {
  if (is_comm_result(l.name)) return false;
  const std::string& n = l.name;
  if (n == "snd" || n == "rec") return true;  // blocked in both environments
  switch (set) {
    case EncapsSet::Architecture:
      return n == "snd-quit" || n == "rec-quit";
    case EncapsSet::ToolBus:
      return is_tb_action(n) || is_tooltb_action(n) || n == "snd-tb-shutdown" ||
             n == "rec-tb-shutdown";
  }
  return false;
}

namespace {

struct Engine {
  const FlatSpec& defs;
  DiagSink* diag;
  int fuse;
  int unfoldings = 0;

  std::vector<Transition> step(Tm t) {
    std::vector<Transition> out;
    switch (t->kind) {
      case TermKind::Ok:
      case TermKind::Delta:
        break;
      case TermKind::Action:
        out.push_back({t->label, t_ok()});
        break;
      case TermKind::Seq: {
        for (auto& tr : step(t->a))
          out.push_back({tr.label, t_seq(tr.target, t->b)});
        break;
      }
      case TermKind::Alt: {
        auto l = step(t->a);
        auto r = step(t->b);
        out.insert(out.end(), l.begin(), l.end());
        out.insert(out.end(), r.begin(), r.end());
        break;
      }
      case TermKind::Par: {
        auto l = step(t->a);
        auto r = step(t->b);
        for (auto& tr : l) out.push_back({tr.label, t_par(tr.target, t->b)});
        for (auto& tr : r) out.push_back({tr.label, t_par(t->a, tr.target)});
        for (auto& lt : l)
          for (auto& rt : r)
            if (auto c = communicate(lt.label, rt.label))
              out.push_back({*c, t_par(lt.target, rt.target)});
        break;
      }
      case TermKind::Star: {
        // x*y: run x and loop, or exit through y
        for (auto& tr : step(t->a))
          out.push_back({tr.label, tr.target->kind == TermKind::Ok
                                       ? t
                                       : t_seq(tr.target, t)});
        for (auto& tr : step(t->b)) out.push_back(tr);
        break;
      }
      case TermKind::Guard: {
        // substitution folds ground guards; reaching one here means the
        // condition is ground but the node was built directly
        if (dt_has_var(t->guard_lhs) || dt_has_var(t->guard_rhs))
          throw SpecError("UnboundVariable",
                          "guard on non-ground terms: " + t->guard_lhs->render());
        if (eval_guard(t->guard_lhs, t->guard_rhs, diag)) return step(t->a);
        break;
      }
      case TermKind::Call: {
        if (++unfoldings > fuse)
          throw SpecError("RecursionFuseBlown",
                          "recursion fuse blown unfolding " + t->name);
        const ResolvedDef* def = defs.find_process(t->name, static_cast<int>(t->args.size()));
        if (!def) {
          bool other = defs.find_process(t->name) != nullptr;
          throw SpecError(other ? "ArityMismatch" : "UndefinedProcess",
                          "call to " + t->name + "/" + std::to_string(t->args.size()));
        }
        Env env;
        for (size_t i = 0; i < def->formals.size(); ++i) {
          DTm arg = t->args[i];
          if (!dt_has_var(arg)) arg = eval(arg, diag);
          env[def->formals[i]] = arg;
        }
        Tm body = def->formals.empty() ? def->body : substitute(def->body, env, diag);
        return step(body);
      }
      case TermKind::Encaps: {
        for (auto& tr : step(t->a)) {
          if (tr.label.name == "system-terminated") {
            out.push_back({tr.label, t_ok()});  // global halt
            continue;
          }
          if (!label_blocked(t->encaps, tr.label))
            out.push_back({tr.label, t_encaps(t->encaps, tr.target)});
        }
        break;
      }
      case TermKind::TagTool: {
        for (auto& tr : step(t->a)) {
          ActionLabel l = tr.label;
          if (is_tooltb_action(l.name)) l.tool = t->name;
          out.push_back({l, t_tag_tool(t->name, tr.target)});
        }
        break;
      }
    }
    return out;
  }
};

struct MemoKey {
  Tm term;
  uint64_t defs_id;
  bool operator==(const MemoKey& o) const { return term == o.term && defs_id == o.defs_id; }
};
struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const {
    return std::hash<const void*>{}(k.term) * 31 ^ std::hash<uint64_t>{}(k.defs_id);
  }
};

std::mutex g_memo_mu;
std::unordered_map<MemoKey, std::vector<Transition>, MemoKeyHash>& memo() {
  static auto* m = new std::unordered_map<MemoKey, std::vector<Transition>, MemoKeyHash>();
  return *m;
}

}  // namespace

std::vector<Transition> enabled(Tm term, const FlatSpec& defs, DiagSink* diag, int fuse) {
  MemoKey key{term, defs.cache_id};
  if (!diag) {  // diagnostics bypass the cache so notes are not lost
    std::lock_guard<std::mutex> lk(g_memo_mu);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  Engine e{defs, diag, fuse};
  auto out = e.step(term);
  if (!diag) {
    std::lock_guard<std::mutex> lk(g_memo_mu);
    memo().emplace(key, out);
  }
  return out;
}

std::set<std::vector<std::string>> trace_set(Tm term, const FlatSpec& defs, int depth) {
  std::set<std::vector<std::string>> out;
  // depth-bounded DFS over label sequences; the empty trace is always present
  struct Frame {
    Tm term;
    std::vector<std::string> trace;
  };
  std::vector<Frame> stack{{term, {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    out.insert(f.trace);
    if (static_cast<int>(f.trace.size()) >= depth) continue;
    for (auto& tr : enabled(f.term, defs)) {
      auto trace = f.trace;
      trace.push_back(tr.label.render());
      stack.push_back({tr.target, std::move(trace)});
    }
  }
  return out;
}

bool unfold_star_law_check(Tm x, Tm y, const FlatSpec& defs, int depth) {
  if (depth > 12) throw SpecError("ExplorationBoundExceeded", "star law depth above 12");
  Tm star = t_star(x, y);
  Tm unfolded = t_alt(t_seq(x, star), y);
  return trace_set(star, defs, depth) == trace_set(unfolded, defs, depth);
}

}  // namespace psf
