#include "psf/resolve.hpp"

#include <algorithm>
#include <atomic>
#include <set>

namespace psf {

uint64_t FlatSpec::next_cache_id() {
  static std::atomic<uint64_t> counter{1};
  return counter.fetch_add(1);
}

const ResolvedDef* FlatSpec::find_process(const std::string& name) const {
  auto it = processes.find({name, 0});
  if (it != processes.end()) return &it->second;
  for (const auto& [key, def] : processes)
    if (key.first == name) return &def;
  return nullptr;
}

namespace {

struct BuiltinCtor {
  const char* name;
  int arity;
};

constexpr BuiltinCtor kBuiltinCtors[] = {
    {"true", 0}, {"false", 0}, {"^0", 0}, {"succ", 1}, {"pred", 1},
    {"gt", 2},   {"eq", 2},    {"nat", 1}, {"tbterm", 1},
};

const BuiltinCtor* builtin_ctor(const std::string& name) {
  for (const auto& b : kBuiltinCtors)
    if (name == b.name) return &b;
  return nullptr;
}

struct Instance {
  const ModuleDecl* mod = nullptr;
  std::map<std::string, std::string> psubst;  // process-name substitution
  std::string display;                        // module name for origin info
};

class Resolver {
 public:
  Resolver(const Spec& user, DiagSink* diag) : diag_(diag) {
    prelude_ = load_prelude();
    for (const auto& m : prelude_.modules) add_module(m);
    for (const auto& m : user.modules) add_module(m);
  }

  FlatSpec run(const std::string& root) {
    const ModuleDecl* root_mod = modules_.count(root) ? modules_.at(root) : nullptr;
    if (!root_mod)
      throw SpecError("UnresolvedImport", "no module named " + root);
    out_.root_module = root;
    instantiate_plain(root, SourcePos{});
    build_tables();
    resolve_bodies();
    pick_root_process(*root_mod);
    return std::move(out_);
  }

 private:
  void add_module(const ModuleDecl& m) {
    if (modules_.count(m.name))
      throw SpecError("DuplicateModule", m.pos, "module " + m.name + " declared twice");
    modules_[m.name] = &m;
  }

  const ModuleDecl* find_module(const std::string& name, const SourcePos& pos) {
    auto it = modules_.find(name);
    if (it == modules_.end())
      throw SpecError("UnresolvedImport", pos, "unresolved import " + name);
    return it->second;
  }

  void instantiate_plain(const std::string& name, const SourcePos& pos) {
    if (std::find(stack_.begin(), stack_.end(), name) != stack_.end()) {
      std::string path;
      for (const auto& s : stack_) path += s + " -> ";
      throw SpecError("CyclicImport", pos, "cyclic import " + path + name);
    }
    if (plain_done_.count(name)) return;
    const ModuleDecl* mod = find_module(name, pos);
    if (!mod->parameters.empty())
      throw SpecError("UnboundFormal", pos,
                      "module " + name + " has unbound parameter " + mod->parameters.front());
    stack_.push_back(name);
    for (const auto& imp : mod->imports) handle_import(*mod, imp);
    stack_.pop_back();
    plain_done_.insert(name);
    instances_.push_back(Instance{mod, {}, name});
  }

  void handle_import(const ModuleDecl& importer, const ImportClause& imp) {
    if (!imp.parameterized) {
      instantiate_plain(imp.target, imp.pos);
      return;
    }
    const ModuleDecl* tgt = find_module(imp.target, imp.pos);
    const auto& params = tgt->parameters;
    auto is_param = [&](const std::string& n) {
      return std::find(params.begin(), params.end(), n) != params.end();
    };
    if (!is_param(imp.param))
      throw SpecError("UnboundFormal", imp.pos,
                      imp.target + " has no parameter " + imp.param);
    Instance inst;
    inst.mod = tgt;
    inst.display = imp.target + "[" + importer.name + "]";
    std::set<std::string> bound;
    for (const auto& b : imp.bindings) {
      if (!is_param(b.formal))
        throw SpecError("UnboundFormal", b.pos,
                        imp.target + " has no formal " + b.formal);
      inst.psubst[b.formal] = b.actual;
      bound.insert(b.formal);
    }
    for (const auto& p : params)
      if (!bound.count(p))
        throw SpecError("UnboundFormal", imp.pos,
                        "parameter " + p + " of " + imp.target + " left unbound");
    // actuals come from the module named in the `to` clause
    instantiate_plain(imp.via_module, imp.pos);
    std::set<std::string> exported;
    for (const auto& p : tgt->exports.processes) exported.insert(p.name);
    for (const auto& r : imp.renamings) {
      if (!exported.count(r.from))
        throw SpecError("RenameOfUndeclared", r.pos,
                        imp.target + " does not export process " + r.from);
      inst.psubst[r.from] = r.to;
    }
    for (const auto& i2 : tgt->imports) handle_import(*tgt, i2);
    // A second parameterized instance of the same module must not collide on
    // its internal (unexported, unrenamed) names.
    int n = ++param_instances_[imp.target];
    if (n > 1) {
      for (const auto& d : tgt->definitions)
        if (!inst.psubst.count(d.name))
          inst.psubst[d.name] = d.name + "#" + std::to_string(n);
    }
    instances_.push_back(std::move(inst));
  }

  // --- global declaration tables ---

  void build_tables() {
    for (const auto& inst : instances_) {
      const ModuleDecl& m = *inst.mod;
      for (const auto* flist : {&m.exports.functions, &m.functions})
        for (const auto& f : *flist) {
          auto [it, fresh] = out_.constants.emplace(f.name, f);
          if (!fresh)
            throw SpecError("DuplicateDeclaration", f.pos,
                            "data function " + f.name + " declared twice");
        }
      for (const auto* alist : {&m.exports.atoms, &m.atoms})
        for (const auto& a : *alist) {
          auto [it, fresh] = out_.atoms.emplace(a.name, a);
          if (!fresh)
            throw SpecError("DuplicateDeclaration", a.pos,
                            "atom " + a.name + " declared twice");
        }
      for (const auto& d : m.definitions) {
        std::string name = subst_name(inst, d.name);
        auto key = std::make_pair(name, static_cast<int>(d.formals.size()));
        if (out_.processes.count(key))
          throw SpecError("DuplicateDeclaration", d.pos,
                          "process " + name + " defined twice");
        ResolvedDef def;
        def.name = name;
        def.formals = d.formals;
        def.origin_module = inst.display;
        def.pos = d.pos;
        out_.processes.emplace(key, std::move(def));
      }
    }
  }

  static std::string subst_name(const Instance& inst, const std::string& n) {
    auto it = inst.psubst.find(n);
    return it == inst.psubst.end() ? n : it->second;
  }

  // --- body resolution ---

  void resolve_bodies() {
    for (const auto& inst : instances_) {
      for (const auto& d : inst.mod->definitions) {
        std::string name = subst_name(inst, d.name);
        auto key = std::make_pair(name, static_cast<int>(d.formals.size()));
        out_.processes.at(key).body = resolve_proc(d.body, inst, d.formals, d);
      }
    }
  }

  DTm resolve_dterm(const SDataTerm& t, const std::vector<std::string>& formals) {
    if (std::find(formals.begin(), formals.end(), t.head) != formals.end()) {
      if (!t.args.empty())
        throw SpecError("SyntaxError", t.pos, "variable " + t.head + " applied to arguments");
      return dt_var(t.head);
    }
    if (const BuiltinCtor* b = builtin_ctor(t.head)) {
      if (static_cast<int>(t.args.size()) != b->arity)
        throw SpecError("ArityMismatch", t.pos,
                        t.head + " expects " + std::to_string(b->arity) + " arguments");
    } else {
      auto it = out_.constants.find(t.head);
      if (it == out_.constants.end())
        throw SpecError("Undeclared", t.pos, "undeclared data name " + t.head);
      if (it->second.arg_sorts.size() != t.args.size())
        throw SpecError("ArityMismatch", t.pos, "wrong arity for " + t.head);
    }
    std::vector<DTm> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(resolve_dterm(a, formals));
    return dt(t.head, std::move(args));
  }

  std::string resolve_id_arg(const SDataTerm& t) {
    if (!t.args.empty())
      throw SpecError("SyntaxError", t.pos, "expected identifier, found " + t.head + "(...)");
    auto it = out_.constants.find(t.head);
    if (it == out_.constants.end())
      throw SpecError("Undeclared", t.pos, "undeclared identifier " + t.head);
    return t.head;
  }

  Tm resolve_apply(const SProcTerm& t, const Instance& inst,
                   const std::vector<std::string>& formals, const SProcessDef& ctx) {
    const std::string& n = t.name;
    // environment markers attached by the prelude builder
    if (n == "__arch_env" || n == "__toolbus_env") {
      Tm body = resolve_proc(t.a, inst, formals, ctx);
      return t_encaps(n == "__arch_env" ? EncapsSet::Architecture : EncapsSet::ToolBus, body);
    }
    if (n == "snd" || n == "rec") {
      if (!t.conn || t.dargs.size() != 1)
        throw SpecError("SyntaxError", t.pos, n + " takes a connection and a data term");
      // connection endpoints are ID constants
      SDataTerm from{t.conn->first, {}, t.pos}, to{t.conn->second, {}, t.pos};
      return t_act(act_conn(n, resolve_id_arg(from), resolve_id_arg(to),
                            resolve_dterm(t.dargs[0], formals)));
    }
    if (n == "tb-snd-msg" || n == "tb-rec-msg") {
      if (t.dargs.size() != 3)
        throw SpecError("SyntaxError", t.pos, n + " takes sender, receiver and a term");
      return t_act(act_msg(n, resolve_id_arg(t.dargs[0]), resolve_id_arg(t.dargs[1]),
                           resolve_dterm(t.dargs[2], formals)));
    }
    if (is_tb_action(n)) {
      if (t.dargs.size() != 2)
        throw SpecError("SyntaxError", t.pos, n + " takes a tool identifier and a term");
      return t_act(act_toolside(n, resolve_id_arg(t.dargs[0]),
                                resolve_dterm(t.dargs[1], formals)));
    }
    std::string name = n;
    if (name == "tooltb-snd") {
      // §4.2 writes tooltb-snd once where every sibling uses tooltb-snd-value
      if (diag_) diag_->note(t.pos.str() + ": tooltb-snd read as tooltb-snd-value");
      name = "tooltb-snd-value";
    }
    if (is_tooltb_action(name)) {
      if (t.dargs.size() != 1)
        throw SpecError("SyntaxError", t.pos, name + " takes a single term");
      return t_act(act_term(name, resolve_dterm(t.dargs[0], formals)));
    }
    // process call?
    std::string callee = subst_name(inst, name);
    auto key = std::make_pair(callee, static_cast<int>(t.dargs.size()));
    if (out_.processes.count(key)) {
      std::vector<DTm> args;
      args.reserve(t.dargs.size());
      for (const auto& a : t.dargs) args.push_back(resolve_dterm(a, formals));
      return t_call(callee, std::move(args));
    }
    // declared atom?
    auto ait = out_.atoms.find(name);
    if (ait != out_.atoms.end()) {
      if (!ait->second.arg_sorts.empty() || !t.dargs.empty()) {
        if (t.dargs.size() != 1 || ait->second.arg_sorts.size() != 1)
          throw SpecError("ArityMismatch", t.pos, "wrong arity for atom " + name);
        return t_act(act_term(name, resolve_dterm(t.dargs[0], formals)));
      }
      return t_act(act_atom(name));
    }
    bool other_arity = false;
    for (const auto& [k, v] : out_.processes)
      if (k.first == callee) other_arity = true;
    if (other_arity)
      throw SpecError("ArityMismatch", t.pos,
                      "process " + callee + " called with wrong arity in " + ctx.name);
    throw SpecError("Undeclared", t.pos,
                    "undeclared action or process " + name + " in " + ctx.name);
  }

  Tm resolve_proc(const SProc& t, const Instance& inst, const std::vector<std::string>& formals,
                  const SProcessDef& ctx) {
    switch (t->kind) {
      case SProcTerm::Delta: return t_delta();
      case SProcTerm::Apply: return resolve_apply(*t, inst, formals, ctx);
      case SProcTerm::Seq:
        return t_seq(resolve_proc(t->a, inst, formals, ctx), resolve_proc(t->b, inst, formals, ctx));
      case SProcTerm::Alt:
        return t_alt(resolve_proc(t->a, inst, formals, ctx), resolve_proc(t->b, inst, formals, ctx));
      case SProcTerm::Par:
        return t_par(resolve_proc(t->a, inst, formals, ctx), resolve_proc(t->b, inst, formals, ctx));
      case SProcTerm::Star:
        return t_star(resolve_proc(t->a, inst, formals, ctx), resolve_proc(t->b, inst, formals, ctx));
      case SProcTerm::Guard:
        return t_guard(resolve_dterm(t->guard_lhs, formals), resolve_dterm(t->guard_rhs, formals),
                       resolve_proc(t->a, inst, formals, ctx));
    }
    throw SpecError("Internal", t->pos, "unhandled term kind");
  }

  void pick_root_process(const ModuleDecl& root) {
    if (out_.processes.count({root.name, 0})) {
      out_.root_process = root.name;
      return;
    }
    for (const auto& p : root.exports.processes)
      if (out_.processes.count({p.name, 0})) {
        out_.root_process = p.name;
        return;
      }
    for (const auto& imp : root.imports)
      for (const auto& r : imp.renamings)
        if (out_.processes.count({r.to, 0})) {
          out_.root_process = r.to;
          return;
        }
    // fall back to any single 0-ary definition declared by the root module
    for (const auto& d : root.definitions)
      if (d.formals.empty()) {
        out_.root_process = d.name;
        return;
      }
  }

  DiagSink* diag_;
  Spec prelude_;
  std::map<std::string, const ModuleDecl*> modules_;
  std::set<std::string> plain_done_;
  std::map<std::string, int> param_instances_;
  std::vector<std::string> stack_;
  std::vector<Instance> instances_;
  FlatSpec out_;
};

std::string default_root(const Spec& spec) {
  if (spec.find_module("IDE")) return "IDE";
  for (auto it = spec.modules.rbegin(); it != spec.modules.rend(); ++it)
    if (it->kind == ModuleDecl::Process) return it->name;
  if (!spec.modules.empty()) return spec.modules.back().name;
  throw SpecError("UnresolvedImport", "empty specification has no root module");
}

}  // namespace

FlatSpec resolve(const Spec& spec, const std::string& root_module, DiagSink* diag) {
  std::string root = root_module.empty() ? default_root(spec) : root_module;
  Resolver r(spec, diag);
  return r.run(root);
}

namespace {

SDataTerm dterm_to_surface(DTm t) {
  SDataTerm s;
  s.head = t->head;
  for (DTm a : t->args) s.args.push_back(dterm_to_surface(a));
  return s;
}

SProc term_to_surface(Tm t) {
  auto n = std::make_shared<SProcTerm>();
  switch (t->kind) {
    case TermKind::Ok:
      n->kind = SProcTerm::Apply;
      n->name = "__ok";
      break;
    case TermKind::Delta:
      n->kind = SProcTerm::Delta;
      break;
    case TermKind::Action: {
      n->kind = SProcTerm::Apply;
      const ActionLabel& l = t->label;
      n->name = l.name;
      switch (l.payload) {
        case Payload::None:
          break;
        case Payload::Conn:
          n->conn = {l.from, l.to};
          n->dargs.push_back(dterm_to_surface(l.term));
          break;
        case Payload::Msg:
          n->dargs.push_back(SDataTerm{l.from, {}, {}});
          n->dargs.push_back(SDataTerm{l.to, {}, {}});
          n->dargs.push_back(dterm_to_surface(l.term));
          break;
        case Payload::ToolSide:
          n->dargs.push_back(SDataTerm{l.tool, {}, {}});
          n->dargs.push_back(dterm_to_surface(l.term));
          break;
        case Payload::Term:
          n->dargs.push_back(dterm_to_surface(l.term));
          break;
      }
      break;
    }
    case TermKind::Seq:
      n->kind = SProcTerm::Seq;
      n->a = term_to_surface(t->a);
      n->b = term_to_surface(t->b);
      break;
    case TermKind::Alt:
      n->kind = SProcTerm::Alt;
      n->a = term_to_surface(t->a);
      n->b = term_to_surface(t->b);
      break;
    case TermKind::Par:
      n->kind = SProcTerm::Par;
      n->a = term_to_surface(t->a);
      n->b = term_to_surface(t->b);
      break;
    case TermKind::Star:
      n->kind = SProcTerm::Star;
      n->a = term_to_surface(t->a);
      n->b = term_to_surface(t->b);
      break;
    case TermKind::Guard:
      n->kind = SProcTerm::Guard;
      n->guard_lhs = dterm_to_surface(t->guard_lhs);
      n->guard_rhs = dterm_to_surface(t->guard_rhs);
      n->a = term_to_surface(t->a);
      break;
    case TermKind::Call:
      n->kind = SProcTerm::Apply;
      n->name = t->name;
      for (DTm a : t->args) n->dargs.push_back(dterm_to_surface(a));
      break;
    case TermKind::Encaps:
      n->kind = SProcTerm::Apply;
      n->name = t->encaps == EncapsSet::Architecture ? "__arch_env" : "__toolbus_env";
      n->a = term_to_surface(t->a);
      break;
    case TermKind::TagTool:
      n->kind = SProcTerm::Apply;
      n->name = "__tool_tag";
      n->dargs.push_back(SDataTerm{t->name, {}, {}});
      n->a = term_to_surface(t->a);
      break;
  }
  return n;
}

}  // namespace

Spec FlatSpec::to_spec(const std::string& module_name) const {
  Spec spec;
  ModuleDecl m;
  m.kind = ModuleDecl::Process;
  m.name = module_name;
  for (const auto& [name, f] : constants) m.exports.functions.push_back(f);
  for (const auto& [name, a] : atoms)
    if (name != "snd-quit" && name != "rec-quit" && name != "snd-tb-shutdown" &&
        name != "rec-tb-shutdown")
      m.exports.atoms.push_back(a);
  for (const auto& [key, def] : processes) {
    ProcDecl pd;
    pd.name = def.name;
    pd.param_sorts.assign(def.formals.size(), Sort::DATA);
    m.exports.processes.push_back(pd);
    SProcessDef sd;
    sd.name = def.name;
    sd.formals = def.formals;
    sd.body = term_to_surface(def.body);
    m.definitions.push_back(std::move(sd));
  }
  spec.modules.push_back(std::move(m));
  return spec;
}

Tm resolve_term(const SProc& term, const FlatSpec& scope, const std::vector<std::string>& formals,
                DiagSink* diag) {
  // Lenient classification for tests and tools: identifiers that are neither
  // builtins nor known processes become atoms.
  struct Mini {
    const FlatSpec& sc;
    DiagSink* diag;
    std::vector<std::string> formals;

    DTm dtm(const SDataTerm& t) {
      if (std::find(formals.begin(), formals.end(), t.head) != formals.end()) return dt_var(t.head);
      std::vector<DTm> args;
      for (const auto& a : t.args) args.push_back(dtm(a));
      return dt(t.head, std::move(args));
    }

    Tm proc(const SProc& t) {
      switch (t->kind) {
        case SProcTerm::Delta: return t_delta();
        case SProcTerm::Seq: return t_seq(proc(t->a), proc(t->b));
        case SProcTerm::Alt: return t_alt(proc(t->a), proc(t->b));
        case SProcTerm::Par: return t_par(proc(t->a), proc(t->b));
        case SProcTerm::Star: return t_star(proc(t->a), proc(t->b));
        case SProcTerm::Guard:
          return t_guard(dtm(t->guard_lhs), dtm(t->guard_rhs), proc(t->a));
        case SProcTerm::Apply: {
          const std::string& n = t->name;
          if (n == "snd" || n == "rec") {
            return t_act(act_conn(n, t->conn->first, t->conn->second, dtm(t->dargs[0])));
          }
          if (n == "tb-snd-msg" || n == "tb-rec-msg")
            return t_act(act_msg(n, t->dargs[0].head, t->dargs[1].head, dtm(t->dargs[2])));
          if (is_tb_action(n))
            return t_act(act_toolside(n, t->dargs[0].head, dtm(t->dargs[1])));
          std::string name = n == "tooltb-snd" ? "tooltb-snd-value" : n;
          if (is_tooltb_action(name)) return t_act(act_term(name, dtm(t->dargs[0])));
          auto key = std::make_pair(name, static_cast<int>(t->dargs.size()));
          if (sc.processes.count(key)) {
            std::vector<DTm> args;
            for (const auto& a : t->dargs) args.push_back(dtm(a));
            return t_call(name, std::move(args));
          }
          if (t->dargs.empty()) return t_act(act_atom(name));
          return t_act(act_term(name, dtm(t->dargs[0])));
        }
      }
      throw SpecError("Internal", "unhandled term kind");
    }
  };
  Mini m{scope, diag, formals};
  return m.proc(term);
}

}  // namespace psf
