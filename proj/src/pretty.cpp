#include <sstream>

#include "psf/ast.hpp"

namespace psf {

namespace {

void render_dterm(const SDataTerm& t, std::string& s) {
  s += t.head;
  if (!t.args.empty()) {
    s += "(";
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) s += ", ";
      render_dterm(t.args[i], s);
    }
    s += ")";
  }
}

std::string dterm_str(const SDataTerm& t) {
  std::string s;
  render_dterm(t, s);
  return s;
}

int prec(SProcTerm::Kind k) {
  switch (k) {
    case SProcTerm::Par: return 0;
    case SProcTerm::Alt: return 1;
    case SProcTerm::Star: return 2;
    case SProcTerm::Seq: return 3;
    default: return 4;
  }
}

void render_proc(const SProc& t, int outer, std::string& s) {
  int p = prec(t->kind);
  bool paren = p < outer;
  if (paren) s += "(";
  switch (t->kind) {
    case SProcTerm::Delta:
      s += "delta";
      break;
    case SProcTerm::Apply:
      s += t->name;
      if (t->conn) {
        s += "(" + t->conn->first + " >> " + t->conn->second;
        for (const auto& d : t->dargs) s += ", " + dterm_str(d);
        s += ")";
      } else if (!t->dargs.empty()) {
        s += "(";
        for (size_t i = 0; i < t->dargs.size(); ++i) {
          if (i) s += ", ";
          s += dterm_str(t->dargs[i]);
        }
        s += ")";
      }
      break;
    case SProcTerm::Seq:
      render_proc(t->a, p, s);
      s += " . ";
      render_proc(t->b, p, s);
      break;
    case SProcTerm::Alt:
      render_proc(t->a, p, s);
      s += " + ";
      render_proc(t->b, p, s);
      break;
    case SProcTerm::Par:
      render_proc(t->a, p, s);
      s += " || ";
      render_proc(t->b, p, s);
      break;
    case SProcTerm::Star:
      // '*' is parsed left-associatively; parenthesize a right-nested operand
      render_proc(t->a, p + 1, s);
      s += " * ";
      render_proc(t->b, p + 1, s);
      break;
    case SProcTerm::Guard:
      s += "[" + dterm_str(t->guard_lhs) + " = " + dterm_str(t->guard_rhs) + "] -> ";
      render_proc(t->a, 4, s);
      break;
  }
  if (paren) s += ")";
}

void render_function(const FunctionDecl& f, std::ostringstream& out, const char* indent) {
  out << indent << f.name << " : ";
  for (size_t i = 0; i < f.arg_sorts.size(); ++i) {
    if (i) out << " # ";
    out << sort_name(f.arg_sorts[i]);
  }
  if (!f.arg_sorts.empty()) out << " ";
  out << "-> " << sort_name(f.result) << "\n";
}

void render_atom(const AtomDecl& a, std::ostringstream& out, const char* indent) {
  out << indent << a.name;
  for (size_t i = 0; i < a.arg_sorts.size(); ++i)
    out << (i ? " # " : " : ") << sort_name(a.arg_sorts[i]);
  out << "\n";
}

void render_procdecl(const ProcDecl& p, std::ostringstream& out, const char* indent) {
  out << indent << p.name;
  for (size_t i = 0; i < p.param_sorts.size(); ++i)
    out << (i ? " # " : " : ") << sort_name(p.param_sorts[i]);
  out << "\n";
}

void render_import(const ImportClause& imp, std::ostringstream& out) {
  out << "    " << imp.target;
  if (!imp.parameterized) return;
  out << " {\n      " << imp.param << " bound by [\n";
  for (size_t i = 0; i < imp.bindings.size(); ++i)
    out << "        " << imp.bindings[i].formal << " -> " << imp.bindings[i].actual
        << (i + 1 < imp.bindings.size() ? ",\n" : "\n");
  out << "      ] to " << imp.via_module;
  if (!imp.renamings.empty()) {
    out << "\n      renamed by [\n";
    for (size_t i = 0; i < imp.renamings.size(); ++i)
      out << "        " << imp.renamings[i].from << " -> " << imp.renamings[i].to
          << (i + 1 < imp.renamings.size() ? ",\n" : "\n");
    out << "      ]";
  }
  out << "\n    }";
}

}  // namespace

std::string pretty_print_term(const SProc& t) {
  std::string s;
  render_proc(t, 0, s);
  return s;
}

std::string pretty_print(const ModuleDecl& m) {
  std::ostringstream out;
  out << (m.kind == ModuleDecl::Data ? "data module " : "process module ") << m.name << "\n";
  out << "begin\n";
  bool have_exports = !m.exports.functions.empty() || !m.exports.atoms.empty() ||
                      !m.exports.processes.empty();
  if (have_exports) {
    out << "  exports\n  begin\n";
    if (!m.exports.functions.empty()) {
      out << "    functions\n";
      for (const auto& f : m.exports.functions) render_function(f, out, "      ");
    }
    if (!m.exports.atoms.empty()) {
      out << "    atoms\n";
      for (const auto& a : m.exports.atoms) render_atom(a, out, "      ");
    }
    if (!m.exports.processes.empty()) {
      out << "    processes\n";
      for (const auto& p : m.exports.processes) render_procdecl(p, out, "      ");
    }
    out << "  end\n";
  }
  if (!m.parameters.empty()) {
    out << "  parameters\n";
    for (size_t i = 0; i < m.parameters.size(); ++i)
      out << "    " << m.parameters[i] << (i + 1 < m.parameters.size() ? "," : "") << "\n";
  }
  if (!m.imports.empty()) {
    out << "  imports\n";
    for (size_t i = 0; i < m.imports.size(); ++i) {
      render_import(m.imports[i], out);
      out << (i + 1 < m.imports.size() ? "," : "") << "\n";
    }
  }
  if (!m.functions.empty()) {
    out << "  functions\n";
    for (const auto& f : m.functions) render_function(f, out, "    ");
  }
  if (!m.atoms.empty()) {
    out << "  atoms\n";
    for (const auto& a : m.atoms) render_atom(a, out, "    ");
  }
  if (!m.processes.empty()) {
    out << "  processes\n";
    for (const auto& p : m.processes) render_procdecl(p, out, "    ");
  }
  if (!m.definitions.empty()) {
    out << "  definitions\n";
    for (const auto& d : m.definitions) {
      out << "    " << d.name;
      if (!d.formals.empty()) {
        out << "(";
        for (size_t i = 0; i < d.formals.size(); ++i) out << (i ? ", " : "") << d.formals[i];
        out << ")";
      }
      out << " =\n      " << pretty_print_term(d.body) << "\n";
    }
  }
  out << "end " << m.name << "\n";
  return out.str();
}

std::string pretty_print(const Spec& spec) {
  std::string s;
  for (size_t i = 0; i < spec.modules.size(); ++i) {
    if (i) s += "\n";
    s += pretty_print(spec.modules[i]);
  }
  return s;
}

namespace {

bool dterm_equal(const SDataTerm& a, const SDataTerm& b) {
  if (a.head != b.head || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!dterm_equal(a.args[i], b.args[i])) return false;
  return true;
}

bool proc_equal(const SProc& a, const SProc& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SProcTerm::Delta:
      return true;
    case SProcTerm::Apply: {
      if (a->name != b->name || a->conn.has_value() != b->conn.has_value()) return false;
      if (a->conn && *a->conn != *b->conn) return false;
      if (a->dargs.size() != b->dargs.size()) return false;
      for (size_t i = 0; i < a->dargs.size(); ++i)
        if (!dterm_equal(a->dargs[i], b->dargs[i])) return false;
      return true;
    }
    case SProcTerm::Guard:
      return dterm_equal(a->guard_lhs, b->guard_lhs) &&
             dterm_equal(a->guard_rhs, b->guard_rhs) && proc_equal(a->a, b->a);
    default:
      return proc_equal(a->a, b->a) && proc_equal(a->b, b->b);
  }
}

template <class T, class Eq>
bool vec_equal(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

bool module_equal(const ModuleDecl& a, const ModuleDecl& b) {
  auto feq = [](const FunctionDecl& x, const FunctionDecl& y) {
    return x.name == y.name && x.arg_sorts == y.arg_sorts && x.result == y.result;
  };
  auto aeq = [](const AtomDecl& x, const AtomDecl& y) {
    return x.name == y.name && x.arg_sorts == y.arg_sorts;
  };
  auto peq = [](const ProcDecl& x, const ProcDecl& y) {
    return x.name == y.name && x.param_sorts == y.param_sorts;
  };
  auto ieq = [](const ImportClause& x, const ImportClause& y) {
    if (x.target != y.target || x.parameterized != y.parameterized) return false;
    if (!x.parameterized) return true;
    if (x.param != y.param || x.via_module != y.via_module) return false;
    if (x.bindings.size() != y.bindings.size() || x.renamings.size() != y.renamings.size())
      return false;
    for (size_t i = 0; i < x.bindings.size(); ++i)
      if (x.bindings[i].formal != y.bindings[i].formal ||
          x.bindings[i].actual != y.bindings[i].actual)
        return false;
    for (size_t i = 0; i < x.renamings.size(); ++i)
      if (x.renamings[i].from != y.renamings[i].from || x.renamings[i].to != y.renamings[i].to)
        return false;
    return true;
  };
  auto deq = [](const SProcessDef& x, const SProcessDef& y) {
    return x.name == y.name && x.formals == y.formals && proc_equal(x.body, y.body);
  };
  return a.kind == b.kind && a.name == b.name && a.parameters == b.parameters &&
         vec_equal(a.exports.functions, b.exports.functions, feq) &&
         vec_equal(a.exports.atoms, b.exports.atoms, aeq) &&
         vec_equal(a.exports.processes, b.exports.processes, peq) &&
         vec_equal(a.imports, b.imports, ieq) && vec_equal(a.atoms, b.atoms, aeq) &&
         vec_equal(a.functions, b.functions, feq) && vec_equal(a.processes, b.processes, peq) &&
         vec_equal(a.definitions, b.definitions, deq);
}

}  // namespace

bool ast_equal(const Spec& a, const Spec& b) {
  return vec_equal(a.modules, b.modules, module_equal);
}

}  // namespace psf
