#include "psf/core.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

namespace psf {

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

uint64_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

// --- data term interner ---

struct DataKey {
  std::string head;
  std::vector<DTm> args;
  bool is_var;
  bool operator==(const DataKey& o) const {
    return is_var == o.is_var && head == o.head && args == o.args;
  }
};

struct DataKeyHash {
  size_t operator()(const DataKey& k) const {
    uint64_t h = str_hash(k.head) ^ (k.is_var ? 0x5bd1e995 : 0);
    for (DTm a : k.args) h = mix(h, a->hash);
    return h;
  }
};

std::mutex g_data_mu;
std::unordered_map<DataKey, const DataTerm*, DataKeyHash>& data_table() {
  static auto* t = new std::unordered_map<DataKey, const DataTerm*, DataKeyHash>();
  return *t;
}
std::deque<DataTerm>& data_pool() {
  static auto* p = new std::deque<DataTerm>();
  return *p;
}

DTm intern_data(std::string head, std::vector<DTm> args, bool is_var) {
  DataKey key{head, args, is_var};
  std::lock_guard<std::mutex> lk(g_data_mu);
  auto& tab = data_table();
  auto it = tab.find(key);
  if (it != tab.end()) return it->second;
  auto& pool = data_pool();
  pool.push_back(DataTerm{});
  DataTerm& t = pool.back();
  t.head = std::move(head);
  t.args = std::move(args);
  t.is_var = is_var;
  t.hash = DataKeyHash{}(key);
  t.id = static_cast<uint32_t>(pool.size());
  tab.emplace(std::move(key), &t);
  return &t;
}

}  // namespace

DTm dt(const std::string& ctor, std::vector<DTm> args) {
  return intern_data(ctor, std::move(args), false);
}

DTm dt_var(const std::string& name) { return intern_data(name, {}, true); }

DTm dt_num(unsigned n) {
  DTm t = dt_zero();
  for (unsigned i = 0; i < n; ++i) t = dt("succ", {t});
  return t;
}

bool dt_has_var(DTm t) {
  if (t->is_var) return true;
  for (DTm a : t->args)
    if (dt_has_var(a)) return true;
  return false;
}

std::string DataTerm::render() const {
  if (args.empty()) return head;
  std::string s = head + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i]->render();
  }
  return s + ")";
}

int dt_cmp(DTm a, DTm b) {
  if (a == b) return 0;
  if (a->is_var != b->is_var) return a->is_var ? -1 : 1;
  if (int c = a->head.compare(b->head)) return c < 0 ? -1 : 1;
  if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (int c = dt_cmp(a->args[i], b->args[i])) return c;
  return 0;
}

// --- action labels ---

std::string ActionLabel::render() const {
  switch (payload) {
    case Payload::None:
      return name;
    case Payload::Conn:
      return name + "(" + from + " >> " + to + ", " + term->render() + ")";
    case Payload::Msg:
      return name + "(" + from + ", " + to + ", " + term->render() + ")";
    case Payload::ToolSide:
      return name + "(" + tool + ", " + term->render() + ")";
    case Payload::Term:
      if (!tool.empty()) return name + "(" + term->render() + ")@" + tool;
      return name + "(" + term->render() + ")";
  }
  return name;
}

bool ActionLabel::operator==(const ActionLabel& o) const {
  return payload == o.payload && name == o.name && from == o.from && to == o.to &&
         tool == o.tool && term == o.term;
}

uint64_t ActionLabel::hash() const {
  uint64_t h = str_hash(name);
  h = mix(h, static_cast<uint64_t>(payload));
  h = mix(h, str_hash(from));
  h = mix(h, str_hash(to));
  h = mix(h, str_hash(tool));
  h = mix(h, term ? term->hash : 0);
  return h;
}

int action_cmp(const ActionLabel& a, const ActionLabel& b) {
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.payload != b.payload) return a.payload < b.payload ? -1 : 1;
  if (int c = a.from.compare(b.from)) return c < 0 ? -1 : 1;
  if (int c = a.to.compare(b.to)) return c < 0 ? -1 : 1;
  if (int c = a.tool.compare(b.tool)) return c < 0 ? -1 : 1;
  if (a.term != b.term) {
    if (!a.term) return -1;
    if (!b.term) return 1;
    return dt_cmp(a.term, b.term);
  }
  return 0;
}

ActionLabel act_atom(const std::string& name) {
  ActionLabel l;
  l.name = name;
  return l;
}

ActionLabel act_conn(const std::string& name, const std::string& from, const std::string& to, DTm term) {
  ActionLabel l;
  l.name = name;
  l.payload = Payload::Conn;
  l.from = from;
  l.to = to;
  l.term = term;
  return l;
}

ActionLabel act_msg(const std::string& name, const std::string& src, const std::string& dst, DTm term) {
  ActionLabel l;
  l.name = name;
  l.payload = Payload::Msg;
  l.from = src;
  l.to = dst;
  l.term = term;
  return l;
}

ActionLabel act_toolside(const std::string& name, const std::string& tool, DTm term) {
  ActionLabel l;
  l.name = name;
  l.payload = Payload::ToolSide;
  l.tool = tool;
  l.term = term;
  return l;
}

ActionLabel act_term(const std::string& name, DTm term) {
  ActionLabel l;
  l.name = name;
  l.payload = Payload::Term;
  l.term = term;
  return l;
}

bool is_tb_action(const std::string& n) {
  return n == "tb-snd-msg" || n == "tb-rec-msg" || n == "tb-rec-event" ||
         n == "tb-snd-ack-event" || n == "tb-snd-do" || n == "tb-snd-eval" ||
         n == "tb-rec-value";
}

bool is_tooltb_action(const std::string& n) {
  return n == "tooltb-snd-event" || n == "tooltb-rec-ack-event" || n == "tooltb-rec" ||
         n == "tooltb-snd-value";
}

bool is_comm_result(const std::string& n) {
  return n.rfind("comm-", 0) == 0 || n == "system-terminated";
}

// --- process term interner ---

namespace {

struct TermKey {
  TermKind kind;
  Tm a;
  Tm b;
  ActionLabel label;
  DTm gl;
  DTm gr;
  std::string name;
  std::vector<DTm> args;
  EncapsSet encaps;

  bool operator==(const TermKey& o) const {
    return kind == o.kind && a == o.a && b == o.b && label == o.label && gl == o.gl &&
           gr == o.gr && name == o.name && args == o.args && encaps == o.encaps;
  }
};

struct TermKeyHash {
  size_t operator()(const TermKey& k) const {
    uint64_t h = static_cast<uint64_t>(k.kind);
    h = mix(h, k.a ? k.a->hash : 0);
    h = mix(h, k.b ? k.b->hash : 0);
    h = mix(h, k.label.hash());
    h = mix(h, k.gl ? k.gl->hash : 0);
    h = mix(h, k.gr ? k.gr->hash : 0);
    h = mix(h, str_hash(k.name));
    for (DTm t : k.args) h = mix(h, t->hash);
    h = mix(h, static_cast<uint64_t>(k.encaps));
    return h;
  }
};

std::mutex g_term_mu;
std::unordered_map<TermKey, Tm, TermKeyHash>& term_table() {
  static auto* t = new std::unordered_map<TermKey, Tm, TermKeyHash>();
  return *t;
}
std::deque<Term>& term_pool() {
  static auto* p = new std::deque<Term>();
  return *p;
}

Tm intern_term(TermKey key) {
  std::lock_guard<std::mutex> lk(g_term_mu);
  auto& tab = term_table();
  auto it = tab.find(key);
  if (it != tab.end()) return it->second;
  auto& pool = term_pool();
  pool.push_back(Term{key.kind});
  Term& t = pool.back();
  t.a = key.a;
  t.b = key.b;
  t.label = key.label;
  t.guard_lhs = key.gl;
  t.guard_rhs = key.gr;
  t.name = key.name;
  t.args = key.args;
  t.encaps = key.encaps;
  t.hash = TermKeyHash{}(key);
  t.id = static_cast<uint32_t>(pool.size());
  tab.emplace(std::move(key), &t);
  return &t;
}

Tm mk(TermKind k, Tm a = nullptr, Tm b = nullptr) {
  TermKey key{};
  key.kind = k;
  key.a = a;
  key.b = b;
  return intern_term(std::move(key));
}

}  // namespace

Tm t_ok() {
  static Tm t = mk(TermKind::Ok);
  return t;
}

Tm t_delta() {
  static Tm t = mk(TermKind::Delta);
  return t;
}

Tm t_act(ActionLabel l) {
  TermKey key{};
  key.kind = TermKind::Action;
  key.label = std::move(l);
  return intern_term(std::move(key));
}

Tm t_seq(Tm a, Tm b) {
  if (a->kind == TermKind::Ok) return b;
  if (b->kind == TermKind::Ok) return a;
  return mk(TermKind::Seq, a, b);
}

Tm t_alt(Tm a, Tm b) { return mk(TermKind::Alt, a, b); }

Tm t_par(Tm a, Tm b) {
  if (a->kind == TermKind::Ok) return b;
  if (b->kind == TermKind::Ok) return a;
  return mk(TermKind::Par, a, b);
}

Tm t_star(Tm body, Tm exit) { return mk(TermKind::Star, body, exit); }

Tm t_guard(DTm lhs, DTm rhs, Tm then) {
  // Ground guards are folded away by the substitution pass (eval layer).
  TermKey key{};
  key.kind = TermKind::Guard;
  key.a = then;
  key.gl = lhs;
  key.gr = rhs;
  return intern_term(std::move(key));
}

Tm t_call(const std::string& name, std::vector<DTm> args) {
  TermKey key{};
  key.kind = TermKind::Call;
  key.name = name;
  key.args = std::move(args);
  return intern_term(std::move(key));
}

Tm t_encaps(EncapsSet s, Tm body) {
  if (body->kind == TermKind::Ok) return body;
  TermKey key{};
  key.kind = TermKind::Encaps;
  key.a = body;
  key.encaps = s;
  return intern_term(std::move(key));
}

Tm t_tag_tool(const std::string& tool, Tm body) {
  if (body->kind == TermKind::Ok) return body;
  TermKey key{};
  key.kind = TermKind::TagTool;
  key.a = body;
  key.name = tool;
  return intern_term(std::move(key));
}

int term_cmp(Tm x, Tm y) {
  if (x == y) return 0;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case TermKind::Ok:
    case TermKind::Delta:
      return 0;
    case TermKind::Action:
      return action_cmp(x->label, y->label);
    case TermKind::Seq:
    case TermKind::Alt:
    case TermKind::Par:
    case TermKind::Star:
      if (int c = term_cmp(x->a, y->a)) return c;
      return term_cmp(x->b, y->b);
    case TermKind::Guard:
      if (int c = dt_cmp(x->guard_lhs, y->guard_lhs)) return c;
      if (int c = dt_cmp(x->guard_rhs, y->guard_rhs)) return c;
      return term_cmp(x->a, y->a);
    case TermKind::Call: {
      if (int c = x->name.compare(y->name)) return c < 0 ? -1 : 1;
      if (x->args.size() != y->args.size()) return x->args.size() < y->args.size() ? -1 : 1;
      for (size_t i = 0; i < x->args.size(); ++i)
        if (int c = dt_cmp(x->args[i], y->args[i])) return c;
      return 0;
    }
    case TermKind::Encaps:
      if (x->encaps != y->encaps) return x->encaps < y->encaps ? -1 : 1;
      return term_cmp(x->a, y->a);
    case TermKind::TagTool:
      if (int c = x->name.compare(y->name)) return c < 0 ? -1 : 1;
      return term_cmp(x->a, y->a);
  }
  return 0;
}

namespace {

void flatten(TermKind k, Tm t, std::vector<Tm>& out) {
  if (t->kind == k) {
    flatten(k, t->a, out);
    flatten(k, t->b, out);
  } else {
    out.push_back(t);
  }
}

std::mutex g_canon_mu;
std::unordered_map<Tm, Tm>& canon_cache() {
  static auto* c = new std::unordered_map<Tm, Tm>();
  return *c;
}

}  // namespace

Tm canonical(Tm t) {
  {
    std::lock_guard<std::mutex> lk(g_canon_mu);
    auto it = canon_cache().find(t);
    if (it != canon_cache().end()) return it->second;
  }
  Tm result = t;
  switch (t->kind) {
    case TermKind::Ok:
    case TermKind::Delta:
    case TermKind::Action:
    case TermKind::Call:
      break;
    case TermKind::Seq:
      result = t_seq(canonical(t->a), canonical(t->b));
      break;
    case TermKind::Star:
      result = t_star(canonical(t->a), canonical(t->b));
      break;
    case TermKind::Guard:
      result = t_guard(t->guard_lhs, t->guard_rhs, canonical(t->a));
      break;
    case TermKind::Encaps:
      result = t_encaps(t->encaps, canonical(t->a));
      break;
    case TermKind::TagTool:
      result = t_tag_tool(t->name, canonical(t->a));
      break;
    case TermKind::Alt:
    case TermKind::Par: {
      std::vector<Tm> kids;
      flatten(t->kind, t, kids);
      for (Tm& k : kids) k = canonical(k);
      std::sort(kids.begin(), kids.end(), [](Tm a, Tm b) { return term_cmp(a, b) < 0; });
      Tm acc = kids.back();
      for (size_t i = kids.size() - 1; i-- > 0;)
        acc = t->kind == TermKind::Alt ? t_alt(kids[i], acc) : t_par(kids[i], acc);
      result = acc;
      break;
    }
  }
  std::lock_guard<std::mutex> lk(g_canon_mu);
  canon_cache().emplace(t, result);
  return result;
}

namespace {

int prec(TermKind k) {
  switch (k) {
    case TermKind::Par: return 0;
    case TermKind::Alt: return 1;
    case TermKind::Star: return 2;
    case TermKind::Seq: return 3;
    default: return 4;
  }
}

void render_term(Tm t, int outer, std::string& s) {
  int p = prec(t->kind);
  bool paren = p < outer;
  if (paren) s += "(";
  switch (t->kind) {
    case TermKind::Ok: s += "ok"; break;
    case TermKind::Delta: s += "delta"; break;
    case TermKind::Action: s += t->label.render(); break;
    case TermKind::Seq:
      render_term(t->a, p, s);
      s += " . ";
      render_term(t->b, p, s);
      break;
    case TermKind::Alt:
      render_term(t->a, p, s);
      s += " + ";
      render_term(t->b, p, s);
      break;
    case TermKind::Par:
      render_term(t->a, p, s);
      s += " || ";
      render_term(t->b, p, s);
      break;
    case TermKind::Star:
      render_term(t->a, p + 1, s);
      s += " * ";
      render_term(t->b, p + 1, s);
      break;
    case TermKind::Guard:
      s += "[" + t->guard_lhs->render() + " = " + t->guard_rhs->render() + "] -> ";
      render_term(t->a, 4, s);
      break;
    case TermKind::Call:
      s += t->name;
      if (!t->args.empty()) {
        s += "(";
        for (size_t i = 0; i < t->args.size(); ++i) {
          if (i) s += ", ";
          s += t->args[i]->render();
        }
        s += ")";
      }
      break;
    case TermKind::Encaps:
      s += t->encaps == EncapsSet::Architecture ? "arch-env[" : "toolbus-env[";
      render_term(t->a, 0, s);
      s += "]";
      break;
    case TermKind::TagTool:
      s += "tool<" + t->name + ">[";
      render_term(t->a, 0, s);
      s += "]";
      break;
  }
  if (paren) s += ")";
}

}  // namespace

std::string Term::render() const {
  std::string s;
  render_term(this, 0, s);
  return s;
}

size_t interned_data_terms() {
  std::lock_guard<std::mutex> lk(g_data_mu);
  return data_pool().size();
}

size_t interned_process_terms() {
  std::lock_guard<std::mutex> lk(g_term_mu);
  return term_pool().size();
}

}  // namespace psf
