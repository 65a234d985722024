#include "psf/eval.hpp"

namespace psf {

namespace {

std::optional<unsigned> numeral_of_normal(DTm t) {
  unsigned n = 0;
  while (true) {
    if (t->head == "^0" && t->args.empty()) return n;
    if (t->head == "succ" && t->args.size() == 1) {
      ++n;
      t = t->args[0];
      continue;
    }
    return std::nullopt;
  }
}

}  // namespace

bool is_numeral(DTm t) { return numeral_value(t).has_value(); }

std::optional<unsigned> numeral_value(DTm t) { return numeral_of_normal(eval(t)); }

DTm eval(DTm t, DiagSink* diag) {
  if (t->is_var) throw SpecError("UnboundVariable", "eval of non-ground term " + t->render());
  std::vector<DTm> args;
  args.reserve(t->args.size());
  for (DTm a : t->args) args.push_back(eval(a, diag));

  if (t->head == "nat" && args.size() == 1) return args[0];
  if (t->head == "pred" && args.size() == 1) {
    if (args[0]->head == "succ" && args[0]->args.size() == 1) return args[0]->args[0];
    if (args[0]->head == "^0" && args[0]->args.empty()) {
      if (diag) diag->note("pred(^0) saturates to ^0");
      return args[0];
    }
  }
  if (t->head == "gt" && args.size() == 2) {
    auto a = numeral_of_normal(args[0]);
    auto b = numeral_of_normal(args[1]);
    if (a && b) return *a > *b ? dt_true() : dt_false();
    if (diag)
      diag->note("gt on non-numeral terms " + args[0]->render() + ", " + args[1]->render() +
                 " is false");
    return dt_false();
  }
  if (t->head == "eq" && args.size() == 2)
    return args[0] == args[1] ? dt_true() : dt_false();

  return dt(t->head, std::move(args));
}

bool eval_guard(DTm lhs, DTm rhs, DiagSink* diag) {
  return eval(lhs, diag) == eval(rhs, diag);
}

DTm substitute(DTm t, const Env& env) {
  if (t->is_var) {
    auto it = env.find(t->head);
    if (it == env.end())
      throw SpecError("UnboundVariable", "unbound variable " + t->head);
    return it->second;
  }
  if (t->args.empty()) return t;
  std::vector<DTm> args;
  args.reserve(t->args.size());
  for (DTm a : t->args) args.push_back(substitute(a, env));
  return dt(t->head, std::move(args));
}

namespace {

ActionLabel substitute_label(const ActionLabel& l, const Env& env) {
  ActionLabel out = l;
  if (out.term) out.term = substitute(out.term, env);
  return out;
}

}  // namespace

Tm substitute(Tm t, const Env& env, DiagSink* diag) {
  switch (t->kind) {
    case TermKind::Ok:
    case TermKind::Delta:
      return t;
    case TermKind::Action:
      return t_act(substitute_label(t->label, env));
    case TermKind::Seq:
      return t_seq(substitute(t->a, env, diag), substitute(t->b, env, diag));
    case TermKind::Alt:
      return t_alt(substitute(t->a, env, diag), substitute(t->b, env, diag));
    case TermKind::Par:
      return t_par(substitute(t->a, env, diag), substitute(t->b, env, diag));
    case TermKind::Star:
      return t_star(substitute(t->a, env, diag), substitute(t->b, env, diag));
    case TermKind::Guard: {
      DTm l = substitute(t->guard_lhs, env);
      DTm r = substitute(t->guard_rhs, env);
      if (!dt_has_var(l) && !dt_has_var(r))
        return eval_guard(l, r, diag) ? substitute(t->a, env, diag) : t_delta();
      return t_guard(l, r, substitute(t->a, env, diag));
    }
    case TermKind::Call: {
      std::vector<DTm> args;
      args.reserve(t->args.size());
      for (DTm a : t->args) args.push_back(substitute(a, env));
      return t_call(t->name, std::move(args));
    }
    case TermKind::Encaps:
      return t_encaps(t->encaps, substitute(t->a, env, diag));
    case TermKind::TagTool:
      return t_tag_tool(t->name, substitute(t->a, env, diag));
  }
  return t;
}

}  // namespace psf
