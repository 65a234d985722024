#pragma once

#include "psf/resolve.hpp"

namespace psf {

struct Transition {
  ActionLabel label;
  Tm target;
};

// A state of a running system: a process term plus the definitions it may
// unfold. Encapsulation boundaries and tool tags live inside the term.
struct Configuration {
  Tm term = nullptr;
  const FlatSpec* defs = nullptr;

  bool terminated() const { return term->kind == TermKind::Ok; }
};

// Handshaking table. Payloads must agree: snd/rec need the same connection
// and term, messages the same (src, dst, term), and every tb/tooltb pair the
// same tool identity and term. Returns nothing for non-communicating pairs.
std::optional<ActionLabel> communicate(const ActionLabel& a, const ActionLabel& b);

bool label_blocked(EncapsSet set, const ActionLabel& l);

// All transitions of `term` under the given definitions. Call unfolding is
// silent and guarded by a fuse: more than `fuse` unfoldings in one call
// raises RecursionFuseBlown.
std::vector<Transition> enabled(Tm term, const FlatSpec& defs, DiagSink* diag = nullptr,
                                int fuse = 10000);

inline std::vector<Transition> enabled(const Configuration& c, DiagSink* diag = nullptr) {
  return enabled(c.term, *c.defs, diag);
}

// Bounded trace language of a term: all label-name sequences of length <= depth.
std::set<std::vector<std::string>> trace_set(Tm term, const FlatSpec& defs, int depth);

// Checks x*y against its unfolding x.(x*y) + y on trace sets up to `depth`.
bool unfold_star_law_check(Tm x, Tm y, const FlatSpec& defs, int depth);

}  // namespace psf
