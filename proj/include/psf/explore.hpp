#pragma once

#include <functional>
#include <iosfwd>

#include "psf/semantics.hpp"

namespace psf {

struct ExploreBounds {
  size_t max_states = 100000;
  size_t max_depth = 10000;
  size_t max_transitions = 1u << 22;
};

struct LtsTransition {
  size_t source;
  ActionLabel label;
  size_t target;
};

struct Lts {
  std::vector<Tm> states;            // representative terms, index = state id
  std::vector<bool> expanded;        // false for frontier states cut by bounds
  std::vector<bool> terminated;      // successful termination / post-shutdown
  std::vector<LtsTransition> transitions;
  std::vector<std::vector<size_t>> out;  // outgoing transition indices per state
  size_t initial = 0;
  bool frontier_exhausted = false;
  const FlatSpec* defs = nullptr;
};

struct ExploreOptions {
  ExploreBounds bounds;
  bool parallel = false;  // OpenMP frontier expansion; result is identical
};

// Breadth-first exploration with visited-state deduplication by the
// commutative canonical form. State numbering is deterministic: discovery
// order under the term's own transition enumeration.
Lts explore(const Configuration& root, const ExploreOptions& opts = {});

// Serial reference implementation, kept verbatim for testing the parallel path.
Lts explore_serial(const Configuration& root, const ExploreBounds& bounds);

// Zero-successor states that are neither terminated nor post-shutdown.
// Emits an IncompleteExploration note when the frontier was cut.
std::vector<size_t> deadlocks(const Lts& lts, DiagSink* diag = nullptr);

enum class TraceStatus { Terminated, Deadlocked, BoundReached };

struct Trace {
  std::vector<ActionLabel> labels;
  TraceStatus status = TraceStatus::BoundReached;
};

struct SimulatePolicy {
  enum Kind { FirstEnabled, SeededRandom } kind = FirstEnabled;
  uint64_t seed = 0;

  static SimulatePolicy first_enabled() { return {FirstEnabled, 0}; }
  static SimulatePolicy seeded(uint64_t seed) { return {SeededRandom, seed}; }
};

Trace simulate(const Configuration& root, const SimulatePolicy& policy, size_t max_steps);

std::string trace_status_name(TraceStatus s);

// One line per step: "<index>\t<action>\t<payload>", then "#status <...>".
std::string render_trace(const Trace& t);
// JSON-lines variant with fields {step, action, payload, state}.
std::string render_trace_json(const Trace& t, const Configuration& root);

// Terminal stepper: prints numbered transitions, reads an index (or q).
// Returns the walked trace. Streams are injectable for tests.
Trace step_interactive(const Configuration& root, std::istream& in, std::ostream& out);

// True when every labels[i] is enabled in sequence from root.
bool replay(const Configuration& root, const std::vector<ActionLabel>& labels);

}  // namespace psf
