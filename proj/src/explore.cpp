#include "psf/explore.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psf {

namespace {

struct Builder {
  Lts lts;
  std::unordered_map<Tm, size_t> index;  // canonical term -> state id

  size_t add_state(Tm term) {
    Tm canon = canonical(term);
    auto it = index.find(canon);
    if (it != index.end()) return it->second;
    size_t id = lts.states.size();
    index.emplace(canon, id);
    lts.states.push_back(term);
    lts.expanded.push_back(false);
    lts.terminated.push_back(term->kind == TermKind::Ok);
    lts.out.emplace_back();
    return id;
  }
};

}  // namespace

Lts explore_serial(const Configuration& root, const ExploreBounds& bounds) {
  Builder b;
  b.lts.defs = root.defs;
  b.lts.initial = b.add_state(root.term);
  std::vector<size_t> frontier{b.lts.initial};
  size_t depth = 0;
  bool cut = false;
  while (!frontier.empty() && depth < bounds.max_depth) {
    std::vector<size_t> next;
    for (size_t sid : frontier) {
      if (b.lts.expanded[sid]) continue;
      if (b.lts.states.size() > bounds.max_states ||
          b.lts.transitions.size() > bounds.max_transitions) {
        cut = true;
        break;
      }
      b.lts.expanded[sid] = true;
      for (auto& tr : enabled(b.lts.states[sid], *root.defs)) {
        size_t before = b.lts.states.size();
        size_t tgt = b.add_state(tr.target);
        b.lts.out[sid].push_back(b.lts.transitions.size());
        b.lts.transitions.push_back({sid, tr.label, tgt});
        if (tgt == before) next.push_back(tgt);
      }
    }
    if (cut) break;
    frontier = std::move(next);
    ++depth;
  }
  b.lts.frontier_exhausted = !cut && depth < bounds.max_depth;
  if (frontier.empty()) b.lts.frontier_exhausted = !cut;
  return std::move(b.lts);
}

namespace {

// Frontier expansion in parallel; merge in frontier order so numbering is
// identical to the serial run.
Lts explore_parallel(const Configuration& root, const ExploreBounds& bounds) {
  Builder b;
  b.lts.defs = root.defs;
  b.lts.initial = b.add_state(root.term);
  std::vector<size_t> frontier{b.lts.initial};
  size_t depth = 0;
  bool cut = false;
  while (!frontier.empty() && depth < bounds.max_depth) {
    std::vector<std::vector<Transition>> batches(frontier.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long i = 0; i < static_cast<long>(frontier.size()); ++i)
      batches[i] = enabled(b.lts.states[frontier[i]], *root.defs);

    std::vector<size_t> next;
    for (size_t i = 0; i < frontier.size(); ++i) {
      size_t sid = frontier[i];
      if (b.lts.expanded[sid]) continue;
      if (b.lts.states.size() > bounds.max_states ||
          b.lts.transitions.size() > bounds.max_transitions) {
        cut = true;
        break;
      }
      b.lts.expanded[sid] = true;
      for (auto& tr : batches[i]) {
        size_t before = b.lts.states.size();
        size_t tgt = b.add_state(tr.target);
        b.lts.out[sid].push_back(b.lts.transitions.size());
        b.lts.transitions.push_back({sid, tr.label, tgt});
        if (tgt == before) next.push_back(tgt);
      }
    }
    if (cut) break;
    frontier = std::move(next);
    ++depth;
  }
  b.lts.frontier_exhausted = !cut && depth < bounds.max_depth;
  if (frontier.empty()) b.lts.frontier_exhausted = !cut;
  return std::move(b.lts);
}

}  // namespace

Lts explore(const Configuration& root, const ExploreOptions& opts) {
  return opts.parallel ? explore_parallel(root, opts.bounds)
                       : explore_serial(root, opts.bounds);
}

std::vector<size_t> deadlocks(const Lts& lts, DiagSink* diag) {
  if (!lts.frontier_exhausted && diag)
    diag->note("IncompleteExploration: deadlock list is a lower bound");
  std::vector<size_t> out;
  for (size_t i = 0; i < lts.states.size(); ++i) {
    if (!lts.expanded[i]) continue;  // cut frontier states are unknown
    if (lts.out[i].empty() && !lts.terminated[i]) out.push_back(i);
  }
  return out;
}

Trace simulate(const Configuration& root, const SimulatePolicy& policy, size_t max_steps) {
  Trace trace;
  std::mt19937_64 rng(policy.seed);
  Tm cur = root.term;
  for (size_t step = 0; step < max_steps; ++step) {
    if (cur->kind == TermKind::Ok) {
      trace.status = TraceStatus::Terminated;
      return trace;
    }
    auto trs = enabled(cur, *root.defs);
    if (trs.empty()) {
      trace.status = TraceStatus::Deadlocked;
      return trace;
    }
    size_t pick = 0;
    if (policy.kind == SimulatePolicy::SeededRandom)
      pick = std::uniform_int_distribution<size_t>(0, trs.size() - 1)(rng);
    trace.labels.push_back(trs[pick].label);
    cur = trs[pick].target;
  }
  if (cur->kind == TermKind::Ok)
    trace.status = TraceStatus::Terminated;
  else
    trace.status = enabled(cur, *root.defs).empty() ? TraceStatus::Deadlocked
                                                    : TraceStatus::BoundReached;
  return trace;
}

std::string trace_status_name(TraceStatus s) {
  switch (s) {
    case TraceStatus::Terminated: return "terminated";
    case TraceStatus::Deadlocked: return "deadlocked";
    case TraceStatus::BoundReached: return "bound-reached";
  }
  return "bound-reached";
}

namespace {

std::string payload_text(const ActionLabel& l) {
  switch (l.payload) {
    case Payload::None: return "";
    case Payload::Conn: return l.from + " >> " + l.to + ", " + l.term->render();
    case Payload::Msg: return l.from + ", " + l.to + ", " + l.term->render();
    case Payload::ToolSide: return l.tool + ", " + l.term->render();
    case Payload::Term:
      return l.tool.empty() ? l.term->render() : l.term->render() + " @" + l.tool;
  }
  return "";
}

}  // namespace

std::string render_trace(const Trace& t) {
  std::string out;
  for (size_t i = 0; i < t.labels.size(); ++i)
    out += std::to_string(i) + "\t" + t.labels[i].name + "\t" + payload_text(t.labels[i]) + "\n";
  out += "#status " + trace_status_name(t.status) + "\n";
  return out;
}

std::string render_trace_json(const Trace& t, const Configuration& root) {
  std::string out;
  Tm cur = root.term;
  for (size_t i = 0; i < t.labels.size(); ++i) {
    // replay to recover the state rendering per step
    auto trs = enabled(cur, *root.defs);
    Tm next = cur;
    for (auto& tr : trs)
      if (tr.label == t.labels[i]) {
        next = tr.target;
        break;
      }
    nlohmann::json j;
    j["step"] = i;
    j["action"] = t.labels[i].name;
    j["payload"] = payload_text(t.labels[i]);
    j["state"] = next->render();
    out += j.dump() + "\n";
    cur = next;
  }
  nlohmann::json j;
  j["status"] = trace_status_name(t.status);
  out += j.dump() + "\n";
  return out;
}

Trace step_interactive(const Configuration& root, std::istream& in, std::ostream& out) {
  Trace trace;
  Tm cur = root.term;
  while (true) {
    if (cur->kind == TermKind::Ok) {
      out << "terminated\n";
      trace.status = TraceStatus::Terminated;
      return trace;
    }
    auto trs = enabled(cur, *root.defs);
    if (trs.empty()) {
      out << "deadlock\n";
      trace.status = TraceStatus::Deadlocked;
      return trace;
    }
    for (size_t i = 0; i < trs.size(); ++i)
      out << "  [" << i << "] " << trs[i].label.render() << "\n";
    out << "step> " << std::flush;
    std::string line;
    if (!std::getline(in, line) || line == "q") {
      trace.status = TraceStatus::BoundReached;
      return trace;
    }
    size_t idx = 0;
    try {
      idx = std::stoul(line);
    } catch (...) {
      out << "invalid choice: " << line << "\n";
      continue;
    }
    if (idx >= trs.size()) {
      out << "invalid choice: " << line << "\n";
      continue;
    }
    trace.labels.push_back(trs[idx].label);
    cur = trs[idx].target;
  }
}

bool replay(const Configuration& root, const std::vector<ActionLabel>& labels) {
  Tm cur = root.term;
  for (const auto& l : labels) {
    bool found = false;
    for (auto& tr : enabled(cur, *root.defs))
      if (tr.label == l) {
        cur = tr.target;
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace psf
