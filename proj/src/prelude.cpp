#include "psf/resolve.hpp"

namespace psf {

// The library modules referenced by the corpus. The paper never exhibits
// their bodies, only their names and the nodes they contribute to the
// animations, so the processes here are the smallest ones consistent with
// that: the control processes are inert, the shutdown processes offer a
// single receive that answers snd-quit / snd-tb-shutdown, and the
// environments are encapsulation boundaries.
Spec load_prelude() {
  const char* text = R"(
data module ArchitectureTypes
begin
end ArchitectureTypes

process module ArchitecturePrimitives
begin
  exports
  begin
    atoms
      snd-quit
  end
  imports
    ArchitectureTypes
end ArchitecturePrimitives

process module Architecture
begin
  exports
  begin
    processes
      Architecture
  end
  parameters
    System
  imports
    ArchitecturePrimitives
  atoms
    rec-quit
  definitions
    ArchitectureControl = delta
    ArchitectureShutdown = rec-quit
end Architecture

process module ToolBusPrimitives
begin
  exports
  begin
    atoms
      snd-tb-shutdown
  end
  imports
    ArchitectureTypes
end ToolBusPrimitives

process module NewTool
begin
  exports
  begin
    processes
      TBProcess
  end
  parameters
    Tool
  imports
    ToolBusPrimitives
end NewTool

process module NewToolBus
begin
  exports
  begin
    processes
      ToolBus
  end
  parameters
    Application
  imports
    ToolBusPrimitives
  atoms
    rec-tb-shutdown
  definitions
    ToolBusControl = delta
    ToolBusShutdown = rec-tb-shutdown
end NewToolBus
)";
  Spec spec = parse_spec(text, "<prelude>");
  spec.prelude_loaded = true;

  // Bodies the surface grammar cannot express (environment boundaries and
  // calls to the formal parameter) are attached here.
  for (auto& m : spec.modules) {
    auto def = [&](const std::string& name, SProc body) {
      SProcessDef d;
      d.name = name;
      d.body = std::move(body);
      d.pos = m.pos;
      m.definitions.push_back(std::move(d));
    };
    auto apply = [&](const std::string& name) {
      auto n = std::make_shared<SProcTerm>();
      n->kind = SProcTerm::Apply;
      n->name = name;
      n->pos = m.pos;
      return n;
    };
    auto par = [&](SProc a, SProc b) {
      auto n = std::make_shared<SProcTerm>();
      n->kind = SProcTerm::Par;
      n->a = std::move(a);
      n->b = std::move(b);
      n->pos = m.pos;
      return n;
    };
    if (m.name == "Architecture") {
      // Architecture = arch-env(System || ArchitectureControl || ArchitectureShutdown)
      auto body = par(par(apply("System"), apply("ArchitectureControl")),
                      apply("ArchitectureShutdown"));
      auto env = std::make_shared<SProcTerm>();
      env->kind = SProcTerm::Apply;
      env->name = "__arch_env";
      env->pos = m.pos;
      env->a = body;  // carried through resolution specially
      SProcessDef d;
      d.name = "Architecture";
      d.body = env;
      d.pos = m.pos;
      m.definitions.push_back(std::move(d));
    } else if (m.name == "NewToolBus") {
      auto body = par(par(apply("Application"), apply("ToolBusControl")),
                      apply("ToolBusShutdown"));
      auto env = std::make_shared<SProcTerm>();
      env->kind = SProcTerm::Apply;
      env->name = "__toolbus_env";
      env->pos = m.pos;
      env->a = body;
      SProcessDef d;
      d.name = "ToolBus";
      d.body = env;
      d.pos = m.pos;
      m.definitions.push_back(std::move(d));
    } else if (m.name == "NewTool") {
      def("TBProcess", apply("Tool"));
    }
  }
  return spec;
}

}  // namespace psf
