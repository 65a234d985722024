#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace psf {

struct SourcePos {
  std::string file;
  int line = 0;
  int col = 0;

  std::string str() const {
    if (file.empty() && line == 0) return "<builtin>";
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
  }
};

// All front-end and transformation failures are reported through SpecError.
// `kind` carries the machine-readable class (SyntaxError, UnresolvedImport, ...).
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string kind, const SourcePos& pos, const std::string& msg)
      : std::runtime_error(pos.str() + ": " + msg), kind_(std::move(kind)), pos_(pos) {}
  SpecError(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }

 private:
  std::string kind_;
  SourcePos pos_;
};

// Non-fatal remarks (saturating pred, tooltb-snd alias, ...). Callers that
// care pass a sink; everyone else uses the null default.
struct DiagSink {
  std::vector<std::string> notes;
  void note(const std::string& msg) { notes.push_back(msg); }
};

// PSFCOORD_COLOR={auto|never|always}; `auto` means color iff stderr is a tty.
bool use_color_for_stderr();

std::string error_prefix();  // "error: " with color when enabled

}  // namespace psf
