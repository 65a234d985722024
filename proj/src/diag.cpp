#include "psf/diag.hpp"

#include <cstdio>
#include <unistd.h>

namespace psf {

bool use_color_for_stderr() {
  const char* v = std::getenv("PSFCOORD_COLOR");
  std::string mode = v ? v : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(fileno(stderr));
}

std::string error_prefix() {
  return use_color_for_stderr() ? "\x1b[31merror:\x1b[0m " : "error: ";
}

}  // namespace psf
