#pragma once

#include <string>
#include <vector>

namespace tick {

// A positioned message produced by the frontend. Lines and columns are
// 1-based and always point inside the input text.
struct Diagnostic {
  int line = 1;
  int column = 1;
  std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diags);

}  // namespace tick
