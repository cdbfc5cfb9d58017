#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tick/diagnostics.hpp"
#include "tick/program.hpp"

namespace tick {

template <typename T>
struct ParseOutcome {
  T value{};
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Parses a full .tick file: thread blocks plus trailing property blocks.
ParseOutcome<SourceProgram> parse_program(const std::string& text);

// Parses a single property expression against an already-parsed program.
ParseOutcome<Property> parse_property(const std::string& text,
                                      const SourceProgram& program,
                                      const std::string& name = "property");

}  // namespace tick
