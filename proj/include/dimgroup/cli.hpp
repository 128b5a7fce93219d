#pragma once

// Command front door. Exit codes: 0 success, 1 parse error, 2 precondition
// violation (non-primitive / periodic / non-proper input), 3 a configured
// cap was exhausted (partial report emitted).

#include <string>

namespace dimgroup::cli {

enum class Command { info, triple, kgroup, classical, verify, export_dot };
enum class Format { text, json, dot };

struct RunConfig {
  Command command = Command::info;
  std::string input_path;
  int levels = 6;          // B-stabilisation cap / DOT depth; <= 8
  int max_k = 8;           // absorption bound; <= 16
  std::string out;         // empty = stdout
  Format format = Format::text;
  unsigned long seed = 0x5eedULL;  // reserved for randomized suites
  bool triple_diagram = false;     // export-dot: emit the tripled diagram
};

int run(const RunConfig& config);

}  // namespace dimgroup::cli
