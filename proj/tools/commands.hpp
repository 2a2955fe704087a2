// commands.hpp: the abelcs command-line front end, callable in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "abelcs/homology.hpp"
#include "abelcs/matrix.hpp"

namespace abelcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitBudget = 4;

/// Environment variable overriding the default term budget.
inline constexpr const char* kBudgetEnv = "ABELCS_BUDGET";

/// "n m" header, n rows of m integers, '#' comment lines. Throws ParseError.
IntMatrix parse_matrix_file(std::string_view text);

/// Canonical MatrixFile text: header, then one space-separated row per line.
std::string format_matrix_file(const IntMatrix& m);

/// Inline "[[a,b],[c,d]]" matrix. Throws ParseError.
IntMatrix parse_inline_matrix(std::string_view text);

/// `unknot:f`, `hopf:f1,f2`, `borromean` or `lens:p,q`. Throws ParseError on bad grammar.
ManifoldPresentation parse_preset(std::string_view text);

/// Matrix argument: inline "[[..]]", "-" for standard input, otherwise a file path.
IntMatrix load_matrix(const std::string& arg, std::istream& in);

/// Manifold argument: an existing file, a preset, or an inline matrix.
ManifoldPresentation load_manifold(const std::string& arg, std::istream& in);

/// Runs one command line (without the program name). Output goes to `out`; a one-line
/// diagnostic goes to `err` on failure. Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace abelcs::cli
