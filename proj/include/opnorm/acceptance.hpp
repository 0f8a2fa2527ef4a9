#pragma once

#include <ostream>
#include <string>

namespace opnorm::accept {

// Runs the full acceptance suite, printing one pass/fail line per criterion.
// cli_path, when nonempty, locates the command-line binary used by the
// reproducibility criterion; otherwise that criterion runs in-process.
// Returns the number of failed criteria.
int run_all(std::ostream& out, const std::string& cli_path = "");

} // namespace opnorm::accept
