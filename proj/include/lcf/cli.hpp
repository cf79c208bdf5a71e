#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcf {

/// Entry point behind the laurentcf binary. Returns the process exit
/// code: 0 on success, 2 on validation errors (message on err names the
/// offending flag), 1 on unexpected failures. Identical argument vectors
/// produce byte-identical output, seeded subcommands included.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcf
