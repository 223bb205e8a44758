#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "addchain/chain.hpp"

namespace addchain {

// Textual chain format: comma-separated values, each optionally annotated
// with its operands as value(i,s), e.g. `1,2(0,0),3(0,1),5(1,2)`.
// Steps without annotations get the lexicographically smallest operands.

Chain parse_chain(std::string_view line);

std::string format_chain(const Chain& chain, bool with_operands = true);

/// One chain per line; blank lines and lines starting with '#' are skipped.
std::vector<Chain> read_chain_file(const std::filesystem::path& path);

}  // namespace addchain
