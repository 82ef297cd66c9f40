#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace relkit::detail {

/// (path relative to stdlib/, contents) for every bundled file, sorted by path.
const std::vector<std::pair<std::string_view, std::string_view>>& stdlibFiles();

}  // namespace relkit::detail
