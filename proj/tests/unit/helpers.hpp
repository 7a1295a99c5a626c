#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folkscope/folksonomy.hpp"

namespace testutil {

inline folkscope::Bookmark bm(std::string user, std::string resource, std::vector<std::string> tags,
                              std::optional<std::uint64_t> order = std::nullopt) {
  return {std::move(user), std::move(resource), std::move(tags), order};
}

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace testutil
