#pragma once

#include <string>

namespace sttrace {

/// "<project version>+<git describe>", fixed at configure time.
std::string version_string();

}  // namespace sttrace
