#include "sttrace/version.hpp"

namespace sttrace {

std::string version_string() { return std::string(STTRACE_VERSION_STRING) + "+" + STTRACE_GIT_DESCRIBE; }

}  // namespace sttrace
