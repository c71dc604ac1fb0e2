#ifndef OBP_VERSION_HPP
#define OBP_VERSION_HPP

namespace obp {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
