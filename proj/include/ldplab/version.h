#ifndef LDPLAB_VERSION_H_
#define LDPLAB_VERSION_H_

namespace ldplab {

inline constexpr const char* kLibraryName = "ldp-lab";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ldplab

#endif  // LDPLAB_VERSION_H_
