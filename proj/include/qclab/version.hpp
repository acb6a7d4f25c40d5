#ifndef QCLAB_VERSION_HPP
#define QCLAB_VERSION_HPP

namespace qclab {
inline constexpr const char* kToolVersion = "qclab 0.1.0";
}

#endif
