#pragma once

#include <stdexcept>
#include <string>

namespace kpz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct InvalidQuery : Error { using Error::Error; };
struct InvalidLaw : Error { using Error::Error; };
struct OutOfWindow : Error { using Error::Error; };
struct AccuracyFailure : Error { using Error::Error; };

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

} // namespace kpz
