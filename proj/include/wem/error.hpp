#pragma once

#include <stdexcept>
#include <string>

namespace wem {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMeasure : Error { using Error::Error; };
struct InvalidInput   : Error { using Error::Error; };
struct DimMismatch    : Error { using Error::Error; };
struct DomainError    : Error { using Error::Error; };
struct Unsupported    : Error { using Error::Error; };
struct InvalidLabel   : Error { using Error::Error; };
struct IoError        : Error { using Error::Error; };
struct VersionError   : Error { using Error::Error; };
struct FormatError    : Error { using Error::Error; };

} // namespace wem
