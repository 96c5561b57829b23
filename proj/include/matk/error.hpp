#pragma once

#include <stdexcept>
#include <string>

namespace matk {

/**
 * Domain error raised by every module of the library.
 *
 * The code is a stable identifier such as "FacetUsesUnknownLabel" or
 * "NoSolution"; the message carries human-readable context.  The command
 * line front end reports both as a structured JSON object.
 */
class Error : public std::runtime_error
{
  public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)),
          detail_(message)
    {
    }

    const std::string& code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    std::string code_;
    std::string detail_;
};

}  // namespace matk
