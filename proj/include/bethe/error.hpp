#ifndef BETHE_ERROR_HPP
#define BETHE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace bethe {

/// Domain error carrying a stable machine-readable code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace bethe

#endif // BETHE_ERROR_HPP
