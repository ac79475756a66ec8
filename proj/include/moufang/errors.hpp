#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace moufang {

// Domain error carrying a stable machine-readable kind tag. The CLI prints
// the tag and maps every Error to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace moufang
