#ifndef CBF_ERRORS_HPP
#define CBF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cbf {

// Invalid argument values (bad k, non-positive ratio, empty input set, ...).
class ParamError : public std::runtime_error {
public:
    explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual or binary input (FASTA syntax, index file corruption).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem and stream failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cbf

#endif
