#ifndef CROSSMOD_BASE_HPP
#define CROSSMOD_BASE_HPP

#include <stdexcept>
#include <string>

namespace crossmod {

// Malformed user input: parse errors, bad JSON, violated call contracts.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input on which the requested computation fails or does not
// apply (non-extendible kernel passed to construct_extension, coset limit
// reached, size bounds exceeded, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crossmod

#endif
