#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace para {

// Every user-facing failure in the library is a para::Error. The kind is
// stable and machine readable (it ends up in HTTP error bodies); the message
// is for humans.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,
    UnknownSymbol,
    Arity,
    Duplicate,
    Sort,
    Unbound,
    Range,
    Format,
    Version,
    NotFound,
    NotHorn,
    Unsupported,
    Invalid,
  };

  Error(Kind kind, std::string message, std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::move(message)), kind_(kind), position_(position) {}

  Kind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::optional<std::size_t> position_;
};

inline const char* kind_name(Error::Kind k) {
  switch (k) {
    case Error::Kind::Syntax: return "syntax_error";
    case Error::Kind::UnknownSymbol: return "unknown_symbol";
    case Error::Kind::Arity: return "arity_mismatch";
    case Error::Kind::Duplicate: return "duplicate_symbol";
    case Error::Kind::Sort: return "sort_mismatch";
    case Error::Kind::Unbound: return "unbound_variable";
    case Error::Kind::Range: return "out_of_range";
    case Error::Kind::Format: return "malformed_document";
    case Error::Kind::Version: return "version_mismatch";
    case Error::Kind::NotFound: return "not_found";
    case Error::Kind::NotHorn: return "not_horn";
    case Error::Kind::Unsupported: return "unsupported";
    case Error::Kind::Invalid: return "invalid_argument";
  }
  return "error";
}

}  // namespace para
