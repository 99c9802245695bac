#ifndef TTDM_ERROR_HPP_
#define TTDM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttdm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Malformed input. `position` is a 1-based line number or a byte offset. */
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/** A configuration value violates its constraint. */
class ConfigError : public Error {
 public:
  ConfigError(const std::string &field, const std::string &what)
      : Error(field + ": " + what), field_(field) {}
  const std::string &field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace ttdm

#endif  // TTDM_ERROR_HPP_
