#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace macoord {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input. offset is a byte position into the offending text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Structurally valid input that violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A well-formed problem instance with no solution: unsatisfiable task,
// unreachable region, or a round window no strategy can hit.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::vector<int> agents = {},
                  int round = -1)
      : Error(what), agents_(std::move(agents)), round_(round) {}
  const std::vector<int>& agents() const { return agents_; }
  int round() const { return round_; }

 private:
  std::vector<int> agents_;
  int round_;
};

// A configured cap (automaton states, enumeration size) was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace macoord
