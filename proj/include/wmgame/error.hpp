#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wmgame {

// Category decides the process exit code at the CLI boundary:
// usage/parse -> 1, validation -> 2, solver -> 3, io -> 4.
enum class ErrorCategory { kUsage, kParse, kValidation, kSolver, kIo };

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCategory category, std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail),
        category_(category),
        name_(std::move(name)) {}

  ErrorCategory category() const { return category_; }
  // Machine-grepable identifier, always the first token of what().
  const std::string& name() const { return name_; }

 private:
  ErrorCategory category_;
  std::string name_;
};

}  // namespace wmgame
