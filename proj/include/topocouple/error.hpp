#pragma once

#include <stdexcept>
#include <string>

namespace topocouple {

/// Pipeline failure tagged with the stage that raised it ("groups",
/// "window", "moduli", "scale", "partition", "psi", "orbit", "certify",
/// "config", "report").
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace topocouple
