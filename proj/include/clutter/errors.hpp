#pragma once

#include <stdexcept>
#include <string>

namespace clutter {

// Raised when a computation certified that its input violates a stated
// precondition that operations do not pre-verify (most often cleanness,
// which is expensive to check up front). The certificate text is the
// evidence: an odd cycle, a member of the wrong shape, a mismatching core,
// and so on. Callers that ran in lazy mode surface it; strict mode runs the
// recognition checks first so this never fires.
class certificate_error : public std::runtime_error {
 public:
  std::string kind;
  std::string certificate;

  certificate_error(std::string k, std::string cert)
      : std::runtime_error(k + ": " + cert), kind(std::move(k)), certificate(std::move(cert)) {}
};

}  // namespace clutter
