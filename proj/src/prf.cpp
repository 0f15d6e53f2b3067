#include "anchored/prf.hpp"

namespace anchored {

Fingerprint fingerprint_bytes(std::string_view bytes) noexcept {
  Fingerprint h = kFingerprintInit;
  for (char c : bytes) h = fold_byte(h, static_cast<std::uint8_t>(c));
  return h;
}

}  // namespace anchored
