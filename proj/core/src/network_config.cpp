#include "spreadnet/network_config.hpp"

#include <cmath>
#include <string>

#include "spreadnet/errors.hpp"

namespace spreadnet {

void NetworkConfig::validate() const {
  if (n_bs < 0) throw ValidationError("NetworkConfig: n_bs must be >= 0");
  if (n_mu < 0) throw ValidationError("NetworkConfig: n_mu must be >= 0");
  if (n_src < 0) throw ValidationError("NetworkConfig: n_src must be >= 0");
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw ValidationError("NetworkConfig: area must be positive and finite");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("NetworkConfig: beta must be >= 0 and finite");
  }
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw ValidationError("NetworkConfig: alpha must be > 2 and finite");
  }
  if (!(power_cap > 0.0) || !std::isfinite(power_cap)) {
    throw ValidationError("NetworkConfig: power_cap must be positive and finite");
  }
  if (slot_cap < 1) throw ValidationError("NetworkConfig: slot_cap must be >= 1");
  if (!(target_ratio >= 0.0 && target_ratio < 1.0)) {
    throw ValidationError("NetworkConfig: target_ratio must be in [0, 1)");
  }
}

}  // namespace spreadnet
