#include "restframe/errors.hpp"

namespace restframe {

RelativisticNonSeparability::RelativisticNonSeparability(int which)
    : Error("RelativisticNonSeparability: cannot trace out particle " + std::to_string(which == 1 ? 2 : 1) +
            " to obtain a subsystem for particle " + std::to_string(which) +
            ". Once the rest-frame conditions hold, the world-lines and momenta of the particles are "
            "derived from the relative variables and the external center of mass, so no separable "
            "single-particle subsystem exists. Single-particle subsystems exist only before the "
            "rest-frame conditions are imposed; the only admissible factorization is presentation C "
            "(frozen Jacobi center of mass ⊗ relative motion)."),
      which_(which) {}

}  // namespace restframe
