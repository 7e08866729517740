#pragma once

#include "vtomo/field.hpp"

namespace vtomo {

/// d on scalars: central differences in the interior, one-sided on the
/// boundary ring.
CovectorField gradient(const ScalarField& phi);

/// div f = d1 f1 + d2 f2 with the same stencil policy.
ScalarField divergence(const CovectorField& f);

/// Hodge star of df: d1 f2 - d2 f1 (n = 2 only).
ScalarField curl2d(const CovectorField& f);

/// Convolution with the standard bump j_eps, normalized to unit mass on the
/// grid. Requires eps >= 2h.
ScalarField mollify(const ScalarField& f, Scalar eps);
CovectorField mollify(const CovectorField& f, Scalar eps);

/// Unnormalized standard mollifier profile exp(-1/(1-|x/eps|^2)) for |x|<eps.
Scalar mollifier_profile(Scalar r, Scalar eps);

}  // namespace vtomo
