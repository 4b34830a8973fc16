#pragma once

#include "zetadyn/quantum.hpp"

namespace zetadyn::detail {

/// V split so the chaotic operator can weight the psi terms separately.
/// V = (rest + psi1_term) + psi2_term, in that order.
struct PotentialTerms {
    Complex rest{0.0, 0.0};
    double psi1_term = 0.0;
    double psi2_term = 0.0;
};

PotentialTerms potential_terms(const PotentialSpec& spec, double x);

} // namespace zetadyn::detail
