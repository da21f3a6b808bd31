// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ezcasp/term.hpp"

namespace ezcasp {

/// Folds ground infix arithmetic. Non-ground subterms are left in place.
Term evaluate_term(const Term& t);

} // namespace ezcasp
