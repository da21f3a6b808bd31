// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ezcasp/term.hpp"

namespace ezcasp::fd {

/// Evaluated argument of a global constraint.
struct GArg {
	enum Kind { Value, List, Op } kind = Value;
	std::int64_t value = 0;
	std::vector<std::int64_t> list;
	std::string op;
};

enum class ArgShape { Value, List, Op };

bool is_comparison_name(const std::string& s);
bool is_connective(const std::string& name, std::size_t arity);
bool is_arith(const std::string& name, std::size_t arity);
bool compare(const std::string& op, std::int64_t a, std::int64_t b);
std::string complement_op(const std::string& op);
std::string mirror_op(const std::string& op);

/// Expected argument shapes of a global constraint; throws for an unknown name.
const std::vector<ArgShape>& global_shape(const std::string& name);
/// Validates shapes and list lengths; throws Error.
void check_global_shape(const std::string& name, const std::vector<GArg>& args);
bool check_global(const std::string& name, const std::vector<GArg>& args);

} // namespace ezcasp::fd
