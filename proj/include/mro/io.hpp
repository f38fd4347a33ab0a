#pragma once

#include <string>

#include "mro/instance.hpp"

namespace mro {

// Reads a JSON instance file (schema in docs/format.md), converts any
// declared ms/mW/Mbit/Mbps quantities to SI and validates every
// invariant. Throws ParseError or ValidationError.
Instance load_instance(const std::string& path);

Instance instance_from_json_text(const std::string& text);

// Writes the instance in SI units; load(save(x)) == x.
void save_instance(const Instance& inst, const std::string& path);

std::string instance_to_json_text(const Instance& inst);

}  // namespace mro
