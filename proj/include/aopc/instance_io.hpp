#pragma once

#include <iosfwd>
#include <string>

#include "aopc/instance.hpp"

namespace aopc {

/// Instance files are JSON documents of the form
///   {"n": 2, "v0": 0.5, "r": [...], "c": [...], "v": [...],
///    "meta": {"phi": 0.25, "gamma": 0.5, "seed": 7}}
/// with 0-based arrays of length n. "meta" is optional. Writers emit doubles
/// with 17 significant digits and a fixed field order, so writing the same
/// instance twice produces identical bytes.
void write_instance(const Instance& inst, std::ostream& os);
void write_instance_file(const Instance& inst, const std::string& path);

/// Parses and validates; throws std::invalid_argument / std::runtime_error
/// on malformed input.
Instance read_instance(std::istream& is);
Instance read_instance_file(const std::string& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace aopc
