#pragma once

// Lattice files: {"n": N, "gram": [[e, ...], ...]} where each entry is a
// decimal integer or "p/q" string. Plain JSON integers are accepted on input;
// output always uses strings, so no precision is lost in any JSON parser.

#include <span>
#include <string>

#include "json.hpp"
#include "latiso/lattice.hpp"

namespace latiso {

using Json = nlohmann::json;

/// Symmetric n x n Gram from a lattice file object (no definiteness check).
RatMat gram_from_json(const Json& j);
Lattice lattice_from_json(const Json& j);
/// Reads and validates a lattice file. Throws ParseError on malformed input
/// and NotSymmetric / NotPositiveDefinite on an invalid Gram.
Lattice read_lattice(const std::string& path);

Json lattice_to_json(const Lattice& l);
Json to_json(const Rat& q);
Json to_json(const IntMat& m);
Json to_json(const RatMat& m);
Json to_json(std::span<const Int> v);

/// Canonical text form: compact, sorted keys, trailing newline.
std::string emit(const Json& j);

}  // namespace latiso
