#pragma once

// Command-line surface and the JSON / edgelist document formats.

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dvrhom/dvrhom.hpp"

namespace dvrhom::cli {

inline constexpr const char* kSchema = "1";
inline constexpr const char* kToolVersion = "0.1.0";

enum class InputFormat { automatic, json, edgelist };

/// Edgelist: first line is the vertex count, then one "u v" pair per line;
/// '#' starts a comment. JSON: {"vertices": [labels...], "edges": [[u, v], ...]}
/// where endpoints are labels or integer indices. Loops are implied.
Digraph parse_digraph(std::string_view source, InputFormat format = InputFormat::automatic);

/// {"simplices": [{"verts": [...], "witness": [...]}, ...]}; faces must all be listed.
SimplicialComplex parse_complex(const nlohmann::json& doc);

/// Either a digraph or an abstract complex, depending on the document.
using Input = std::variant<Digraph, SimplicialComplex>;
Input parse_input(std::string_view source, InputFormat format = InputFormat::automatic);

nlohmann::json digraph_to_json(const Digraph& g);
nlohmann::json complex_to_json(const SimplicialComplex& k);
nlohmann::json homology_to_json(const Homology& h);

/// SHA-256 (hex) of the canonical JSON form of the input.
std::string input_digest(const Input& input);

/// Runs one invocation. argv excludes the program name. Returns the exit
/// code: 0 success, 1 domain error, 2 usage error.
int run_command(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dvrhom::cli
