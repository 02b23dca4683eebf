#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "proofdeck/protocol.hpp"

namespace proofdeck {

// Constructor-tagged JSON: a variant encodes as ["Name", arg1, ...], a
// nullary one as ["Name"]. Records (feedback, locations, progress, bundles)
// encode as objects. Options encode as ["Bool", b] / ["Int", n] /
// ["String", s]; absent optionals as null; logical paths as string arrays.
// Every encoder produces one line with no trailing newline.

std::string encode(const Command& command);
std::string encode(const Answer& answer);

/// Decoders never throw; failures come back as JsonExn.
std::variant<Command, ans::JsonExn> decode_command(std::string_view text);
std::variant<Answer, ans::JsonExn> decode_answer(std::string_view text);

}  // namespace proofdeck
