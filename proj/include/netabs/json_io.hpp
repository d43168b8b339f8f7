#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace netabs {

// 17-significant-digit rendering (%.17g): doubles round-trip exactly and
// the text is platform-independent.
std::string format_double(double v);

// Deterministic serializer: objects sorted by key (nlohmann's natural
// order), arrays in place, doubles via format_double, non-finite doubles as
// the strings "inf" / "-inf" / "nan".  Equal trees give equal bytes.
std::string dump_json(const nlohmann::json& j, int indent = 2);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace netabs
