#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "prolim/invsys.hpp"
#include "prolim/prospace.hpp"

namespace prolim::io {

using json = nlohmann::json;

/// Malformed or invalid input. `field` is a JSON pointer into the document,
/// `offset` the byte position of that field (or of the syntax error).
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& message, std::optional<std::size_t> offset = std::nullopt);

  const std::string& field() const { return field_; }
  std::optional<std::size_t> offset() const { return offset_; }
  const std::string& detail() const { return detail_; }
  InputError at_offset(std::size_t offset) const { return {field_, detail_, offset}; }

 private:
  std::string field_;
  std::string detail_;
  std::optional<std::size_t> offset_;
};

/// Integers within int64 are numbers, larger ones decimal strings.
json to_json(const Integer& v);
Integer integer_from_json(const json& j, const std::string& field);

json to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const json& j, const std::string& field);

/// Row-major array of rows.
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& field);

json to_json(const Vector& v);
Vector vector_from_json(const json& j, const std::string& field);

json to_json(const GroupHom& h);
json to_json(const Tower& t);
json to_json(const InverseSystem& s);
InverseSystem system_from_json(const json& j, const std::string& field);

json to_json(const CoherentTuple& t);
CoherentTuple tuple_from_json(const json& j, const LimitSpace& space, const std::string& field);

struct SystemDocument {
  std::string name;
  InverseSystem system;
  /// Second system, used by kk-classify.
  std::optional<InverseSystem> sb_system;
};

json to_json(const SystemDocument& d);
/// Parses and validates; InputError carries the failing field and its
/// byte offset in `text`.
SystemDocument parse_document(std::string_view text);
/// Parses JSON text, reporting syntax errors as InputError.
json parse_json(std::string_view text, const std::string& what);

/// Byte offset of the value at a JSON pointer in `text`.
std::optional<std::size_t> locate(std::string_view text, const std::string& pointer);

/// Compact dump with sorted keys.
std::string canonical(const json& j);

}  // namespace prolim::io
