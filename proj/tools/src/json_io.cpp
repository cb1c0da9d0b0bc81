#include "prolim_tools/json_io.hpp"

#include <cctype>
#include <limits>
#include <regex>

namespace prolim::io {

namespace {

std::string describe(const std::string& field, const std::string& message, std::optional<std::size_t> offset) {
  std::string out = field.empty() ? "document" : field;
  out += ": " + message;
  if (offset) out += " (byte " + std::to_string(*offset) + ")";
  return out;
}

std::string child(const std::string& field, const std::string& key) { return field + "/" + key; }
std::string child(const std::string& field, std::size_t index) { return field + "/" + std::to_string(index); }

const json& member(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) throw InputError(field, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(field, "missing key \"" + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array");
  return j;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& field) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InputError(child(field, key), "unknown key \"" + key + "\"");
  }
}

std::size_t size_from_json(const json& j, const std::string& field) {
  const Integer v = integer_from_json(j, field);
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) throw InputError(field, "expected a small non-negative integer");
  return v.convert_to<std::size_t>();
}

// Turns a core validation message of the form "maps[3]: ..." into a field.
InputError system_error(const std::string& field, const std::string& message) {
  static const std::regex indexed(R"(^(maps|towers)\[(\d+)\]: )");
  static const std::regex named(R"(^(maps|towers|cycle|prefix): )");
  std::smatch m;
  if (std::regex_search(message, m, indexed)) return {field + "/" + m[1].str() + "/" + m[2].str(), message};
  if (std::regex_search(message, m, named)) return {field + "/" + m[1].str(), message};
  return {field, message};
}

}  // namespace

InputError::InputError(std::string field, const std::string& message, std::optional<std::size_t> offset)
    : std::runtime_error(describe(field, message, offset)),
      field_(std::move(field)),
      detail_(message),
      offset_(offset) {}

json to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return to_string(v);
}

Integer integer_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    static const std::regex digits(R"(^-?(0|[1-9][0-9]*)$)");
    if (!std::regex_match(s, digits)) throw InputError(field, "expected an integer, got the string \"" + s + "\"");
    return Integer(s);
  }
  throw InputError(field, "expected an integer");
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vector vector_from_json(const json& j, const std::string& field) {
  array_at(j, field);
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], child(field, i)));
  return v;
}

json to_json(const FgAbGroup& g) { return {{"free_rank", g.free_rank()}, {"torsion", to_json(g.torsion())}}; }

FgAbGroup group_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected a group object {free_rank, torsion}");
  reject_unknown(j, {"free_rank", "torsion"}, field);
  const std::size_t r = size_from_json(member(j, "free_rank", field), child(field, "free_rank"));
  const Vector t = vector_from_json(member(j, "torsion", field), child(field, "torsion"));
  try {
    return {r, t};
  } catch (const std::invalid_argument& e) {
    throw InputError(child(field, "torsion"), e.what());
  }
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& field) {
  array_at(j, field);
  if (j.size() != rows) {
    throw InputError(field, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[r], child(field, r));
    if (row.size() != cols) {
      throw InputError(child(field, r), "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

json to_json(const GroupHom& h) {
  return {{"source", to_json(h.source())}, {"target", to_json(h.target())}, {"matrix", to_json(h.matrix())}};
}

json to_json(const Tower& t) {
  return {{"kind", t.kind == Tower::Kind::Cyclic ? "cyclic" : "power"},
          {"base", to_json(t.base)},
          {"start", t.start},
          {"initial", t.initial},
          {"step", t.step}};
}

namespace {

Tower tower_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected a tower object");
  reject_unknown(j, {"kind", "base", "start", "initial", "step"}, field);
  Tower t;
  const json& kind = member(j, "kind", field);
  if (kind == "cyclic") {
    t.kind = Tower::Kind::Cyclic;
  } else if (kind == "power") {
    t.kind = Tower::Kind::Power;
  } else {
    throw InputError(child(field, "kind"), "expected \"cyclic\" or \"power\"");
  }
  if (j.contains("base")) t.base = integer_from_json(j["base"], child(field, "base"));
  if (j.contains("start")) t.start = size_from_json(j["start"], child(field, "start"));
  if (j.contains("initial")) t.initial = size_from_json(j["initial"], child(field, "initial"));
  if (j.contains("step")) t.step = size_from_json(j["step"], child(field, "step"));
  return t;
}

}  // namespace

json to_json(const InverseSystem& s) {
  json out;
  json prefix = json::array();
  for (const auto& g : s.prefix_groups()) prefix.push_back(to_json(g));
  out["prefix"] = prefix;
  if (s.is_finite_chain()) {
    out["cycle"] = nullptr;
  } else {
    json cycle = json::array();
    for (const auto& g : s.cycle_groups()) cycle.push_back(to_json(g));
    out["cycle"] = cycle;
  }
  out["period"] = s.period();
  json maps = json::array();
  for (const auto& m : s.maps()) maps.push_back(to_json(m.matrix()));
  out["maps"] = maps;
  if (s.has_towers()) {
    json towers = json::array();
    for (const auto& t : s.towers()) towers.push_back(to_json(t));
    out["towers"] = towers;
  }
  return out;
}

InverseSystem system_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected a system object");
  reject_unknown(j, {"prefix", "cycle", "period", "maps", "towers"}, field);

  std::vector<FgAbGroup> prefix, cycle;
  const json& pj = array_at(member(j, "prefix", field), child(field, "prefix"));
  for (std::size_t i = 0; i < pj.size(); ++i) prefix.push_back(group_from_json(pj[i], child(child(field, "prefix"), i)));
  const json& cj = member(j, "cycle", field);
  const bool periodic = !cj.is_null();
  if (periodic) {
    array_at(cj, child(field, "cycle"));
    for (std::size_t i = 0; i < cj.size(); ++i) cycle.push_back(group_from_json(cj[i], child(child(field, "cycle"), i)));
    if (cycle.empty()) throw InputError(child(field, "cycle"), "must contain at least one group (or be null)");
  }
  if (j.contains("period")) {
    const std::size_t p = size_from_json(j["period"], child(field, "period"));
    if (p != cycle.size()) {
      throw InputError(child(field, "period"), "period " + std::to_string(p) + " does not match the cycle length " +
                                                  std::to_string(cycle.size()));
    }
  } else if (periodic) {
    throw InputError(field, "missing key \"period\"");
  }

  auto group = [&](std::size_t n) -> const FgAbGroup& {
    if (n <= prefix.size()) return prefix[n - 1];
    return cycle[(n - prefix.size() - 1) % cycle.size()];
  };
  const std::string maps_field = child(field, "maps");
  const json& mj = array_at(member(j, "maps", field), maps_field);
  const std::size_t expected = periodic ? prefix.size() + cycle.size() : (prefix.empty() ? 0 : prefix.size() - 1);
  if (!periodic && prefix.empty()) throw InputError(child(field, "prefix"), "a finite chain needs at least one group");
  if (mj.size() != expected) {
    throw InputError(maps_field, "expected " + std::to_string(expected) + " maps, got " + std::to_string(mj.size()));
  }
  std::vector<GroupHom> maps;
  for (std::size_t i = 0; i < mj.size(); ++i) {
    const FgAbGroup& src = group(i + 2);
    const FgAbGroup& dst = group(i + 1);
    const std::string f = child(maps_field, i);
    Matrix m = matrix_from_json(mj[i], dst.rank(), src.rank(), f);
    if (auto reason = GroupHom::check(src, dst, m)) throw InputError(f, *reason);
    maps.emplace_back(src, dst, std::move(m));
  }

  std::vector<Tower> towers;
  if (j.contains("towers")) {
    const json& tj = array_at(j["towers"], child(field, "towers"));
    for (std::size_t i = 0; i < tj.size(); ++i) towers.push_back(tower_from_json(tj[i], child(child(field, "towers"), i)));
  }
  try {
    if (!periodic) {
      if (!towers.empty()) throw InputError(child(field, "towers"), "not allowed on a finite chain");
      return InverseSystem::finite_chain(std::move(prefix), std::move(maps));
    }
    return InverseSystem::periodic(std::move(prefix), std::move(cycle), std::move(maps), std::move(towers));
  } catch (const std::invalid_argument& e) {
    throw system_error(field, e.what());
  }
}

json to_json(const CoherentTuple& t) {
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back(to_json(e));
  return {{"level", t.level()}, {"entries", entries}};
}

CoherentTuple tuple_from_json(const json& j, const LimitSpace& space, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected a tuple object {level, entries}");
  reject_unknown(j, {"level", "entries"}, field);
  const std::size_t level = size_from_json(member(j, "level", field), child(field, "level"));
  const json& ej = array_at(member(j, "entries", field), child(field, "entries"));
  if (ej.size() != level) {
    throw InputError(child(field, "entries"), "expected " + std::to_string(level) + " entries, got " +
                                                  std::to_string(ej.size()));
  }
  std::vector<Vector> entries;
  for (std::size_t i = 0; i < ej.size(); ++i) entries.push_back(vector_from_json(ej[i], child(child(field, "entries"), i)));
  try {
    return space.make_tuple(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw InputError(child(field, "entries"), e.what());
  }
}

json to_json(const SystemDocument& d) {
  json out{{"name", d.name}, {"system", to_json(d.system)}};
  if (d.sb_system) out["sb_system"] = to_json(*d.sb_system);
  return out;
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    throw InputError("", what + " is not valid JSON: " + e.what(), offset);
  }
}

SystemDocument parse_document(std::string_view text) {
  const json j = parse_json(text, "document");
  try {
    if (!j.is_object()) throw InputError("", "expected an object");
    reject_unknown(j, {"name", "system", "sb_system"}, "");
    SystemDocument d;
    const json& name = member(j, "name", "");
    if (!name.is_string()) throw InputError("/name", "expected a string");
    d.name = name.get<std::string>();
    d.system = system_from_json(member(j, "system", ""), "/system");
    if (j.contains("sb_system")) d.sb_system = system_from_json(j["sb_system"], "/sb_system");
    return d;
  } catch (const InputError& e) {
    if (e.offset()) throw;
    // Point at the deepest prefix of the field that exists in the text.
    std::string field = e.field();
    while (true) {
      if (auto off = locate(text, field)) throw e.at_offset(*off);
      const auto slash = field.rfind('/');
      if (slash == std::string::npos) throw e.at_offset(0);
      field.resize(slash);
    }
  }
}

std::string canonical(const json& j) { return j.dump(); }

// ------------------------------------------------------------ locating fields

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::optional<std::size_t> find(const std::vector<std::string>& path) {
    ws();
    return value(path, 0);
  }

 private:
  void ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string string() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void skip() {
    ws();
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (d == '"') {
          string();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') --depth;
        ++pos_;
        if (depth == 0) break;
      }
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
  }

  std::optional<std::size_t> value(const std::vector<std::string>& path, std::size_t depth) {
    ws();
    if (depth == path.size()) return pos_;
    if (pos_ >= text_.size()) return std::nullopt;
    const std::string& want = path[depth];
    if (text_[pos_] == '{') {
      ++pos_;
      while (true) {
        ws();
        if (pos_ >= text_.size() || text_[pos_] == '}') return std::nullopt;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        const std::size_t key_pos = pos_;
        const std::string key = string();
        ws();
        ++pos_;  // colon
        if (key == want) {
          if (depth + 1 == path.size()) return key_pos;
          return value(path, depth + 1);
        }
        skip();
      }
    }
    if (text_[pos_] == '[') {
      ++pos_;
      std::size_t index = 0;
      while (true) {
        ws();
        if (pos_ >= text_.size() || text_[pos_] == ']') return std::nullopt;
        if (text_[pos_] == ',') {
          ++pos_;
          ++index;
          continue;
        }
        if (std::to_string(index) == want) return value(path, depth + 1);
        skip();
      }
    }
    return std::nullopt;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<std::size_t> locate(std::string_view text, const std::string& pointer) {
  std::vector<std::string> path;
  if (!pointer.empty()) {
    if (pointer[0] != '/') return std::nullopt;
    std::size_t start = 1;
    while (true) {
      const std::size_t slash = pointer.find('/', start);
      std::string token = pointer.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
      for (std::size_t p; (p = token.find("~1")) != std::string::npos;) token.replace(p, 2, "/");
      for (std::size_t p; (p = token.find("~0")) != std::string::npos;) token.replace(p, 2, "~");
      path.push_back(std::move(token));
      if (slash == std::string::npos) break;
      start = slash + 1;
    }
  }
  return Scanner(text).find(path);
}

}  // namespace prolim::io
