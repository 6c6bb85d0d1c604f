#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "bd/core.hpp"
#include "json.hpp"

namespace bd {

using Json = nlohmann::json;

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Maps each JSON pointer in an already-validated document to the line where its value starts.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    value("");
  }
  std::size_t line(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
      if (auto it = lines_.find(p); it != lines_.end()) return it->second;
      auto slash = p.rfind('/');
      if (slash == std::string::npos) return 1;
      p.resize(slash);
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\r' || text_[pos_] == '\t')) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }
  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        ++pos_;
        if (pos_ < text_.size()) {
          if (text_[pos_] == '/' ) out += '/';
          else if (text_[pos_] == '~') out += '~';
          else out += text_[pos_];
        }
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    ++pos_;
    return out;
  }
  static std::string escape(const std::string& key) {
    std::string out;
    for (char ch : key) {
      if (ch == '~') out += "~0";
      else if (ch == '/') out += "~1";
      else out += ch;
    }
    return out;
  }
  void value(const std::string& path) {
    lines_[path] = line_;
    if (pos_ >= text_.size()) return;
    char ch = text_[pos_];
    if (ch == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(path + "/" + escape(key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (ch == '[') {
      ++pos_;
      skip_ws();
      std::size_t k = 0;
      while (pos_ < text_.size() && text_[pos_] != ']') {
        value(path + "/" + std::to_string(k++));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (ch == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \n\r\t").find(text_[pos_]) == std::string_view::npos) ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

inline Json parse_document(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ValidationError(source + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + msg);
  }
}

// Schema checks that report the offending line of the source text.
class Schema {
 public:
  Schema(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    LineIndex index(text_);
    throw ValidationError(source_ + ":" + std::to_string(index.line(pointer)) + ": " + what +
                          (pointer.empty() ? "" : " (at " + pointer + ")"));
  }
  const Json& member(const Json& obj, const std::string& pointer, const char* key) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(pointer, std::string("missing field '") + key + "'");
    return *it;
  }
  std::int64_t integer(const Json& v, const std::string& pointer) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail(pointer, "integer out of range");
    }
    return v.get<std::int64_t>();
  }

 private:
  std::string_view text_;
  std::string source_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot write file");
  out << content;
}

inline Json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return Json::array({r.num(), r.den()});
}

}  // namespace detail

inline Instance instance_from_json(std::string_view text, const std::string& source = "instance") {
  Json doc = detail::parse_document(text, source);
  detail::Schema schema(text, source);
  const Json& cj = schema.member(doc, "", "c");
  Rational c;
  try {
    if (cj.is_array()) {
      if (cj.size() != 2) schema.fail("/c", "expected [numerator, denominator]");
      c = Rational(schema.integer(cj[0], "/c/0"), schema.integer(cj[1], "/c/1"));
    } else if (cj.is_number_integer()) {
      c = Rational(cj.get<std::int64_t>());
    } else if (cj.is_string()) {
      c = Rational::parse(cj.get<std::string>());
    } else {
      schema.fail("/c", "expected an integer or [numerator, denominator]");
    }
  } catch (const ParameterError& e) {
    schema.fail("/c", e.what());
  }
  std::vector<Vertex> vertices;
  const Json& vj = schema.member(doc, "", "vertices");
  if (!vj.is_array()) schema.fail("/vertices", "expected an array");
  for (std::size_t k = 0; k < vj.size(); ++k) {
    const std::string p = "/vertices/" + std::to_string(k);
    const Json& v = vj[k];
    vertices.push_back({schema.integer(schema.member(v, p, "id"), p + "/id"),
                        schema.integer(schema.member(v, p, "p1"), p + "/p1"),
                        schema.integer(schema.member(v, p, "p2"), p + "/p2")});
  }
  std::vector<Edge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) schema.fail("/edges", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string p = "/edges/" + std::to_string(k);
      const Json& e = (*it)[k];
      if (!e.is_array() || e.size() != 2) schema.fail(p, "expected [u, v]");
      edges.emplace_back(schema.integer(e[0], p + "/0"), schema.integer(e[1], p + "/1"));
    }
  }
  Metadata meta;
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) schema.fail("/metadata", "expected an object");
    for (const auto& [key, value] : it->items()) meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  try {
    return Instance(c, std::move(vertices), std::move(edges), std::move(meta));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

inline Json instance_to_json(const Instance& g) {
  Json doc = Json::object();
  doc["c"] = detail::rational_json(g.c());
  Json vs = Json::array();
  for (const Vertex& v : g.vertices()) vs.push_back({{"id", v.id}, {"p1", v.p1}, {"p2", v.p2}});
  doc["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& [u, v] : g.edges()) es.push_back(Json::array({u, v}));
  doc["edges"] = std::move(es);
  Json meta = Json::object();
  for (const auto& [k, v] : g.metadata()) meta[k] = v;
  doc["metadata"] = std::move(meta);
  return doc;
}

// Compact layout: one vertex or edge per line keeps large files diff-friendly.
inline std::string instance_to_string(const Instance& g) {
  Json doc = instance_to_json(g);
  std::string out = "{\n  \"c\": " + doc["c"].dump() + ",\n  \"vertices\": [";
  const auto& vs = doc["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ",\n    " : "\n    ") + vs[i].dump();
  out += vs.empty() ? "],\n  \"edges\": [" : "\n  ],\n  \"edges\": [";
  const auto& es = doc["edges"];
  for (std::size_t i = 0; i < es.size(); ++i) out += (i ? ",\n    " : "\n    ") + es[i].dump();
  out += es.empty() ? "],\n" : "\n  ],\n";
  out += "  \"metadata\": " + doc["metadata"].dump() + "\n}\n";
  return out;
}

inline Instance read_instance(const std::string& path) { return instance_from_json(detail::read_file(path), path); }
inline void write_instance(const std::string& path, const Instance& g) { detail::write_file(path, instance_to_string(g)); }

struct DistrictingFile {
  Districting districting;
  Weight weight = 0;
  std::string solver;
  Json params = Json::object();
};

inline std::string districting_to_string(const DistrictingFile& f) {
  std::string out = "{\n  \"districts\": [";
  const auto& ds = f.districting.districts;
  for (std::size_t i = 0; i < ds.size(); ++i) out += (i ? ",\n    " : "\n    ") + Json(ds[i].vertices).dump();
  out += ds.empty() ? "],\n" : "\n  ],\n";
  out += "  \"weight\": " + std::to_string(f.weight) + ",\n";
  out += "  \"solver\": " + Json(f.solver).dump() + ",\n";
  out += "  \"params\": " + f.params.dump() + "\n}\n";
  return out;
}

inline DistrictingFile districting_from_json(std::string_view text, const std::string& source = "districting") {
  Json doc = detail::parse_document(text, source);
  detail::Schema schema(text, source);
  DistrictingFile f;
  const Json& dj = schema.member(doc, "", "districts");
  if (!dj.is_array()) schema.fail("/districts", "expected an array");
  for (std::size_t k = 0; k < dj.size(); ++k) {
    const std::string p = "/districts/" + std::to_string(k);
    if (!dj[k].is_array()) schema.fail(p, "expected an array of vertex ids");
    District d;
    for (std::size_t j = 0; j < dj[k].size(); ++j) d.vertices.push_back(schema.integer(dj[k][j], p + "/" + std::to_string(j)));
    f.districting.districts.push_back(std::move(d));
  }
  if (auto it = doc.find("weight"); it != doc.end()) f.weight = schema.integer(*it, "/weight");
  if (auto it = doc.find("solver"); it != doc.end()) {
    if (!it->is_string()) schema.fail("/solver", "expected a string");
    f.solver = it->get<std::string>();
  }
  if (auto it = doc.find("params"); it != doc.end()) f.params = *it;
  return f;
}

inline DistrictingFile read_districting(const std::string& path) {
  return districting_from_json(detail::read_file(path), path);
}
inline void write_districting(const std::string& path, const DistrictingFile& f) {
  detail::write_file(path, districting_to_string(f));
}

}  // namespace bd
