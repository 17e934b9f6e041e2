#include "jsonout.hpp"

#include <cmath>
#include <cstdio>

#include "errors.hpp"

namespace pqhyp::jsonio {

Value Value::array() {
  Value v;
  v.kind_ = Kind::Array;
  return v;
}

Value Value::object() {
  Value v;
  v.kind_ = Kind::Object;
  return v;
}

void Value::push_back(Value v) {
  if (kind_ != Kind::Array) fail_internal("json: push_back on non-array");
  items_.push_back(std::move(v));
}

Value& Value::set(const std::string& key, Value v) {
  if (kind_ != Kind::Object) fail_internal("json: set on non-object");
  for (auto& [k, old] : fields_)
    if (k == key) {
      old = std::move(v);
      return old;
    }
  fields_.emplace_back(key, std::move(v));
  return fields_.back().second;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) fail_numeric("json: non-finite number in report");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_string(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void Value::write(std::string& out) const {
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += bool_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(int_); break;
    case Kind::Double: out += format_double(double_); break;
    case Kind::String: write_string(string_, out); break;
    case Kind::Array: {
      out += '[';
      for (size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        items_[i].write(out);
      }
      out += ']';
      break;
    }
    case Kind::Object: {
      out += '{';
      for (size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        write_string(fields_[i].first, out);
        out += ':';
        fields_[i].second.write(out);
      }
      out += '}';
      break;
    }
  }
}

std::string Value::dump() const {
  std::string out;
  write(out);
  return out;
}

}  // namespace pqhyp::jsonio
