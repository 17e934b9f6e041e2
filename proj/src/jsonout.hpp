#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pqhyp::jsonio {

// Minimal insertion-ordered JSON value for report emission. Numbers are
// rendered with %.17g so every double round-trips and identical inputs give
// byte-identical reports.
class Value {
public:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };

  Value() : kind_(Kind::Null) {}
  Value(bool b) : kind_(Kind::Bool), bool_(b) {}
  Value(int v) : kind_(Kind::Int), int_(v) {}
  Value(long long v) : kind_(Kind::Int), int_(v) {}
  Value(double v) : kind_(Kind::Double), double_(v) {}
  Value(const char* s) : kind_(Kind::String), string_(s) {}
  Value(std::string s) : kind_(Kind::String), string_(std::move(s)) {}

  static Value array();
  static Value object();

  Kind kind() const { return kind_; }
  void push_back(Value v);
  // Sets (or appends) a key on an object; insertion order is preserved.
  Value& set(const std::string& key, Value v);

  std::string dump() const;

private:
  void write(std::string& out) const;

  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<Value> items_;
  std::vector<std::pair<std::string, Value>> fields_;
};

std::string format_double(double v);

}  // namespace pqhyp::jsonio
