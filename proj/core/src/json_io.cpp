#include "fockband/json_io.hpp"

#include <cstdio>

namespace fockband {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void JsonWriter::comma_if_needed() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_stack_.empty()) {
    if (!first_stack_.back()) out_ += ',';
    first_stack_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  comma_if_needed();
  out_ += '{';
  first_stack_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma_if_needed();
  out_ += '[';
  first_stack_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  comma_if_needed();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  comma_if_needed();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(long long x) {
  comma_if_needed();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  comma_if_needed();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  comma_if_needed();
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const std::vector<double>& xs) {
  begin_array();
  for (double x : xs) value(x);
  return end_array();
}

JsonWriter& JsonWriter::value(const BandSet& set) {
  begin_object();
  key("intervals").begin_array();
  for (const Interval& iv : set.intervals()) {
    begin_array();
    value(iv.lo);
    value(iv.hi);
    end_array();
  }
  end_array();
  key("points").value(set.points());
  return end_object();
}

}  // namespace fockband
