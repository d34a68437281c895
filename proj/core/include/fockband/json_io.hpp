#pragma once

#include <string>
#include <vector>

#include "fockband/band_set.hpp"

namespace fockband {

// Minimal deterministic JSON emitter: fields keep insertion order and every
// number is formatted with 15 significant digits, so identical inputs give
// byte-identical artifacts.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double x);
  JsonWriter& value(long long x);
  JsonWriter& value(int x) { return value(static_cast<long long>(x)); }
  JsonWriter& value(bool b);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const std::vector<double>& xs);
  JsonWriter& value(const BandSet& set);  // {"intervals": [[lo,hi]..], "points": [..]}

  const std::string& str() const { return out_; }

 private:
  void comma_if_needed();
  std::string out_;
  std::vector<bool> first_stack_;
  bool after_key_ = false;
};

std::string format_double(double x);  // %.15g

}  // namespace fockband
