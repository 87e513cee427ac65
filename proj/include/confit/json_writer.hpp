#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace confit {

// Formats a double with 17 significant digits ("%.17g"), which round-trips
// exactly; non-finite values become "null". Output bytes depend only on the
// value, so serialized files can be compared byte-for-byte.
std::string json_number(double v);

// Minimal streaming JSON writer preserving insertion order of keys.
// Serialization here never needs parsing, so there is no reader.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s);
    JsonWriter& value(const std::vector<double>& vs);
    JsonWriter& value(const std::vector<std::string>& vs);
    JsonWriter& null_value();

    const std::string& str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_;   // stack: are we at the first element of the scope?
    bool after_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace confit
