// toml.hpp — Minimal TOML-subset reader for the simulator's config schemas.
//
// Supports the constructs the documented schemas use: comments, bare-key
// `key = value` pairs, [dotted.table] headers, [[array.of.tables]] headers,
// strings, booleans, numbers, and flat arrays of scalars. Errors carry the
// offending key path or line number.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "transim/common.hpp"

namespace transim::toml {

class Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

class Value {
public:
    using Storage = std::variant<std::string, double, bool, Array, std::shared_ptr<Table>>;

    Value() : storage_(std::shared_ptr<Table>(new Table)) {}
    explicit Value(std::string v) : storage_(std::move(v)) {}
    explicit Value(double v) : storage_(v) {}
    explicit Value(bool v) : storage_(v) {}
    explicit Value(Array v) : storage_(std::move(v)) {}
    static Value table() { return Value(); }

    bool is_string() const { return std::holds_alternative<std::string>(storage_); }
    bool is_number() const { return std::holds_alternative<double>(storage_); }
    bool is_bool() const { return std::holds_alternative<bool>(storage_); }
    bool is_array() const { return std::holds_alternative<Array>(storage_); }
    bool is_table() const { return std::holds_alternative<std::shared_ptr<Table>>(storage_); }

    const std::string& as_string() const { return std::get<std::string>(storage_); }
    double as_number() const { return std::get<double>(storage_); }
    bool as_bool() const { return std::get<bool>(storage_); }
    const Array& as_array() const { return std::get<Array>(storage_); }
    Array& as_array() { return std::get<Array>(storage_); }
    const Table& as_table() const { return *std::get<std::shared_ptr<Table>>(storage_); }
    Table& as_table() { return *std::get<std::shared_ptr<Table>>(storage_); }

private:
    Storage storage_;
};

Table parse(const std::string& text);
Table parse_file(const std::string& path);

// Dotted-path accessors; every failure is a SchemaError carrying the path.
bool contains(const Table& root, const std::string& path);
double get_number(const Table& root, const std::string& path);
double get_number_or(const Table& root, const std::string& path, double fallback);
std::string get_string(const Table& root, const std::string& path);
std::string get_string_or(const Table& root, const std::string& path, const std::string& fallback);
bool get_bool_or(const Table& root, const std::string& path, bool fallback);
const Array& get_array(const Table& root, const std::string& path);

// Replace (or create) the scalar at a dotted path; used by --override.
void set_scalar(Table& root, const std::string& path, const std::string& literal);

// Parse a scalar literal the way the file parser would (number, bool, or
// quoted/bare string).
Value parse_scalar(const std::string& literal);

}  // namespace transim::toml
