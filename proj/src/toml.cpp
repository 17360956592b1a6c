#include "transim/toml.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace transim::toml {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strip an end-of-line comment, honoring quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"') in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

bool valid_bare_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    }
    return true;
}

std::vector<std::string> split_path(const std::string& path, int line_no) {
    std::vector<std::string> parts;
    std::stringstream stream(path);
    std::string part;
    while (std::getline(stream, part, '.')) {
        part = trim(part);
        if (!valid_bare_key(part)) {
            throw SchemaError(path, "invalid key at line " + std::to_string(line_no));
        }
        parts.push_back(part);
    }
    if (parts.empty()) throw SchemaError(path, "empty key at line " + std::to_string(line_no));
    return parts;
}

bool parse_number(const std::string& text, double& out) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text) {
        if (c != '_') cleaned.push_back(c);  // TOML digit separators
    }
    const char* begin = cleaned.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + cleaned.size() && end != begin;
}

Value parse_value(const std::string& raw, int line_no);

Array parse_array(const std::string& raw, int line_no) {
    Array items;
    std::string body = trim(raw.substr(1, raw.size() - 2));
    if (body.empty()) return items;
    std::string current;
    bool in_string = false;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            items.push_back(parse_value(trim(current), line_no));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!trim(current).empty()) items.push_back(parse_value(trim(current), line_no));
    return items;
}

Value parse_value(const std::string& raw, int line_no) {
    if (raw.empty()) throw SchemaError("<value>", "empty value at line " + std::to_string(line_no));
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') {
            throw SchemaError("<value>", "unterminated string at line " + std::to_string(line_no));
        }
        return Value(raw.substr(1, raw.size() - 2));
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') {
            throw SchemaError("<value>", "unterminated array at line " + std::to_string(line_no));
        }
        return Value(parse_array(raw, line_no));
    }
    if (raw == "true") return Value(true);
    if (raw == "false") return Value(false);
    double number = 0.0;
    if (parse_number(raw, number)) return Value(number);
    throw SchemaError("<value>", "unrecognized value '" + raw + "' at line " + std::to_string(line_no));
}

Table* descend(Table& root, const std::vector<std::string>& parts, std::size_t count, int line_no) {
    Table* table = &root;
    for (std::size_t i = 0; i < count; ++i) {
        auto [it, inserted] = table->try_emplace(parts[i], Value::table());
        Value& node = it->second;
        if (node.is_array()) {
            Array& arr = node.as_array();
            if (arr.empty() || !arr.back().is_table()) {
                throw SchemaError(parts[i], "not a table array at line " + std::to_string(line_no));
            }
            table = &arr.back().as_table();
        } else if (node.is_table()) {
            table = &node.as_table();
        } else {
            throw SchemaError(parts[i], "key reused as table at line " + std::to_string(line_no));
        }
    }
    return table;
}

}  // namespace

Table parse(const std::string& text) {
    Table root;
    Table* current = &root;
    std::istringstream stream(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw_line));
        if (line.empty()) continue;

        if (line.size() >= 4 && line.substr(0, 2) == "[[" && line.substr(line.size() - 2) == "]]") {
            const auto parts = split_path(trim(line.substr(2, line.size() - 4)), line_no);
            Table* parent = descend(root, parts, parts.size() - 1, line_no);
            auto [it, inserted] = parent->try_emplace(parts.back(), Value(Array{}));
            if (!it->second.is_array()) {
                throw SchemaError(parts.back(), "key reused as table array at line " + std::to_string(line_no));
            }
            it->second.as_array().push_back(Value::table());
            current = &it->second.as_array().back().as_table();
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            const auto parts = split_path(trim(line.substr(1, line.size() - 2)), line_no);
            current = descend(root, parts, parts.size(), line_no);
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw SchemaError("<line " + std::to_string(line_no) + ">", "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!valid_bare_key(key)) {
            throw SchemaError(key, "invalid bare key at line " + std::to_string(line_no));
        }
        const std::string value = trim(line.substr(eq + 1));
        auto [it, inserted] = current->insert_or_assign(key, parse_value(value, line_no));
        (void)it;
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw SchemaError(path, "cannot open config file");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse(buffer.str());
}

namespace {

const Value* find(const Table& root, const std::string& path) {
    const Table* table = &root;
    std::stringstream stream(path);
    std::string part;
    const Value* value = nullptr;
    while (std::getline(stream, part, '.')) {
        if (table == nullptr) return nullptr;
        const auto it = table->find(part);
        if (it == table->end()) return nullptr;
        value = &it->second;
        table = value->is_table() ? &value->as_table() : nullptr;
    }
    return value;
}

}  // namespace

bool contains(const Table& root, const std::string& path) { return find(root, path) != nullptr; }

double get_number(const Table& root, const std::string& path) {
    const Value* value = find(root, path);
    if (value == nullptr) throw SchemaError(path, "missing required number");
    if (!value->is_number()) throw SchemaError(path, "expected a number");
    return value->as_number();
}

double get_number_or(const Table& root, const std::string& path, double fallback) {
    const Value* value = find(root, path);
    if (value == nullptr) return fallback;
    if (!value->is_number()) throw SchemaError(path, "expected a number");
    return value->as_number();
}

std::string get_string(const Table& root, const std::string& path) {
    const Value* value = find(root, path);
    if (value == nullptr) throw SchemaError(path, "missing required string");
    if (!value->is_string()) throw SchemaError(path, "expected a string");
    return value->as_string();
}

std::string get_string_or(const Table& root, const std::string& path, const std::string& fallback) {
    const Value* value = find(root, path);
    if (value == nullptr) return fallback;
    if (!value->is_string()) throw SchemaError(path, "expected a string");
    return value->as_string();
}

bool get_bool_or(const Table& root, const std::string& path, bool fallback) {
    const Value* value = find(root, path);
    if (value == nullptr) return fallback;
    if (!value->is_bool()) throw SchemaError(path, "expected a boolean");
    return value->as_bool();
}

const Array& get_array(const Table& root, const std::string& path) {
    const Value* value = find(root, path);
    if (value == nullptr) throw SchemaError(path, "missing required array");
    if (!value->is_array()) throw SchemaError(path, "expected an array");
    return value->as_array();
}

Value parse_scalar(const std::string& literal) {
    const std::string raw = trim(literal);
    if (!raw.empty() && (raw.front() == '"' || raw == "true" || raw == "false")) {
        return parse_value(raw, 0);
    }
    double number = 0.0;
    if (parse_number(raw, number)) return Value(number);
    return Value(raw);  // bare string override
}

void set_scalar(Table& root, const std::string& path, const std::string& literal) {
    std::vector<std::string> parts;
    std::stringstream stream(path);
    std::string part;
    while (std::getline(stream, part, '.')) {
        if (part.empty()) throw SchemaError(path, "empty key segment in override");
        parts.push_back(part);
    }
    if (parts.empty()) throw SchemaError(path, "empty override path");

    Table* table = &root;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        auto [it, inserted] = table->try_emplace(parts[i], Value::table());
        Value& node = it->second;
        if (node.is_array()) {
            Array& arr = node.as_array();
            if (arr.empty() || !arr.back().is_table()) throw SchemaError(path, "override path crosses a non-table");
            table = &arr.back().as_table();
        } else if (node.is_table()) {
            table = &node.as_table();
        } else {
            throw SchemaError(path, "override path crosses a scalar");
        }
    }
    table->insert_or_assign(parts.back(), parse_scalar(literal));
}

}  // namespace transim::toml
