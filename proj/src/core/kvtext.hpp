#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nnc {

// Canonical key-value text: one `key = value` per line, `#` comments,
// last occurrence of a key wins. emit() renders keys sorted with floats in
// shortest round-trip form, so equal maps serialize to identical bytes.
class KvMap {
public:
    static KvMap parse(const std::string& text);

    std::string emit() const;

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    const std::map<std::string, std::string>& entries() const { return kv_; }

    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_f64(const std::string& key, double fallback) const;
    int64_t get_i64(const std::string& key, int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_f64_list(const std::string& key) const;
    std::vector<int64_t> get_i64_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value);
    void set_f64(const std::string& key, double value);
    void set_i64(const std::string& key, int64_t value);
    void set_bool(const std::string& key, bool value);
    void set_f64_list(const std::string& key, const std::vector<double>& values);
    void set_i64_list(const std::string& key, const std::vector<int64_t>& values);

    static std::string format_f64(double value);  // shortest round-trip
    static double parse_f64(const std::string& text, const std::string& context);
    static int64_t parse_i64(const std::string& text, const std::string& context);

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace nnc
