#include "core/kvtext.hpp"

#include <cctype>
#include <charconv>

#include "core/errors.hpp"

namespace nnc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
    return true;
}

}  // namespace

KvMap KvMap::parse(const std::string& text) {
    KvMap m;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("line " + std::to_string(line_no) + ": expected `key = value`");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw FormatError("line " + std::to_string(line_no) + ": bad key '" + key + "'");
        m.kv_[key] = value;  // last occurrence wins
    }
    return m;
}

std::string KvMap::emit() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

const std::string& KvMap::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw UsageError("missing key '" + key + "'");
    return it->second;
}

std::string KvMap::get_or(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double KvMap::parse_f64(const std::string& text, const std::string& context) {
    double v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw UsageError("bad number '" + text + "' for " + context);
    return v;
}

int64_t KvMap::parse_i64(const std::string& text, const std::string& context) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw UsageError("bad integer '" + text + "' for " + context);
    return v;
}

double KvMap::get_f64(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : parse_f64(it->second, key);
}

int64_t KvMap::get_i64(const std::string& key, int64_t fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : parse_i64(it->second, key);
}

bool KvMap::get_bool(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw UsageError("bad boolean '" + v + "' for " + key);
}

std::vector<double> KvMap::get_f64_list(const std::string& key) const {
    std::vector<double> out;
    const std::string& v = get(key);
    size_t pos = 0;
    while (pos <= v.size()) {
        size_t c = v.find(',', pos);
        std::string item = trim(v.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
        if (!item.empty()) out.push_back(parse_f64(item, key));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    return out;
}

std::vector<int64_t> KvMap::get_i64_list(const std::string& key) const {
    std::vector<int64_t> out;
    for (double v : get_f64_list(key)) out.push_back(static_cast<int64_t>(v));
    return out;
}

std::string KvMap::format_f64(double value) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, p);
}

void KvMap::set(const std::string& key, const std::string& value) { kv_[key] = value; }
void KvMap::set_f64(const std::string& key, double value) { kv_[key] = format_f64(value); }
void KvMap::set_i64(const std::string& key, int64_t value) { kv_[key] = std::to_string(value); }
void KvMap::set_bool(const std::string& key, bool value) { kv_[key] = value ? "true" : "false"; }

void KvMap::set_f64_list(const std::string& key, const std::vector<double>& values) {
    std::string s;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += format_f64(values[i]);
    }
    kv_[key] = s;
}

void KvMap::set_i64_list(const std::string& key, const std::vector<int64_t>& values) {
    std::string s;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(values[i]);
    }
    kv_[key] = s;
}

}  // namespace nnc
