#include "csim/csvio.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace csim {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return {buf, ptr};
}

std::string format_int(int64_t value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("format_int failed");
    return {buf, ptr};
}

std::string format_uint(uint64_t value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("format_uint failed");
    return {buf, ptr};
}

double parse_double(const std::string& text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("bad number: " + text);
    return value;
}

std::string csv_header() {
    return "policy,setting,n,m,m_tilde,k_tilde,beta,iterations,mean_rate,std_error,lower_bound,"
           "seed";
}

std::string format_csv_row(const CsvRow& row) {
    std::string out;
    out.reserve(160);
    out += row.policy;
    out += ',';
    out += row.setting;
    out += ',';
    out += format_int(row.n);
    out += ',';
    out += format_int(row.m);
    out += ',';
    out += format_int(row.m_tilde);
    out += ',';
    out += format_int(row.k_tilde);
    out += ',';
    out += format_double(row.beta);
    out += ',';
    out += format_int(row.iterations);
    out += ',';
    out += format_double(row.mean_rate);
    out += ',';
    out += format_double(row.std_error);
    out += ',';
    out += format_double(row.lower_bound);
    out += ',';
    out += format_uint(row.seed);
    return out;
}

void Manifest::set(const std::string& key, const std::string& value) {
    if (key.empty() || key.find('=') != std::string::npos || key.find('\n') != std::string::npos)
        throw std::invalid_argument("bad manifest key");
    if (value.find('\n') != std::string::npos)
        throw std::invalid_argument("manifest value must be one line");
    for (auto& entry : entries_)
        if (entry.first == key) {
            entry.second = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void Manifest::set_int(const std::string& key, int64_t value) { set(key, format_int(value)); }
void Manifest::set_uint(const std::string& key, uint64_t value) { set(key, format_uint(value)); }
void Manifest::set_double(const std::string& key, double value) { set(key, format_double(value)); }

bool Manifest::has(const std::string& key) const {
    for (const auto& entry : entries_)
        if (entry.first == key) return true;
    return false;
}

const std::string& Manifest::get(const std::string& key) const {
    for (const auto& entry : entries_)
        if (entry.first == key) return entry.second;
    throw std::out_of_range("manifest key missing: " + key);
}

const std::string& Manifest::get_or(const std::string& key, const std::string& fallback) const {
    for (const auto& entry : entries_)
        if (entry.first == key) return entry.second;
    return fallback;
}

int64_t Manifest::get_int(const std::string& key) const {
    const std::string& text = get(key);
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("bad integer for " + key + ": " + text);
    return value;
}

uint64_t Manifest::get_uint(const std::string& key) const {
    const std::string& text = get(key);
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("bad integer for " + key + ": " + text);
    return value;
}

double Manifest::get_double(const std::string& key) const { return parse_double(get(key)); }

std::string Manifest::serialize() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

Manifest Manifest::parse(const std::string& text) {
    Manifest manifest;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("bad manifest line: " + line);
        manifest.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return manifest;
}

}  // namespace csim
