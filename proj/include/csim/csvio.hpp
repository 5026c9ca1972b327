#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace csim {

// Locale-free number formatting. Doubles are printed in scientific form with
// 17 significant digits, enough to round-trip and well past the 10 the
// output contract asks for.
std::string format_double(double value);
std::string format_int(int64_t value);
std::string format_uint(uint64_t value);
double parse_double(const std::string& text);

struct CsvRow {
    std::string policy;
    char setting = 'A';
    int64_t n = 0;
    int64_t m = 0;
    int64_t m_tilde = 0;
    int64_t k_tilde = 0;
    double beta = 0.0;
    int64_t iterations = 0;
    double mean_rate = 0.0;
    double std_error = 0.0;
    double lower_bound = 0.0;
    uint64_t seed = 0;
};

std::string csv_header();
std::string format_csv_row(const CsvRow& row);

// Flat key=value record of a resolved run; rewriting the same parameters
// reproduces the paired CSV byte for byte. Keys keep insertion order.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set_int(const std::string& key, int64_t value);
    void set_uint(const std::string& key, uint64_t value);
    void set_double(const std::string& key, double value);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;  // throws if missing
    int64_t get_int(const std::string& key) const;
    uint64_t get_uint(const std::string& key) const;
    double get_double(const std::string& key) const;
    const std::string& get_or(const std::string& key, const std::string& fallback) const;

    std::string serialize() const;
    static Manifest parse(const std::string& text);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace csim
