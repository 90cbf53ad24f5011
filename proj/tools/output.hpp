#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace disp2d::cli {

// CSV with fixed "%.17g" doubles; files land atomically (write + rename).
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);
    void row(const std::vector<std::string>& cells);
    static std::string num(double v);
    static std::string num(long long v);
    const std::string& text() const { return text_; }

private:
    size_t ncols_;
    std::string text_;
};

void write_file_atomic(const std::string& path, const std::string& contents);
void write_json_atomic(const std::string& path, const nlohmann::json& j);

} // namespace disp2d::cli
