#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace disp2d::cli {

CsvWriter::CsvWriter(std::vector<std::string> columns) : ncols_(columns.size())
{
    for (size_t k = 0; k < columns.size(); ++k) {
        if (k) text_ += ',';
        text_ += columns[k];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != ncols_) throw std::logic_error("CsvWriter: column count mismatch");
    for (size_t k = 0; k < cells.size(); ++k) {
        if (k) text_ += ',';
        text_ += cells[k];
    }
    text_ += '\n';
}

std::string CsvWriter::num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvWriter::num(long long v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " -> " + path);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j)
{
    write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace disp2d::cli
