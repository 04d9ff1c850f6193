#include "kmstab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kmstab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t t = 0; t < data.d; ++t) out << 'x' << t << ',';
    out << "label\n";
    const bool labeled = data.labels.size() == data.n;
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* p = data.point(i);
        for (std::size_t t = 0; t < data.d; ++t) out << format_double(p[t]) << ',';
        out << (labeled ? data.labels[i] : -1) << '\n';
    }
}

void write_dataset_csv_file(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_dataset_csv(out, data);
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv");

    std::size_t d = 0;
    {
        std::stringstream header(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(header, field, ',')) fields.push_back(field);
        if (fields.empty() || fields.back() != "label")
            throw std::runtime_error("csv header must end with 'label'");
        d = fields.size() - 1;
        if (d == 0) throw std::runtime_error("csv has no coordinate columns");
    }

    Dataset data;
    data.d = d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        for (std::size_t t = 0; t < d; ++t) {
            if (!std::getline(row, field, ',')) throw std::runtime_error("short csv row");
            data.x.push_back(std::stod(field));
        }
        if (!std::getline(row, field, ',')) throw std::runtime_error("missing label field");
        data.labels.push_back(std::stoi(field));
        ++data.n;
    }
    return data;
}

Dataset read_dataset_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_dataset_csv(in);
}

} // namespace kmstab
